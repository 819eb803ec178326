# pylint: disable=line-too-long
"""kg-rule-attack (kgra) main entry point.

Command-Line Options
--------------------

    kgra STEP [options]

    STEP
        One of mine, attack, train, eval, pipeline, report

    -h, --help
        show this help message and exit

    -c CONFIG [CONFIG ...], --config CONFIG [CONFIG ...]
        Configuration files, or directories containing files, in yml or json

    --implementer IMPLEMENTER
        StepImplementer class to run instead of the default of the step, either a short
        class name from kg_rule_attack.step_implementers.<step> or a dotted path

    --set KEY=VALUE [KEY=VALUE ...]
        Override any configuration key, dotted for nested keys (train-config.dim=50);
        values are parsed as YAML

    -v, --verbose
        Log at debug level

    --train, --valid, --test, --attacker, --gammas, --pool, --zero-padded-pooling, --m,
    --n, --rule-length, --rules-file, --rewriting, --pseudo-target-fraction, --models,
    --eval-setting, --hits-at, --target-rank-threshold, --seed, --workers, --out
        Override the configuration key of the same name

Steps
-----

Step       | Default StepImplementer                      | Produces
-----------|----------------------------------------------|---------
`mine`     | `PathSampling`, `RuleFile` when `rules-file` | `rules-file`, `confidence-distribution`
`attack`   | one per `attacker`: `RulesDelete`, `RulesAdd`, `RandomDelete`, `RandomAdd`, `CosDelete`, `CosAdd`, `NoAttack` | `plans`, `perturbed-graphs`, `budgets`
`train`    | `KGE`                                        | `checkpoints`
`eval`     | `LinkPrediction`                             | `reports`, `run-record`
`pipeline` | `AttackPipeline`                             | every artifact of the steps above
`report`   | `ExperimentReport`                           | `report-json`, `report-csv`, `report-markdown`

Every step writes into `<out>/<step>/`. Step results are pickled to
`<out>/kgra-results.pkl`, so a step finds the artifacts of steps run by earlier
invocations, written as YAML to `<out>/kgra-results.yml`, and every file artifact is
listed with its SHA-256 in `<out>/manifest.yml`.

Configuration
-------------

### Variable Precedence

From least precedence to highest precedence.

    1. StepImplementer implementation provided configuration defaults
    2. Configuration files (kg-rule-attack-config), merged in the order given
    3. Runtime overrides (command line flags and --set)
    4. Artifacts of earlier steps, for keys no configuration layer sets

Unknown keys are errors. See `kg_rule_attack.config.experiment_config` for every key.

** Example **

    ---
    kg-rule-attack-config:
      train: data/wn18rr/train.txt
      valid: data/wn18rr/valid.txt
      test: data/wn18rr/test.txt

      attacker: rules-delete
      gammas: [0.05, 0.1, 0.15, 0.2, 0.25]
      m: 50
      n: 10
      rule-length: 2
      miner:
        walks-per-entity: 10
        top-k-per-head: 100

      models: [transe, distmult]
      train-config:
        dim: 100
        epochs: 100
        learning-rate: 0.1

      eval-setting: filtered
      hits-at: [1, 3, 10]
      seed: 0
      workers: 1
      out: kgra-working

Examples
--------

Getting Help

>>> kgra --help


Example Running the whole sweep

>>> kgra pipeline
...     --config=experiment.yml \\
...     --attacker=random-delete

"""

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.results import StepResult, WorkflowResult
from kg_rule_attack.step_implementer import DefaultSteps, StepImplementer
from kg_rule_attack.step_runner import StepRunner
