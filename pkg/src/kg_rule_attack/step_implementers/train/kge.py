"""`StepImplementer` for the `train` step training fact based embedding models on the clean
training graph and on every perturbed graph of the `attack` step.

Every model starts from a fresh initialization seeded with `seed`; the clean model of a
kind is trained once.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration
  * previous step results

Configuration Key  | Required? | Default     | Description
-------------------|-----------|-------------|-----------
`train`            | Yes       |             | Training triple file.
`models`           | Yes       | `[transe]`  | Model kinds.
`train-config`     | No        |             | Training settings.
`gammas`           | Yes       | `[0.1]`     | Perturbation ratios to retrain for.
`seed`             | Yes       | `0`         | Initialization and sampling seed.
`perturbed-graphs` | No        |             | Perturbed graph per ratio, from the `attack` step.
`attacker`         | No        | `none`      | Attacker of the perturbed graphs, from the \
                                               `attack` step.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key | Description
--------------------|------------
`checkpoints`       | Checkpoint per model kind, `clean` and one per perturbed ratio.
`trained-attacker`  | Attacker whose perturbed graphs were trained on.
`train-mode`        | `deterministic` or `concurrent`.
"""

import logging

from kg_rule_attack.config.experiment_config import ATTACKER_NONE
from kg_rule_attack.harness.pipeline import RUN_CLEAN, run_name
from kg_rule_attack.kg.knowledge_graph import load_tsv
from kg_rule_attack.kge.checkpoint import save_model
from kg_rule_attack.kge.training import train
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.step_implementer import StepImplementer, gamma_key

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = {
    'models': ['transe'],
    'gammas': [0.1],
    'seed': 0
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'models',
    'gammas',
    'seed'
]


class KGE(StepImplementer):
    """`StepImplementer` for the `train` step.
    """

    @staticmethod
    def step_implementer_config_defaults():
        """Getter for the StepImplementer's configuration defaults.

        Returns
        -------
        dict
            Default values to use for step configuration values.

        Notes
        -----
        These are the lowest precedence configuration values.
        """
        return DEFAULT_CONFIG

    @staticmethod
    def _required_config_or_result_keys():
        """Getter for step configuration or previous step result artifacts that are required before
        running this step.

        Returns
        -------
        array_list
            Array of configuration keys or previous step result artifacts
            that are required before running the step.
        """
        return REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)

        attacker = self.get_result_value('attacker') or ATTACKER_NONE
        perturbed_graphs = self.get_result_value('perturbed-graphs') or {}
        cfg = self.experiment_config(overrides={'attacker': attacker})
        train_kg, _, _ = self.load_graphs()
        train_cfg = cfg.train_config()

        checkpoints = {}
        for kind in cfg.models:
            runs = checkpoints.setdefault(kind, {})
            print(f"Training {kind} on the clean graph ({len(train_kg)} triples)")
            model = train(train_kg, kind, train_cfg)
            runs[RUN_CLEAN] = save_model(
                model, train_kg, self.working_path('checkpoints', f"{kind}-{RUN_CLEAN}.npz")
            )

            for gamma in cfg.gammas:
                key = gamma_key(gamma)
                if key not in perturbed_graphs:
                    if attacker != ATTACKER_NONE:
                        logger.warning(
                            "No perturbed graph of %s at ratio %s, skipping", attacker, key
                        )
                    continue
                name = f"{kind}-{run_name(attacker, gamma)}"
                perturbed_kg = load_tsv(perturbed_graphs[key], like=train_kg)
                print(f"Training {name} from a fresh initialization ({len(perturbed_kg)} triples)")
                model = train(perturbed_kg, kind, train_cfg)
                runs[key] = save_model(
                    model, perturbed_kg, self.working_path('checkpoints', f"{name}.npz")
                )

        step_result.add_artifact(
            name='checkpoints',
            value=checkpoints,
            description='Model checkpoints by kind and run.',
            is_file=True
        )
        step_result.add_artifact(
            name='trained-attacker',
            value=attacker
        )
        step_result.add_artifact(
            name='train-mode',
            value=train_cfg.mode
        )
        return step_result
