"""`StepImplementer` for the `attack` step adding the random
corruptions least similar to sampled pseudo targets.

Similarity is measured with a TransE model trained on the clean graph, saved as the
`surrogate-checkpoint` artifact.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration

Configuration Key        | Required? | Default | Description
-------------------------|-----------|---------|-----------
`train`                  | Yes       |         | Training triple file.
`gammas`                 | Yes       | `[0.1]` | Perturbation ratios.
`pseudo-target-fraction` | Yes       | `0.05`  | Share of training triples to target.
`train-config`           | No        |         | Settings of the surrogate model.
`seed`                   | Yes       | `0`     | Seed of the targets and the surrogate.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key    | Description
-----------------------|------------
`attacker`             | `cos-add`.
`budgets`              | floor(gamma * \\|T\\|) per ratio.
`plans`                | Plan file per ratio.
`perturbed-graphs`     | Perturbed training graph per ratio.
`surrogate-checkpoint` | The clean TransE model.
"""

from kg_rule_attack.config.experiment_config import ATTACKER_COS_ADD
from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric

DEFAULT_CONFIG = {
    'gammas': [0.1],
    'pseudo-target-fraction': 0.05,
    'seed': 0
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'gammas',
    'pseudo-target-fraction',
    'seed'
]


class CosAdd(AttackGeneric):  # pylint: disable=too-few-public-methods
    """`StepImplementer` for the `attack` step using the `cos-add` baseline.
    """

    ATTACKER = ATTACKER_COS_ADD

    @staticmethod
    def step_implementer_config_defaults():
        return DEFAULT_CONFIG

    @staticmethod
    def _required_config_or_result_keys():
        return REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS
