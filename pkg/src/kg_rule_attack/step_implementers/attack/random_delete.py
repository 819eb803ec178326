"""`StepImplementer` for the `attack` step deleting training triples drawn uniformly at random.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration

Configuration Key | Required? | Default | Description
------------------|-----------|---------|-----------
`train`           | Yes       |         | Training triple file.
`gammas`          | Yes       | `[0.1]` | Perturbation ratios.
`seed`            | Yes       | `0`     | Seed of the draw.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key | Description
--------------------|------------
`attacker`          | `random-delete`.
`budgets`           | floor(gamma * \\|T\\|) per ratio.
`plans`             | Plan file per ratio.
`perturbed-graphs`  | Perturbed training graph per ratio.
"""

from kg_rule_attack.config.experiment_config import ATTACKER_RANDOM_DELETE
from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric

DEFAULT_CONFIG = {
    'gammas': [0.1],
    'seed': 0
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'gammas',
    'seed'
]


class RandomDelete(AttackGeneric):  # pylint: disable=too-few-public-methods
    """`StepImplementer` for the `attack` step using the `random-delete` baseline.
    """

    ATTACKER = ATTACKER_RANDOM_DELETE

    @staticmethod
    def step_implementer_config_defaults():
        return DEFAULT_CONFIG

    @staticmethod
    def _required_config_or_result_keys():
        return REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS
