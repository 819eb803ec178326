"""`StepImplementer` for the `attack` step deleting the training triples that ground the
most confident rules.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration
  * previous step results

Configuration Key     | Required? | Default | Description
----------------------|-----------|---------|-----------
`train`               | Yes       |         | Training triple file.
`rules-file`          | Yes       |         | Rules with confidences, usually from the `mine` step.
`gammas`              | Yes       | `[0.1]` | Perturbation ratios.
`m`                   | Yes       | `50`    | Most confident rules per head relation.
`pool`                | Yes       | `mean`  | `mean` or `max` pooling of rule influences.
`zero-padded-pooling` | No        | `false` | Mean over every selected rule of the head.
`seed`                | Yes       | `0`     | Seed of the random fill.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key | Description
--------------------|------------
`attacker`          | `rules-delete`.
`budgets`           | floor(gamma * \\|T\\|) per ratio.
`plans`             | Plan file per ratio.
`perturbed-graphs`  | Perturbed training graph per ratio.
`rule-impact`       | Confidences re-mined on every perturbed graph.
`rule-fingerprints` | Fingerprints of the rule set and of the selected rules.
"""

from kg_rule_attack.config.experiment_config import ATTACKER_RULES_DELETE
from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric

DEFAULT_CONFIG = {
    'gammas': [0.1],
    'm': 50,
    'pool': 'mean',
    'zero-padded-pooling': False,
    'seed': 0
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'rules-file',
    'gammas',
    'm',
    'pool',
    'seed'
]


class RulesDelete(AttackGeneric):
    """`StepImplementer` for the `attack` step using rule influence deletion.
    """

    ATTACKER = ATTACKER_RULES_DELETE

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
