"""`StepImplementer` for the `attack` step adding the triples that ground corrupted versions
of the least confident rules.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration
  * previous step results

Configuration Key | Required? | Default       | Description
------------------|-----------|---------------|-----------
`train`           | Yes       |               | Training triple file.
`rules-file`      | Yes       |               | Rules with confidences, usually from the \
                                                `mine` step.
`gammas`          | Yes       | `[0.1]`       | Perturbation ratios.
`n`               | Yes       | `10`          | Least confident rules per head relation.
`rewriting`       | Yes       | `correlation` | `correlation` or `random` predicate rewriting.
`seed`            | Yes       | `0`           | Seed of candidate sampling and the random fill.

Result Artifacts
----------------
Same as `RulesDelete`, with `attacker` set to `rules-add`.
"""

from kg_rule_attack.config.experiment_config import ATTACKER_RULES_ADD
from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric

DEFAULT_CONFIG = {
    'gammas': [0.1],
    'n': 10,
    'rewriting': 'correlation',
    'seed': 0
}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'rules-file',
    'gammas',
    'n',
    'rewriting',
    'seed'
]


class RulesAdd(AttackGeneric):
    """`StepImplementer` for the `attack` step using corrupted rule addition.
    """

    ATTACKER = ATTACKER_RULES_ADD

    @staticmethod
    def step_implementer_config_defaults():
        """Getter for the StepImplementer's configuration defaults.

        Returns
        -------
        dict
            Default values to use for step configuration values.
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
