"""`StepImplementer` for the `attack` step leaving the training graph untouched.

Only `attacker` and `budgets` are produced; `train` and `eval` then report the clean
metrics as the attacked ones.
"""

from kg_rule_attack.config.experiment_config import ATTACKER_NONE
from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric


class NoAttack(AttackGeneric):  # pylint: disable=too-few-public-methods
    """`StepImplementer` for the `attack` step without perturbation.
    """

    ATTACKER = ATTACKER_NONE

    @staticmethod
    def step_implementer_config_defaults():
        return {'gammas': [0.1]}

    @staticmethod
    def _required_config_or_result_keys():
        return ['train', 'gammas']
