"""`StepImplementers` for the `attack` step.
"""

from kg_rule_attack.step_implementers.attack.cos_add import CosAdd
from kg_rule_attack.step_implementers.attack.cos_delete import CosDelete
from kg_rule_attack.step_implementers.attack.no_attack import NoAttack
from kg_rule_attack.step_implementers.attack.random_add import RandomAdd
from kg_rule_attack.step_implementers.attack.random_delete import RandomDelete
from kg_rule_attack.step_implementers.attack.rules_add import RulesAdd
from kg_rule_attack.step_implementers.attack.rules_delete import RulesDelete

ATTACK_IMPLEMENTERS = {
    RulesDelete.ATTACKER: RulesDelete.__name__,
    RulesAdd.ATTACKER: RulesAdd.__name__,
    RandomDelete.ATTACKER: RandomDelete.__name__,
    RandomAdd.ATTACKER: RandomAdd.__name__,
    CosDelete.ATTACKER: CosDelete.__name__,
    CosAdd.ATTACKER: CosAdd.__name__,
    NoAttack.ATTACKER: NoAttack.__name__
}
