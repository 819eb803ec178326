"""Shared StepImplementers that are meant to be extended and not used directly.
"""

from kg_rule_attack.step_implementers.shared.attack_generic import AttackGeneric
from kg_rule_attack.step_implementers.shared.rules_generic import RulesGeneric
