"""`StepImplementers` for the `train` step.
"""

from kg_rule_attack.step_implementers.train.kge import KGE
