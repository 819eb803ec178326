"""`StepImplementers` for the `mine` step.
"""

from kg_rule_attack.step_implementers.mine.path_sampling import PathSampling
from kg_rule_attack.step_implementers.mine.rule_file import RuleFile
