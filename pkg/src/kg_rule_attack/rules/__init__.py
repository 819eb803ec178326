"""Chain rule mining, grounding and rule files.
"""

from kg_rule_attack.rules.rule import (INVERSE_PREFIX, SELECT_HIGHEST, SELECT_LOWEST, Atom,
                                       Rule, RuleSet, select_rules)
from kg_rule_attack.rules.grounding import (DEFAULT_MAX_FRONTIER, Grounder, Grounding,
                                            ground_rule, infer_heads, rule_confidence)
from kg_rule_attack.rules.miner import MinerConfig, coverage_summary, mine_rules
from kg_rule_attack.rules.rule_file import load_rules, save_rules
from kg_rule_attack.rules.statistics import (confidence_distribution,
                                             save_confidence_distribution)
