"""Perturbation planners: the rule based attacks and their baselines.
"""

from kg_rule_attack.attacks.deletion import (POOL_MAX, POOL_MEAN, POOLS, InfluenceTable,
                                             influence_scores, plan_deletion)
from kg_rule_attack.attacks.addition import (REWRITING_CORRELATION, REWRITING_RANDOM,
                                             REWRITING_STRATEGIES, CorrelationTable,
                                             NegativeRule, apportion, correlation_table,
                                             corrupt_rule, generate_candidates, plan_addition,
                                             relation_quotas)
from kg_rule_attack.attacks.baselines import (DEFAULT_PSEUDO_TARGET_FRACTION, PseudoTargetSet,
                                              corrupt_triples, cos_attack, random_addition,
                                              random_deletion, sample_pseudo_targets)
