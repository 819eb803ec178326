"""Knowledge graph core: interning, the indexed triple store and perturbation plans.
"""

from kg_rule_attack.kg.vocabulary import Vocabulary
from kg_rule_attack.kg.knowledge_graph import (KnowledgeGraph, Triple, apply_plan, load_tsv,
                                               relation_distribution, relation_neighborhood,
                                               save_tsv)
from kg_rule_attack.kg.perturbation import (PerturbationPlan, budget_for_ratio, load_plan)
