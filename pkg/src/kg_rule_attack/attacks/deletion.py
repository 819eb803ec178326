"""Rule influence deletion attack.

A training triple is influential when it is the grounded head triple of highly confident
rules. Its influence pools the confidences of every rule it heads; the most influential
triples are deleted first.
"""

import concurrent.futures
import logging

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kg.perturbation import (PROVENANCE_RANDOM_FILL, PROVENANCE_SEPARATOR,
                                            PerturbationPlan)
from kg_rule_attack.rules.grounding import DEFAULT_MAX_FRONTIER, Grounder

logger = logging.getLogger(__name__)

POOL_MEAN = 'mean'
POOL_MAX = 'max'
POOLS = (POOL_MEAN, POOL_MAX)


class InfluenceTable:
    """Influence of the training triples headed by at least one rule.

    Parameters
    ----------
    contributions : dict of Triple to list of (float, str)
        Per triple, the (confidence, identifier) of every rule heading it, in rule order.
    pool : str
        'mean' or 'max'.
    source : str
        Fingerprint of the rule set the scores come from.
    rules_per_head : dict of int to int, optional
        Number of rules per head relation. Given, mean pooling divides by it instead of
        the number of contributing rules (zero padded pooling).
    """

    def __init__(self, contributions, pool, source, rules_per_head=None):
        if pool not in POOLS:
            raise KGRuleAttackException(f"Pool ({pool}) must be one of {POOLS}")

        self.__pool = pool
        self.__source = source
        self.__zero_padded = rules_per_head is not None
        self.__contributors = {}
        self.__scores = {}
        for triple, entries in contributions.items():
            confidences = [confidence for confidence, _ in entries]
            if pool == POOL_MAX:
                score = max(confidences)
            elif rules_per_head is not None:
                score = sum(confidences) / rules_per_head[triple.relation]
            else:
                score = sum(confidences) / len(confidences)
            self.__scores[triple] = score
            self.__contributors[triple] = tuple(identifier for _, identifier in entries)

    @property
    def pool(self):
        """
        Returns
        -------
        str
        """
        return self.__pool

    @property
    def source(self):
        """
        Returns
        -------
        str
            Rule set fingerprint.
        """
        return self.__source

    @property
    def zero_padded(self):
        """
        Returns
        -------
        bool
        """
        return self.__zero_padded

    @property
    def scores(self):
        """
        Returns
        -------
        dict of Triple to float
            Nonzero influences only; other triples have influence 0.
        """
        return dict(self.__scores)

    def score(self, triple):
        """
        Returns
        -------
        float
            Influence of a triple, 0 when no rule heads it.
        """
        return self.__scores.get(triple, 0.0)

    def contributors(self, triple):
        """
        Returns
        -------
        tuple of str
            Identifiers of the rules heading a triple.
        """
        return self.__contributors.get(triple, ())

    def __len__(self):
        return len(self.__scores)


def influence_scores(  # pylint: disable=too-many-arguments
    kg,
    ruleset,
    pool=POOL_MEAN,
    zero_padded=False,
    workers=1,
    max_frontier=DEFAULT_MAX_FRONTIER
):
    """Pooled rule influence of every training triple.

    A rule contributes its confidence once to each training triple that is the head
    triple of one of its groundings, however many groundings share it.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    ruleset : RuleSet
        Highly confident rules, with confidences.
    pool : str
        'mean' or 'max'.
    zero_padded : bool
        Mean pooling over every rule with the triple's relation as head, counting
        non heading rules as 0, instead of over the contributing rules only.
    workers : int
        Threads grounding rules; results do not depend on it.
    max_frontier : int
        Grounding cap per rule.

    Returns
    -------
    InfluenceTable

    Raises
    ------
    KGRuleAttackException
        If the rule set is empty or the pool is unknown.
    """
    if len(ruleset) == 0:
        raise KGRuleAttackException('Can not score influence with an empty rule set')
    if pool not in POOLS:
        raise KGRuleAttackException(f"Pool ({pool}) must be one of {POOLS}")

    grounder = Grounder(kg, max_frontier)
    rules = list(ruleset)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        heads_per_rule = list(executor.map(grounder.supported_heads, rules))

    contributions = {}
    for rule, heads in zip(rules, heads_per_rule):
        identifier = rule.identifier(kg.relations)
        for triple in heads:
            contributions.setdefault(triple, []).append((rule.confidence or 0.0, identifier))

    rules_per_head = None
    if zero_padded:
        rules_per_head = {head: len(ruleset.for_head(head)) for head in ruleset.heads()}

    table = InfluenceTable(contributions, pool, ruleset.fingerprint(), rules_per_head)
    logger.info(
        "Influence: %d of %d training triples headed by %d rules (pool=%s, zero-padded=%s)",
        len(table), len(kg), len(rules), pool, zero_padded
    )
    return table


def plan_deletion(  # pylint: disable=too-many-arguments
    kg,
    ruleset,
    budget,
    pool=POOL_MEAN,
    seed=0,
    zero_padded=False,
    ratio=None,
    workers=1,
    table=None
):
    """Plans the deletion of the most influential training triples.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    ruleset : RuleSet
        Highly confident rules.
    budget : int
        Number of deletions, at most |T|.
    pool : str
    seed : int
        Seed of the random fill.
    zero_padded : bool
    ratio : float, optional
        Ratio stamped on the plan.
    workers : int
    table : InfluenceTable, optional
        Precomputed influences, skipping the scoring.

    Returns
    -------
    PerturbationPlan
        Triples ordered by decreasing influence, ties by surface form, followed by
        uniformly sampled zero influence triples if too few triples have influence.

    Raises
    ------
    KGRuleAttackException
        If the budget is negative or larger than the graph.
    """
    if not 0 <= budget <= len(kg):
        raise KGRuleAttackException(
            f"Deletion budget ({budget}) must be between 0 and the number of triples ({len(kg)})"
        )
    if budget == 0:
        return PerturbationPlan('delete', [], ratio=ratio)

    if table is None:
        table = influence_scores(kg, ruleset, pool, zero_padded, workers)

    ranked = sorted(
        (triple for triple in table.scores if table.score(triple) > 0),
        key=lambda triple: (-table.score(triple), kg.surface(triple))
    )
    chosen = ranked[:budget]
    provenance = [PROVENANCE_SEPARATOR.join(table.contributors(t)) for t in chosen]
    scores = [table.score(t) for t in chosen]

    fill_count = budget - len(chosen)
    if fill_count:
        chosen_set = set(chosen)
        zero_triples = [t for t in kg.sorted_triples() if t not in chosen_set]
        rng = np.random.default_rng(seed)
        picks = rng.choice(len(zero_triples), size=fill_count, replace=False)
        chosen.extend(zero_triples[int(i)] for i in picks)
        provenance.extend([PROVENANCE_RANDOM_FILL] * fill_count)
        scores.extend([0.0] * fill_count)
        logger.warning(
            "Only %d triples have positive influence, %d deletions filled at random",
            budget - fill_count, fill_count
        )

    return PerturbationPlan(
        'delete', chosen, provenance=provenance, scores=scores, ratio=ratio,
        fill_count=fill_count
    )
