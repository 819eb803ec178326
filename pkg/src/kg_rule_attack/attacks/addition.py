"""Negative rule addition attack.

Low confidence rules are corrupted into negative rules by rewriting one body predicate
with its most correlated relation. Grounding the negative rules over the training graph
infers plausible looking but unsupported triples, which are sampled following the
training relation distribution.
"""

import concurrent.futures
import logging

import numpy as np
import scipy.sparse as sp

from kg_rule_attack.attacks.baselines import corrupt_triples
from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kg.knowledge_graph import relation_distribution
from kg_rule_attack.kg.perturbation import (PROVENANCE_RANDOM_FILL, PROVENANCE_SEPARATOR,
                                            PerturbationPlan)
from kg_rule_attack.rules.grounding import DEFAULT_MAX_FRONTIER, Grounder
from kg_rule_attack.rules.rule import Atom

logger = logging.getLogger(__name__)

REWRITING_CORRELATION = 'correlation'
REWRITING_RANDOM = 'random'
REWRITING_STRATEGIES = (REWRITING_CORRELATION, REWRITING_RANDOM)


class CorrelationTable:
    """Directed relation correlations.

    cor(r -> r') is the fraction of the entities incident to r that are incident to r'
    too, incidence counted in both directions.

    Parameters
    ----------
    co_occurrence : numpy.ndarray
        |R| x |R| integer matrix; entry (r, r') counts entities incident to both.
    relations : Vocabulary
        Relation vocabulary, surface forms break argmax ties.
    """

    def __init__(self, co_occurrence, relations):
        self.__co_occurrence = co_occurrence
        self.__relations = relations
        totals = np.diag(co_occurrence).astype(float)
        self.__values = co_occurrence / totals[:, None]

    @property
    def values(self):
        """
        Returns
        -------
        numpy.ndarray
            |R| x |R| correlations, row r holding cor(r -> .).
        """
        return self.__values

    @property
    def co_occurrence(self):
        """
        Returns
        -------
        numpy.ndarray
            Integer entity counts the correlations are ratios of.
        """
        return self.__co_occurrence

    @property
    def relations(self):
        """
        Returns
        -------
        Vocabulary
        """
        return self.__relations

    def value(self, relation, other):
        """
        Returns
        -------
        float
            cor(relation -> other).
        """
        return float(self.__values[relation, other])

    def most_correlated(self, relation):
        """The relation most correlated with another, excluding itself.

        Ties go to the lexicographically smallest surface form.

        Raises
        ------
        KGRuleAttackException
            If the vocabulary has a single relation.
        """
        others = [r for r in range(len(self.__relations)) if r != relation]
        if not others:
            raise KGRuleAttackException('No replacement relation in a single relation graph')
        return min(
            others,
            key=lambda other: (-self.__values[relation, other], self.__relations.lookup(other))
        )


def correlation_table(kg):
    """Counts relation correlations over entity incidence.

    Returns
    -------
    CorrelationTable

    Raises
    ------
    KGRuleAttackException
        If a relation has no incident entity.
    """
    array = kg.as_array()
    entities = np.concatenate([array[:, 0], array[:, 2]])
    relations = np.concatenate([array[:, 1], array[:, 1]])
    incidence = sp.csr_matrix(
        (np.ones(len(entities), dtype=np.int64), (entities, relations)),
        shape=(kg.num_entities, kg.num_relations)
    )
    # collapse repeated (entity, relation) pairs to 1
    incidence.sum_duplicates()
    incidence.data[:] = 1

    co_occurrence = (incidence.T @ incidence).toarray().astype(np.int64)
    empty = [
        kg.relations.lookup(r) for r in range(kg.num_relations) if co_occurrence[r, r] == 0
    ]
    if empty:
        raise KGRuleAttackException(f"Relations without any incident entity: {empty}")
    return CorrelationTable(co_occurrence, kg.relations)


class NegativeRule:
    """A rule with one body predicate rewritten.

    Parameters
    ----------
    base : Rule
        Rule it was corrupted from.
    position : int
        Index of the rewritten body atom.
    replacement : int
        Relation now at that position.
    """

    def __init__(self, base, position, replacement):
        original = base.body[position]
        if replacement == original.relation:
            raise KGRuleAttackException('Replacement must differ from the rewritten predicate')

        body = list(base.body)
        body[position] = Atom(replacement, original.inverted)
        self.__base = base
        self.__position = position
        self.__replacement = replacement
        self.__rule = base.with_body(body)

    @property
    def base(self):
        """
        Returns
        -------
        Rule
        """
        return self.__base

    @property
    def position(self):
        """
        Returns
        -------
        int
        """
        return self.__position

    @property
    def replacement(self):
        """
        Returns
        -------
        int
        """
        return self.__replacement

    @property
    def rule(self):
        """
        Returns
        -------
        Rule
            The negative rule, carrying the base confidence.
        """
        return self.__rule

    def __repr__(self):
        return (
            f"NegativeRule(base={self.__base}, position={self.__position}, "
            f"replacement={self.__replacement})"
        )


def corrupt_rule(rule, table, rng, strategy=REWRITING_CORRELATION):
    """Rewrites one uniformly chosen body predicate of a rule.

    Parameters
    ----------
    rule : Rule
    table : CorrelationTable
    rng : numpy.random.Generator
    strategy : str
        'correlation' picks the most correlated other relation, 'random' a uniformly
        drawn other relation.

    Returns
    -------
    NegativeRule

    Raises
    ------
    KGRuleAttackException
        If the vocabulary has a single relation or the strategy is unknown.
    """
    if strategy not in REWRITING_STRATEGIES:
        raise KGRuleAttackException(
            f"Rewriting strategy ({strategy}) must be one of {REWRITING_STRATEGIES}"
        )
    if len(table.relations) < 2:
        raise KGRuleAttackException('No replacement relation in a single relation graph')

    position = int(rng.integers(rule.length))
    original = rule.body[position].relation
    if strategy == REWRITING_CORRELATION:
        replacement = table.most_correlated(original)
    else:
        replacement = int(rng.integers(len(table.relations) - 1))
        if replacement >= original:
            replacement += 1
    return NegativeRule(rule, position, replacement)


def generate_candidates(kg, negative_rules, workers=1, max_frontier=DEFAULT_MAX_FRONTIER):
    """Triples inferred by negative rules that are not in the graph.

    Parameters
    ----------
    kg : KnowledgeGraph
    negative_rules : sequence of NegativeRule
    workers : int
    max_frontier : int

    Returns
    -------
    dict of Triple to tuple of NegativeRule
        Every candidate with the negative rules generating it, in the given rule order.
    """
    grounder = Grounder(kg, max_frontier)
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        inferred = list(executor.map(
            lambda negative: grounder.inferred_heads(negative.rule), negative_rules
        ))

    candidates = {}
    for negative, triples in zip(negative_rules, inferred):
        for triple in triples:
            candidates.setdefault(triple, []).append(negative)

    logger.info(
        "%d negative rules generated %d candidate triples", len(negative_rules), len(candidates)
    )
    return {triple: tuple(generators) for triple, generators in candidates.items()}


def apportion(total, weights):
    """Largest remainder apportionment.

    Parameters
    ----------
    total : int
        Seats to distribute.
    weights : dict
        Nonnegative weight per key; keys must be sortable. Equal weights are used when
        all are zero.

    Returns
    -------
    dict
        Integer share per key summing to total. Remainder seats go to the largest
        fractional parts, ties to the smaller key.
    """
    keys = sorted(weights)
    if not keys:
        return {}
    weight_sum = float(sum(weights[key] for key in keys))
    if weight_sum <= 0:
        weights = {key: 1 for key in keys}
        weight_sum = float(len(keys))

    quotas = {key: total * weights[key] / weight_sum for key in keys}
    shares = {key: int(np.floor(quotas[key])) for key in keys}
    remaining = total - sum(shares.values())
    by_remainder = sorted(keys, key=lambda key: (-(quotas[key] - shares[key]), key))
    for key in by_remainder[:remaining]:
        shares[key] += 1
    return shares


def relation_quotas(budget, weights, capacities):
    """Apportions a budget over relations, redistributing what a pool can not absorb.

    Parameters
    ----------
    budget : int
    weights : dict of int to int
        Training frequency per relation.
    capacities : dict of int to int
        Candidates available per relation.

    Returns
    -------
    dict of int to int
        Quota per relation, never above its capacity; sums to min(budget, total capacity).
    """
    quotas = {relation: 0 for relation in capacities}
    while True:
        remaining = budget - sum(quotas.values())
        active = {r: weights.get(r, 0) for r in capacities if quotas[r] < capacities[r]}
        if remaining <= 0 or not active:
            return quotas
        for relation, share in apportion(remaining, active).items():
            quotas[relation] += min(share, capacities[relation] - quotas[relation])


def plan_addition(  # pylint: disable=too-many-arguments,too-many-locals
    kg,
    ruleset,
    budget,
    seed=0,
    strategy=REWRITING_CORRELATION,
    ratio=None,
    workers=1,
    table=None
):
    """Plans additions inferred by corrupted low confidence rules.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    ruleset : RuleSet
        Low confidence rules to corrupt.
    budget : int
        Number of additions.
    seed : int
        Seed of rewriting, sampling and fill.
    strategy : str
        Rewriting strategy.
    ratio : float, optional
    workers : int
    table : CorrelationTable, optional
        Precomputed correlations.

    Returns
    -------
    PerturbationPlan
        Sampled candidates grouped by head relation surface form, followed by random
        corruptions when there are not enough candidates.

    Raises
    ------
    KGRuleAttackException
        If the budget is negative.
    """
    if budget < 0:
        raise KGRuleAttackException(f"Addition budget ({budget}) must not be negative")
    if budget == 0:
        return PerturbationPlan('add', [], ratio=ratio)

    rng = np.random.default_rng(seed)
    if table is None:
        table = correlation_table(kg)
    negative_rules = [corrupt_rule(rule, table, rng, strategy) for rule in ruleset]
    candidates = generate_candidates(kg, negative_rules, workers)

    pools = {}
    for triple in sorted(candidates, key=kg.surface):
        pools.setdefault(triple.relation, []).append(triple)
    distribution = relation_distribution(kg)
    quotas = relation_quotas(
        budget,
        {relation: distribution[relation] for relation in pools},
        {relation: len(pool) for relation, pool in pools.items()}
    )
    logger.info(
        "Sampling %d additions without replacement over %d candidate head relations",
        sum(quotas.values()), len(pools)
    )

    chosen, provenance, scores = [], [], []
    for relation in sorted(pools, key=kg.relations.lookup):
        pool = pools[relation]
        picks = np.sort(rng.choice(len(pool), size=quotas[relation], replace=False))
        for index in picks:
            triple = pool[int(index)]
            generators = candidates[triple]
            identifiers = dict.fromkeys(n.rule.identifier(kg.relations) for n in generators)
            chosen.append(triple)
            provenance.append(PROVENANCE_SEPARATOR.join(identifiers))
            scores.append(max((n.rule.confidence or 0.0) for n in generators))

    fill_count = budget - len(chosen)
    if fill_count:
        chosen.extend(corrupt_triples(kg, fill_count, rng, exclude=chosen))
        provenance.extend([PROVENANCE_RANDOM_FILL] * fill_count)
        scores.extend([0.0] * fill_count)
        logger.warning(
            "Only %d rule inferred candidates, %d additions filled at random (%.1f%%)",
            len(candidates), fill_count, 100.0 * fill_count / budget
        )

    return PerturbationPlan(
        'add', chosen, provenance=provenance, scores=scores, ratio=ratio, fill_count=fill_count
    )
