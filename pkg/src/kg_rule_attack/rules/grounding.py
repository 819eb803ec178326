"""Grounding chain rules against a knowledge graph.

Body pairs are computed by composing sparse adjacency matrices, which counts distinct
(X, Y) pairs exactly. Full groundings with every intermediate binding are streamed by a
depth first walk over the graph indexes.
"""

import collections
import logging

import numpy as np

from kg_rule_attack.exceptions import UnsupportedRuleError
from kg_rule_attack.kg.knowledge_graph import Triple

logger = logging.getLogger(__name__)

DEFAULT_MAX_FRONTIER = 1_000_000

Grounding = collections.namedtuple(
    'Grounding',
    ['bindings', 'body_triples', 'head_triple', 'head_in_kg']
)
Grounding.__doc__ = """One binding of rule variables X, Z_1..Z_{n-1}, Y to entities."""

BodyPairs = collections.namedtuple('BodyPairs', ['heads', 'tails', 'truncated'])
BodyPairs.__doc__ = """Distinct (X, Y) pairs connected by a rule body, as sorted id arrays."""


class Grounder:
    """Grounds rules against one graph, caching the graph derived lookup arrays.

    Parameters
    ----------
    kg : KnowledgeGraph
        Graph to ground against, read only.
    max_frontier : int, optional
        Largest number of intermediate (X, Z) pairs or streamed bindings allowed per
        rule before grounding that rule is abandoned and reported as truncated.
    """

    def __init__(self, kg, max_frontier=DEFAULT_MAX_FRONTIER):
        self.__kg = kg
        self.__max_frontier = max_frontier
        self.__pair_index = None
        self.__head_keys = {}

    @property
    def kg(self):
        """
        Returns
        -------
        KnowledgeGraph
        """
        return self.__kg

    @property
    def max_frontier(self):
        """
        Returns
        -------
        int
        """
        return self.__max_frontier

    def pair_key(self, heads, tails):
        """
        Returns
        -------
        numpy.ndarray
            heads * |E| + tails as int64, a unique key per entity pair.
        """
        return heads.astype(np.int64) * self.__kg.num_entities + tails.astype(np.int64)

    def body_pairs(self, body):
        """Distinct (X, Y) pairs connected by a body path.

        Parameters
        ----------
        body : sequence of Atom

        Returns
        -------
        BodyPairs
            Sorted pair arrays; empty with truncated=True when an intermediate result
            grew beyond max_frontier.
        """
        product = None
        for atom in body:
            adjacency = self.__kg.adjacency(atom.relation, atom.inverted)
            product = adjacency if product is None else product @ adjacency
            if product.nnz > self.__max_frontier:
                logger.warning(
                    "Grounding truncated: body %s has more than %d intermediate pairs",
                    list(body), self.__max_frontier
                )
                empty = np.empty(0, dtype=np.int64)
                return BodyPairs(empty, empty, True)

        coo = product.tocoo()
        keys = np.unique(self.pair_key(coo.row, coo.col))
        heads, tails = np.divmod(keys, self.__kg.num_entities)
        return BodyPairs(heads, tails, False)

    def head_keys(self, relation):
        """
        Returns
        -------
        numpy.ndarray
            Sorted pair keys of the triples of a relation.
        """
        keys = self.__head_keys.get(relation)
        if keys is None:
            triples = self.__kg.triples_of(relation)
            heads = np.fromiter((t.head for t in triples), dtype=np.int64, count=len(triples))
            tails = np.fromiter((t.tail for t in triples), dtype=np.int64, count=len(triples))
            keys = np.sort(self.pair_key(heads, tails))
            self.__head_keys[relation] = keys
        return keys

    def supported_mask(self, rule, pairs):
        """
        Returns
        -------
        numpy.ndarray of bool
            For every body pair, whether (X, head, Y) is in the graph.
        """
        return np.isin(self.pair_key(pairs.heads, pairs.tails), self.head_keys(rule.head))

    def head_support_counts(self, pairs):
        """Number of body pairs supported by each relation, in one pass over the graph.

        Parameters
        ----------
        pairs : BodyPairs

        Returns
        -------
        numpy.ndarray
            Length |R| counts; entry r is the number of body pairs (X, Y) with (X, r, Y)
            in the graph.
        """
        if self.__pair_index is None:
            array = self.__kg.as_array()
            self.__pair_index = (self.pair_key(array[:, 0], array[:, 2]), array[:, 1])
        pair_keys, pair_relations = self.__pair_index
        mask = np.isin(pair_keys, self.pair_key(pairs.heads, pairs.tails))
        return np.bincount(pair_relations[mask], minlength=self.__kg.num_relations)

    def statistics(self, rule):
        """
        Returns
        -------
        tuple of (int, int)
            (support, body support) counted over distinct (X, Y) pairs.
        """
        pairs = self.body_pairs(rule.body)
        return int(self.supported_mask(rule, pairs).sum()), len(pairs.heads)

    def confidence(self, rule):
        """Standard confidence: supported body pairs over body pairs.

        Raises
        ------
        UnsupportedRuleError
            If the body has no grounding.
        """
        support, body_support = self.statistics(rule)
        if body_support == 0:
            raise UnsupportedRuleError(f"Rule body has no grounding: {rule}")
        return support / body_support

    def inferred_heads(self, rule):
        """
        Returns
        -------
        set of Triple
            Head triples of body groundings that are not in the graph.
        """
        pairs = self.body_pairs(rule.body)
        mask = ~self.supported_mask(rule, pairs)
        return {
            Triple(int(head), rule.head, int(tail))
            for head, tail in zip(pairs.heads[mask], pairs.tails[mask])
        }

    def supported_heads(self, rule):
        """
        Returns
        -------
        set of Triple
            Head triples of body groundings that are in the graph.
        """
        pairs = self.body_pairs(rule.body)
        mask = self.supported_mask(rule, pairs)
        return {
            Triple(int(head), rule.head, int(tail))
            for head, tail in zip(pairs.heads[mask], pairs.tails[mask])
        }

    def __steps(self, entity, atom):
        """(next entity, body triple) for every edge an atom can traverse from an entity."""
        if atom.inverted:
            for relation, head in self.__kg.in_edges(entity):
                if relation == atom.relation:
                    yield head, Triple(head, relation, entity)
        else:
            for relation, tail in self.__kg.out_edges(entity):
                if relation == atom.relation:
                    yield tail, Triple(entity, relation, tail)

    def ground(self, rule):
        """Streams every grounding of a rule body.

        Groundings come ordered by X, then by edge order. Every (bindings, body triples)
        path is yielded once.

        Yields
        ------
        Grounding
        """
        first = rule.body[0]
        starts = sorted({
            (t.tail if first.inverted else t.head) for t in self.__kg.triples_of(first.relation)
        })
        emitted = 0
        for start in starts:
            stack = [((start,), ())]
            while stack:
                bindings, body_triples = stack.pop()
                depth = len(body_triples)
                if depth == len(rule.body):
                    head_triple = Triple(bindings[0], rule.head, bindings[-1])
                    yield Grounding(bindings, body_triples, head_triple, head_triple in self.__kg)
                    emitted += 1
                    if emitted >= self.__max_frontier:
                        logger.warning(
                            "Grounding truncated after %d bindings for %s", emitted, rule
                        )
                        return
                    continue
                # reversed so the stack pops edges in index order
                steps = list(self.__steps(bindings[-1], rule.body[depth]))
                for entity, triple in reversed(steps):
                    stack.append((bindings + (entity,), body_triples + (triple,)))


def ground_rule(kg, rule, max_frontier=DEFAULT_MAX_FRONTIER):
    """Streams every grounding of a rule in a graph.

    Yields
    ------
    Grounding
    """
    return Grounder(kg, max_frontier).ground(rule)


def rule_confidence(kg, rule):
    """Standard confidence of a rule body for its head.

    Returns
    -------
    float
        #distinct supported (X, Y) body pairs / #distinct (X, Y) body pairs.

    Raises
    ------
    UnsupportedRuleError
        If the body has no grounding.
    """
    return Grounder(kg).confidence(rule)


def infer_heads(kg, rule):
    """Head triples a rule derives that are not in the graph.

    Returns
    -------
    set of Triple
    """
    return Grounder(kg).inferred_heads(rule)
