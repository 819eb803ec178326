"""Small graphs and brute force reference computations shared by the tests.
"""
import os

import numpy as np

from kg_rule_attack.kg.knowledge_graph import KnowledgeGraph
from kg_rule_attack.rules.rule import Rule

TOY_TRIPLES = [
    ('a', 'bornIn', 'nyc'),
    ('nyc', 'locatedIn', 'usa'),
    ('a', 'bornIn', 'usa'),
    ('b', 'bornIn', 'nyc'),
    ('b', 'studyIn', 'nyc'),
    ('c', 'studyIn', 'nyc'),
    ('c', 'bornIn', 'usa')
]

TOY_TEST_TRIPLES = [
    ('b', 'bornIn', 'usa'),
    ('a', 'studyIn', 'nyc')
]

TOY_VALID_TRIPLES = [
    ('c', 'bornIn', 'nyc')
]

TINY_TRAIN_CONFIG = {
    'dim': 4,
    'epochs': 2,
    'batch-size': 4,
    'negatives-per-positive': 2
}


def toy_kg():
    return KnowledgeGraph.from_surface_triples(TOY_TRIPLES)


def random_surface_triples(seed, num_entities=12, num_relations=3, num_triples=40):
    rng = np.random.default_rng(seed)
    triples = set()
    while len(triples) < num_triples:
        head, tail = rng.integers(num_entities, size=2)
        relation = rng.integers(num_relations)
        if head != tail:
            triples.add((f"e{head:02d}", f"r{relation}", f"e{tail:02d}"))
    return sorted(triples)


def random_kg(seed, num_entities=12, num_relations=3, num_triples=40):
    return KnowledgeGraph.from_surface_triples(
        random_surface_triples(seed, num_entities, num_relations, num_triples)
    )


def write_triples(directory, name, triples):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as triple_file:
        for triple in triples:
            triple_file.write('\t'.join(triple))
            triple_file.write('\n')
    return path


def write_toy_splits(directory):
    return (
        write_triples(directory, 'train.txt', TOY_TRIPLES),
        write_triples(directory, 'valid.txt', TOY_VALID_TRIPLES),
        write_triples(directory, 'test.txt', TOY_TEST_TRIPLES)
    )


def brute_force_body_pairs(kg, body):
    """(X, Y) pairs connected by a body, by walking every triple for every atom."""
    frontier = {(entity, entity) for entity in range(kg.num_entities)}
    for atom in body:
        reached = set()
        for start, current in frontier:
            for head, relation, tail in kg.triples:
                if relation != atom.relation:
                    continue
                if not atom.inverted and head == current:
                    reached.add((start, tail))
                if atom.inverted and tail == current:
                    reached.add((start, head))
        frontier = reached
    return frontier


def brute_force_confidence(kg, rule):
    pairs = brute_force_body_pairs(kg, rule.body)
    supported = [
        (head, tail) for head, tail in pairs if (head, rule.head, tail) in kg.triples
    ]
    return len(supported) / len(pairs)


def brute_force_rank(scores, truth, excluded=()):
    """Mean rank of the truth within its tie group, rounded up, by sorting."""
    candidates = [
        entity for entity in range(len(scores))
        if entity == truth or entity not in set(excluded)
    ]
    higher = sum(1 for entity in candidates if scores[entity] > scores[truth])
    tied = sum(1 for entity in candidates if scores[entity] == scores[truth])
    positions = list(range(higher + 1, higher + tied + 1))
    return int(np.ceil(sum(positions) / len(positions)))


def brute_force_supported(kg, head, pairs):
    return {(x, head, y) for x, y in pairs if (x, head, y) in kg.triples}


def brute_force_inferred(kg, head, pairs):
    return {(x, head, y) for x, y in pairs if (x, head, y) not in kg.triples}


def brute_force_co_occurrence(kg):
    """Entities incident to both relations, for every relation pair, from the raw triples."""
    incident = {}
    for head, relation, tail in kg.triples:
        incident.setdefault(head, set()).add(relation)
        incident.setdefault(tail, set()).add(relation)
    return [
        [
            sum(1 for relations in incident.values() if first in relations and second in relations)
            for second in range(kg.num_relations)
        ]
        for first in range(kg.num_relations)
    ]


def brute_force_influence(kg, rules, zero_padded=False):
    """Pooled mean influence per training triple, keyed by plain (h, r, t) tuples."""
    pairs_of = {}
    contributions = {}
    for rule in rules:
        if rule.body not in pairs_of:
            pairs_of[rule.body] = brute_force_body_pairs(kg, rule.body)
        for triple in brute_force_supported(kg, rule.head, pairs_of[rule.body]):
            contributions.setdefault(triple, []).append(rule.confidence)

    rules_per_head = {}
    for rule in rules:
        rules_per_head[rule.head] = rules_per_head.get(rule.head, 0) + 1
    return {
        triple: sum(confidences) / (
            rules_per_head[triple[1]] if zero_padded else len(confidences)
        )
        for triple, confidences in contributions.items()
    }


def random_rules(kg, seed, extra_bodies=8):
    """Every single atom body plus a few seeded longer ones, for every head relation.

    Returns
    -------
    list of (Rule, set of (int, int))
        Rules with a grounded body, carrying their brute force confidence, and their
        brute force body pairs.
    """
    rng = np.random.default_rng(seed)
    relations = range(kg.num_relations)
    bodies = [((relation, inverted),) for relation in relations for inverted in (False, True)]
    for _ in range(extra_bodies):
        length = int(rng.integers(2, 4))
        bodies.append(tuple(
            (int(rng.integers(kg.num_relations)), bool(rng.integers(2))) for _ in range(length)
        ))
    bodies = list(dict.fromkeys(bodies))

    rules = []
    for body in bodies:
        pairs = brute_force_body_pairs(kg, Rule(0, body).body)
        if not pairs:
            continue
        for head in relations:
            support = len(brute_force_supported(kg, head, pairs))
            rules.append((Rule(head, body, support / len(pairs)), pairs))
    return rules
