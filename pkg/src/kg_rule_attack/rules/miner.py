"""Path sampling rule miner.

Candidate rule bodies are relation paths found by random walks over the graph with
inverse edges (or by exhaustive enumeration on small graphs). Every body is grounded
once; each relation that connects some of its (X, Y) pairs becomes a candidate head,
scored by standard confidence.
"""

import concurrent.futures
import logging

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.rules.grounding import DEFAULT_MAX_FRONTIER, Grounder
from kg_rule_attack.rules.rule import Atom, Rule, RuleSet

logger = logging.getLogger(__name__)


class MinerConfig:  # pylint: disable=too-many-instance-attributes
    """Rule miner settings.

    Parameters
    ----------
    max_len : int
        Longest rule body, L.
    walks_per_entity : int
        Random walks started from every entity with an incident edge.
    top_k_per_head : int
        Most confident rules kept per head relation.
    min_body_support : int
        Fewest distinct (X, Y) body pairs a rule needs.
    seed : int
        Seed of the walk sampler.
    exhaustive : bool
        Enumerate every relation path up to max_len instead of sampling.
    max_frontier : int
        Grounding frontier cap per rule.
    workers : int
        Threads used for walks and grounding; results do not depend on it.

    Raises
    ------
    ValueError
        If a count is below 1.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        max_len=2,
        walks_per_entity=10,
        top_k_per_head=100,
        min_body_support=2,
        seed=0,
        exhaustive=False,
        max_frontier=DEFAULT_MAX_FRONTIER,
        workers=1
    ):
        for name, value in (
            ('max_len', max_len),
            ('walks_per_entity', walks_per_entity),
            ('top_k_per_head', top_k_per_head),
            ('min_body_support', min_body_support),
            ('max_frontier', max_frontier),
            ('workers', workers)
        ):
            if int(value) < 1:
                raise ValueError(f"Miner setting {name} ({value}) must be at least 1")

        self.max_len = int(max_len)
        self.walks_per_entity = int(walks_per_entity)
        self.top_k_per_head = int(top_k_per_head)
        self.min_body_support = int(min_body_support)
        self.seed = int(seed)
        self.exhaustive = bool(exhaustive)
        self.max_frontier = int(max_frontier)
        self.workers = int(workers)

    def as_dict(self):
        """
        Returns
        -------
        dict
            Settings keyed by their configuration names.
        """
        return {
            'rule-length': self.max_len,
            'walks-per-entity': self.walks_per_entity,
            'top-k-per-head': self.top_k_per_head,
            'min-body-support': self.min_body_support,
            'seed': self.seed,
            'exhaustive': self.exhaustive,
            'max-frontier': self.max_frontier
        }

    def __repr__(self):
        return f"MinerConfig({self.as_dict()})"


def _atom_steps(kg, entity):
    """(atom, next entity) for every edge leaving an entity, inverse edges included."""
    steps = [(Atom(relation, False), tail) for relation, tail in kg.out_edges(entity)]
    steps.extend((Atom(relation, True), head) for relation, head in kg.in_edges(entity))
    return steps


def _walk_bodies(kg, entities, cfg):
    """Relation paths of the random walks started from the given entities.

    Each start entity has its own generator seeded by (seed, entity), so the sampled
    paths do not depend on how entities are split across workers.
    """
    bodies = set()
    for entity in entities:
        rng = np.random.default_rng([cfg.seed, entity])
        for _ in range(cfg.walks_per_entity):
            current, path = entity, ()
            for _ in range(cfg.max_len):
                steps = _atom_steps(kg, current)
                if not steps:
                    break
                atom, current = steps[int(rng.integers(len(steps)))]
                path = path + (atom,)
                bodies.add(path)
    return bodies


def _enumerate_bodies(kg, grounder, cfg):
    """Every relation path up to max_len that has at least one grounding."""
    atoms = sorted(
        {Atom(relation, inverted)
         for relation in range(kg.num_relations) if kg.triples_of(relation)
         for inverted in (False, True)}
    )
    bodies = set()
    frontier = [(atom,) for atom in atoms]
    for _ in range(cfg.max_len):
        next_frontier = []
        for body in frontier:
            pairs = grounder.body_pairs(body)
            if len(pairs.heads) == 0:
                continue
            bodies.add(body)
            ends = np.unique(pairs.tails)
            next_atoms = sorted({atom for end in ends for atom, _ in _atom_steps(kg, int(end))})
            next_frontier.extend(body + (atom,) for atom in next_atoms)
        frontier = next_frontier
    return bodies


def _chunks(items, count):
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _score_body(grounder, body, cfg):
    """Candidate rules of one body: every head relation supported by at least one pair."""
    pairs = grounder.body_pairs(body)
    body_support = len(pairs.heads)
    if pairs.truncated or body_support < cfg.min_body_support:
        return []

    rules = []
    counts = grounder.head_support_counts(pairs)
    for head in np.flatnonzero(counts):
        rule = Rule(int(head), body)
        if rule.is_tautology():
            continue
        support = int(counts[head])
        rules.append(rule.with_confidence(support / body_support, support, body_support))
    return rules


def coverage_summary(ruleset, kg):
    """Head relations with triples but without any rule.

    Returns
    -------
    list of str
        Surface forms of the uncovered relations, sorted.
    """
    covered = set(ruleset.heads())
    return sorted(
        kg.relations.lookup(relation)
        for relation in range(kg.num_relations)
        if kg.triples_of(relation) and relation not in covered
    )


def mine_rules(kg, cfg):
    """Mines chain rules with standard confidence.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    cfg : MinerConfig

    Returns
    -------
    RuleSet
        Up to top_k_per_head rules per head relation, most confident first, ties broken
        by support then lexicographic body. Deterministic for a given seed.

    Raises
    ------
    KGRuleAttackException
        If the graph is empty.
    """
    if len(kg) == 0:
        raise KGRuleAttackException('Can not mine rules from an empty graph')

    grounder = Grounder(kg, cfg.max_frontier)
    if cfg.exhaustive:
        bodies = _enumerate_bodies(kg, grounder, cfg)
    else:
        starts = sorted({t.head for t in kg} | {t.tail for t in kg})
        with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
            bodies = set().union(*executor.map(
                lambda chunk: _walk_bodies(kg, chunk, cfg),
                _chunks(starts, cfg.workers)
            ))

    ordered_bodies = sorted(bodies)
    logger.info("Mining: %d candidate bodies up to length %d", len(ordered_bodies), cfg.max_len)

    with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
        scored = list(executor.map(lambda body: _score_body(grounder, body, cfg), ordered_bodies))

    candidates = RuleSet((rule for rules in scored for rule in rules), relations=kg.relations)
    selected = []
    for head in candidates.heads():
        ranked = sorted(
            candidates.for_head(head),
            key=lambda rule: (-rule.confidence, -rule.support, candidates.body_sort_key(rule))
        )
        selected.extend(ranked[:cfg.top_k_per_head])

    ruleset = RuleSet(selected, relations=kg.relations)
    uncovered = coverage_summary(ruleset, kg)
    logger.info(
        "Mined %d rules covering %d head relations", len(ruleset), len(ruleset.heads())
    )
    if uncovered:
        logger.warning("No rule mined for %d head relations: %s", len(uncovered), uncovered)

    return ruleset
