"""Random and cosine similarity attack baselines.
"""

import concurrent.futures
import logging
import math

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kg.knowledge_graph import Triple
from kg_rule_attack.kg.perturbation import (PROVENANCE_COSINE, PROVENANCE_RANDOM,
                                            PerturbationPlan)

logger = logging.getLogger(__name__)

MAX_CONSECUTIVE_REJECTIONS = 1_000_000

DEFAULT_PSEUDO_TARGET_FRACTION = 0.05

# corrupted candidates generated per planned addition in cosine add mode
COS_ADD_CANDIDATE_FACTOR = 10


class PseudoTargetSet:
    """Training triples standing in for attack targets in untargeted baselines.

    Parameters
    ----------
    triples : iterable of Triple
    seed : int
    fraction : float
    """

    def __init__(self, triples, seed, fraction):
        self.__triples = tuple(dict.fromkeys(triples))
        self.__seed = seed
        self.__fraction = fraction

    @property
    def triples(self):
        """
        Returns
        -------
        tuple of Triple
            Deduplicated, in sampling order.
        """
        return self.__triples

    @property
    def seed(self):
        """
        Returns
        -------
        int
        """
        return self.__seed

    @property
    def fraction(self):
        """
        Returns
        -------
        float
        """
        return self.__fraction

    def __len__(self):
        return len(self.__triples)

    def __iter__(self):
        return iter(self.__triples)


def sample_pseudo_targets(kg, fraction=DEFAULT_PSEUDO_TARGET_FRACTION, seed=0):
    """Samples a fraction of the training triples, at least one.

    Returns
    -------
    PseudoTargetSet

    Raises
    ------
    KGRuleAttackException
        If the fraction is outside (0, 1] or the graph is empty.
    """
    if not 0 < fraction <= 1:
        raise KGRuleAttackException(f"Pseudo target fraction ({fraction}) must be in (0, 1]")
    if len(kg) == 0:
        raise KGRuleAttackException('Can not sample pseudo targets from an empty graph')

    count = max(1, int(math.floor(fraction * len(kg) + 1e-9)))
    triples = kg.sorted_triples()
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(triples), size=count, replace=False)
    return PseudoTargetSet((triples[int(i)] for i in picks), seed, fraction)


def random_deletion(kg, budget, seed=0, ratio=None):
    """Deletes uniformly sampled training triples.

    Raises
    ------
    KGRuleAttackException
        If the budget is negative or larger than the graph.
    """
    if not 0 <= budget <= len(kg):
        raise KGRuleAttackException(
            f"Deletion budget ({budget}) must be between 0 and the number of triples ({len(kg)})"
        )

    triples = kg.sorted_triples()
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(triples), size=budget, replace=False)
    chosen = [triples[int(i)] for i in picks]
    return PerturbationPlan(
        'delete', chosen, provenance=[PROVENANCE_RANDOM] * budget, ratio=ratio
    )


def corrupt_triples(kg, count, rng, exclude=()):
    """Random head or tail corruptions of training triples.

    Each corruption samples a training triple, then replaces its head or tail (equal odds)
    by a uniformly drawn entity. Results in the graph, in `exclude` or already drawn are
    rejected.

    Parameters
    ----------
    kg : KnowledgeGraph
    count : int
        Number of corruptions.
    rng : numpy.random.Generator
    exclude : iterable of Triple
        Triples not to produce.

    Returns
    -------
    list of Triple
        Distinct novel triples, in drawing order.

    Raises
    ------
    KGRuleAttackException
        After 10^6 consecutive rejections.
    """
    if count and len(kg) == 0:
        raise KGRuleAttackException('Can not corrupt triples of an empty graph')

    source = kg.as_array()
    taken = set(exclude)
    corrupted = []
    rejections = 0
    while len(corrupted) < count:
        head, relation, tail = (int(x) for x in source[int(rng.integers(len(source)))])
        entity = int(rng.integers(kg.num_entities))
        if rng.integers(2) == 0:
            triple = Triple(entity, relation, tail)
        else:
            triple = Triple(head, relation, entity)

        if triple in kg or triple in taken:
            rejections += 1
            if rejections >= MAX_CONSECUTIVE_REJECTIONS:
                raise KGRuleAttackException(
                    f"No novel corruption found after {rejections} consecutive draws"
                )
            continue

        rejections = 0
        taken.add(triple)
        corrupted.append(triple)
    return corrupted


def random_addition(kg, budget, seed=0, ratio=None):
    """Adds random head or tail corruptions of training triples.

    Raises
    ------
    KGRuleAttackException
        If the budget is negative.
    """
    if budget < 0:
        raise KGRuleAttackException(f"Addition budget ({budget}) must not be negative")

    rng = np.random.default_rng(seed)
    chosen = corrupt_triples(kg, budget, rng)
    return PerturbationPlan('add', chosen, provenance=[PROVENANCE_RANDOM] * budget, ratio=ratio)


def triple_representations(model, triples):
    """Concatenated head, relation and tail vectors.

    Returns
    -------
    numpy.ndarray
        (len(triples), 3 * width) array.
    """
    array = np.asarray([tuple(t) for t in triples], dtype=np.int64).reshape(-1, 3)
    return np.concatenate([
        model.entity_embeddings[array[:, 0]],
        model.relation_embeddings[array[:, 1]],
        model.entity_embeddings[array[:, 2]]
    ], axis=1)


def _unit_rows(vectors):
    norms = np.linalg.norm(vectors, axis=1)
    nonzero = norms > 0
    units = np.zeros_like(vectors)
    units[nonzero] = vectors[nonzero] / norms[nonzero, None]
    return units, nonzero


def mean_cosine_similarity(model, candidates, targets, workers=1):
    """Mean cosine similarity of every candidate triple to the target triples.

    The mean of cosines equals the dot product of the unit candidate with the mean unit
    target, so targets are folded into one direction first.

    Returns
    -------
    tuple of (numpy.ndarray, numpy.ndarray)
        Similarities, and a mask of candidates with a nonzero representation.
    """
    target_units, target_ok = _unit_rows(triple_representations(model, targets))
    if not target_ok.all():
        logger.warning("Skipping %d zero norm target representations", int((~target_ok).sum()))
    if not target_ok.any():
        raise KGRuleAttackException('Every target triple has a zero norm representation')
    direction = target_units[target_ok].mean(axis=0)

    candidates = list(candidates)
    size = max(1, -(-len(candidates) // workers))
    chunks = [candidates[i:i + size] for i in range(0, len(candidates), size)]

    def scan(chunk):
        units, ok = _unit_rows(triple_representations(model, chunk))
        return units @ direction, ok

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        parts = list(executor.map(scan, chunks))

    if not parts:
        return np.empty(0), np.empty(0, dtype=bool)
    similarities = np.concatenate([part[0] for part in parts])
    usable = np.concatenate([part[1] for part in parts])
    if not usable.all():
        logger.warning("Skipping %d zero norm candidate triples", int((~usable).sum()))
    return similarities, usable


def cos_attack(  # pylint: disable=too-many-arguments,too-many-locals
    kg,
    model,
    targets,
    budget,
    mode,
    seed=0,
    ratio=None,
    workers=1
):
    """Cosine similarity baseline, adapted to untargeted attacks through pseudo targets.

    Delete mode removes the training triples most similar to the targets; add mode adds
    the random corruptions least similar to them.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    model : EmbeddingModel
        Model trained on the graph.
    targets : PseudoTargetSet
    budget : int
    mode : str
        'delete' or 'add'.
    seed : int
    ratio : float, optional
    workers : int

    Returns
    -------
    PerturbationPlan

    Raises
    ------
    KGRuleAttackException
        If targets are empty, the mode is unknown or the budget is out of range.
    """
    if len(targets) == 0:
        raise KGRuleAttackException('Cosine attack needs at least one target triple')
    if mode not in ('delete', 'add'):
        raise KGRuleAttackException(f"Cosine attack mode ({mode}) must be 'delete' or 'add'")
    if budget < 0 or (mode == 'delete' and budget > len(kg)):
        raise KGRuleAttackException(f"Cosine attack budget ({budget}) out of range")
    if budget == 0:
        return PerturbationPlan(mode, [], ratio=ratio)

    if mode == 'delete':
        candidates = kg.sorted_triples()
        sign = -1.0
    else:
        rng = np.random.default_rng(seed)
        pool_size = budget * COS_ADD_CANDIDATE_FACTOR
        candidates = sorted(corrupt_triples(kg, pool_size, rng), key=kg.surface)
        sign = 1.0

    similarities, usable = mean_cosine_similarity(model, candidates, targets.triples, workers)
    # stable sort over surface ordered candidates breaks ties by surface form
    order = np.argsort(sign * similarities, kind='stable')
    ranked = [int(i) for i in order if usable[i]]
    ranked.extend(int(i) for i in np.flatnonzero(~usable))

    chosen = [candidates[i] for i in ranked[:budget]]
    scores = [float(similarities[i]) for i in ranked[:budget]]
    return PerturbationPlan(
        mode, chosen, provenance=[PROVENANCE_COSINE] * len(chosen), scores=scores, ratio=ratio
    )
