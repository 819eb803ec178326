"""Immutable indexed triple store.
"""

import collections
import logging
import os

import numpy as np
import scipy.sparse as sp

from kg_rule_attack.exceptions import (KGRuleAttackException, PlanViolationError,
                                       TripleFileParseError, VocabularyError)
from kg_rule_attack.kg.vocabulary import Vocabulary
from kg_rule_attack.utils.file import create_parent_dir

logger = logging.getLogger(__name__)

Triple = collections.namedtuple('Triple', ['head', 'relation', 'tail'])
Triple.__doc__ = """A (head, relation, tail) fact as ids into the owning graph vocabularies."""


class KnowledgeGraph:  # pylint: disable=too-many-instance-attributes
    """A deduplicated set of triples plus the indexes the attacks consume.

    Instances are never modified after construction, so they can be shared read-only.
    Changing the triple set always constructs a new graph (see `apply_plan`).

    Parameters
    ----------
    entities : Vocabulary
        Entity interning table, frozen by this constructor.
    relations : Vocabulary
        Relation interning table, frozen by this constructor.
    triples : iterable of Triple or (int, int, int)
        Facts. Duplicates are dropped.

    Raises
    ------
    VocabularyError
        If a triple references an id outside the vocabularies.
    """

    def __init__(self, entities, relations, triples):
        self.__entities = entities.freeze()
        self.__relations = relations.freeze()

        triple_set = set()
        for head, relation, tail in triples:
            if not (0 <= head < len(entities) and 0 <= tail < len(entities)):
                raise VocabularyError([str((head, relation, tail))], 'Unknown entity id in triple')
            if not 0 <= relation < len(relations):
                raise VocabularyError([str((head, relation, tail))], 'Unknown relation id in triple')
            triple_set.add(Triple(int(head), int(relation), int(tail)))
        self.__triples = frozenset(triple_set)

        out_index = collections.defaultdict(list)
        in_index = collections.defaultdict(list)
        rel_index = collections.defaultdict(list)
        incident_relations = collections.defaultdict(set)
        for triple in sorted(self.__triples):
            out_index[triple.head].append((triple.relation, triple.tail))
            in_index[triple.tail].append((triple.relation, triple.head))
            rel_index[triple.relation].append(triple)
            incident_relations[triple.head].add(triple.relation)
            incident_relations[triple.tail].add(triple.relation)

        self.__out_index = {key: tuple(value) for key, value in out_index.items()}
        self.__in_index = {key: tuple(value) for key, value in in_index.items()}
        self.__rel_index = {key: tuple(value) for key, value in rel_index.items()}
        self.__incident_relations = {
            key: frozenset(value) for key, value in incident_relations.items()
        }
        self.__adjacency_cache = {}
        self.__array = None

    @classmethod
    def from_surface_triples(cls, surface_triples, like=None):
        """Builds a graph from (head, relation, tail) strings.

        Parameters
        ----------
        surface_triples : iterable of (str, str, str)
            Facts as surface forms.
        like : KnowledgeGraph, optional
            Graph whose vocabularies to share. Symbols outside them are rejected.

        Returns
        -------
        KnowledgeGraph

        Raises
        ------
        VocabularyError
            If like is given and a symbol is not part of its vocabularies.
        """
        surface_triples = list(surface_triples)
        if like is not None:
            entities, relations = like.entities, like.relations
            unknown = entities.unknown(
                [h for h, _, _ in surface_triples] + [t for _, _, t in surface_triples]
            ) + relations.unknown([r for _, r, _ in surface_triples])
            if unknown:
                raise VocabularyError(unknown, 'Symbols not in the training vocabulary')
        else:
            entities, relations = Vocabulary(kind='entity'), Vocabulary(kind='relation')

        ids = [
            (entities.intern(head), relations.intern(relation), entities.intern(tail))
            for head, relation, tail in surface_triples
        ]
        return cls(entities, relations, ids)

    @property
    def entities(self):
        """
        Returns
        -------
        Vocabulary
            Entity interning table.
        """
        return self.__entities

    @property
    def relations(self):
        """
        Returns
        -------
        Vocabulary
            Relation interning table.
        """
        return self.__relations

    @property
    def triples(self):
        """
        Returns
        -------
        frozenset of Triple
            The deduplicated triple set.
        """
        return self.__triples

    @property
    def num_entities(self):
        """
        Returns
        -------
        int
            Size of the entity vocabulary.
        """
        return len(self.__entities)

    @property
    def num_relations(self):
        """
        Returns
        -------
        int
            Size of the relation vocabulary.
        """
        return len(self.__relations)

    def out_edges(self, entity):
        """
        Returns
        -------
        tuple of (int, int)
            (relation, tail) of every triple with the given head.
        """
        return self.__out_index.get(entity, ())

    def in_edges(self, entity):
        """
        Returns
        -------
        tuple of (int, int)
            (relation, head) of every triple with the given tail.
        """
        return self.__in_index.get(entity, ())

    def triples_of(self, relation):
        """
        Returns
        -------
        tuple of Triple
            Triples with the given relation, sorted by id.
        """
        return self.__rel_index.get(relation, ())

    def incident_relations(self, entity):
        """
        Returns
        -------
        frozenset of int
            Relations of every edge where the entity is head or tail, empty if isolated.
        """
        return self.__incident_relations.get(entity, frozenset())

    def sorted_triples(self):
        """
        Returns
        -------
        list of Triple
            Triples sorted by surface form, the deterministic ordering used for ties.
        """
        return sorted(self.__triples, key=self.surface)

    def as_array(self):
        """
        Returns
        -------
        numpy.ndarray
            (|T|, 3) int64 array of the triples sorted by id. Read-only.
        """
        if self.__array is None:
            array = np.array(sorted(self.__triples), dtype=np.int64).reshape(-1, 3)
            array.setflags(write=False)
            self.__array = array
        return self.__array

    def adjacency(self, relation, inverted=False):
        """Boolean adjacency matrix of one relation.

        Parameters
        ----------
        relation : int
            Relation id.
        inverted : bool
            True for the tail to head direction.

        Returns
        -------
        scipy.sparse.csr_matrix
            |E| x |E| int64 matrix with a 1 at (head, tail), or (tail, head) if inverted.
        """
        key = (relation, inverted)
        matrix = self.__adjacency_cache.get(key)
        if matrix is None:
            triples = self.triples_of(relation)
            heads = np.fromiter((t.head for t in triples), dtype=np.int64, count=len(triples))
            tails = np.fromiter((t.tail for t in triples), dtype=np.int64, count=len(triples))
            rows, cols = (tails, heads) if inverted else (heads, tails)
            matrix = sp.csr_matrix(
                (np.ones(len(triples), dtype=np.int64), (rows, cols)),
                shape=(self.num_entities, self.num_entities)
            )
            self.__adjacency_cache[key] = matrix
        return matrix

    def surface(self, triple):
        """
        Returns
        -------
        tuple of str
            The triple as (head, relation, tail) surface forms.
        """
        return (
            self.__entities.lookup(triple[0]),
            self.__relations.lookup(triple[1]),
            self.__entities.lookup(triple[2])
        )

    def triple(self, head, relation, tail):
        """Looks up a triple by surface forms.

        Returns
        -------
        Triple
            Id triple, whether or not it is part of this graph.

        Raises
        ------
        VocabularyError
            If a symbol is unknown.
        """
        return Triple(
            self.__entities.id_of(head),
            self.__relations.id_of(relation),
            self.__entities.id_of(tail)
        )

    def with_triples(self, triples):
        """
        Returns
        -------
        KnowledgeGraph
            A new graph over the same vocabularies with the given triples.
        """
        return KnowledgeGraph(self.__entities, self.__relations, triples)

    def __contains__(self, triple):
        return triple in self.__triples

    def __len__(self):
        return len(self.__triples)

    def __iter__(self):
        return iter(self.__triples)

    def __repr__(self):
        return (
            f"KnowledgeGraph(entities={self.num_entities}, "
            f"relations={self.num_relations}, triples={len(self)})"
        )


def load_tsv(path, like=None):
    """Loads a triple file.

    Every nonempty line must be `head<TAB>relation<TAB>tail`.

    Parameters
    ----------
    path : str
        Path to a UTF-8 triple file.
    like : KnowledgeGraph, optional
        Graph whose vocabularies to share, for validation and test splits.

    Returns
    -------
    KnowledgeGraph

    Raises
    ------
    TripleFileParseError
        If a line does not have exactly three TAB separated fields,
        or if the file has no triples.
    VocabularyError
        If like is given and the file uses symbols outside its vocabularies.
    """
    surface_triples = []
    with open(path, 'r', encoding='utf-8') as triple_file:
        for line_number, line in enumerate(triple_file, start=1):
            line = line.rstrip('\r\n')
            if not line.strip():
                continue
            fields = line.split('\t')
            if len(fields) != 3:
                raise TripleFileParseError(
                    path,
                    line_number,
                    f"expected 3 TAB separated fields, got {len(fields)}"
                )
            surface_triples.append(tuple(fields))

    if not surface_triples:
        raise TripleFileParseError(path, None, 'file contains no triples')

    kg = KnowledgeGraph.from_surface_triples(surface_triples, like=like)
    logger.info(
        "Loaded %s: %d entities, %d relations, %d triples",
        os.path.basename(path), kg.num_entities, kg.num_relations, len(kg)
    )
    return kg


def save_tsv(kg, path):
    """Writes a graph as a triple file, one line per triple sorted by surface form.

    Parameters
    ----------
    kg : KnowledgeGraph
        Graph to write.
    path : str
        Destination, parent folders are created.

    Raises
    ------
    KGRuleAttackException
        If the graph has no triples.
    OSError
        If the file can not be written.
    """
    if len(kg) == 0:
        raise KGRuleAttackException('Refusing to save a graph with no triples')

    create_parent_dir(path)
    lines = sorted('\t'.join(kg.surface(triple)) for triple in kg)
    with open(path, 'w', encoding='utf-8') as triple_file:
        for line in lines:
            triple_file.write(line)
            triple_file.write('\n')


def apply_plan(kg, plan):
    """Applies a perturbation plan, producing a new graph.

    Parameters
    ----------
    kg : KnowledgeGraph
        Graph to perturb, left unmodified.
    plan : PerturbationPlan
        Additions or deletions.

    Returns
    -------
    KnowledgeGraph
        The perturbed graph over the same vocabularies.

    Raises
    ------
    PlanViolationError
        If a deleted triple is not in the graph or an added triple already is.
    """
    plan.validate(kg)

    if plan.mode == 'delete':
        triples = kg.triples.difference(plan.triples)
    else:
        triples = kg.triples.union(plan.triples)

    return kg.with_triples(triples)


def relation_neighborhood(kg, entity):
    """The set of relations connecting an entity, in either direction.

    Parameters
    ----------
    kg : KnowledgeGraph
    entity : int
        Entity id.

    Returns
    -------
    frozenset of int

    Raises
    ------
    VocabularyError
        If the entity id is unknown.
    KGRuleAttackException
        If the entity has no incident triple.
    """
    kg.entities.lookup(entity)
    relations = kg.incident_relations(entity)
    if not relations:
        raise KGRuleAttackException(
            f"Entity ({kg.entities.lookup(entity)}) has no incident triples"
        )
    return relations


def relation_distribution(kg):
    """Number of triples per relation.

    Returns
    -------
    dict of int to int
        Count for every relation of the vocabulary, zero for unused ones.
    """
    return {relation: len(kg.triples_of(relation)) for relation in range(kg.num_relations)}


def check_plan_against(kg, mode, triples):
    """Checks plan triples against a graph.

    Raises
    ------
    PlanViolationError
        On the first violating triple.
    """
    seen = set()
    for triple in triples:
        if not (0 <= triple.head < kg.num_entities and 0 <= triple.tail < kg.num_entities
                and 0 <= triple.relation < kg.num_relations):
            raise PlanViolationError(tuple(triple), 'Plan references unknown symbols')
        if triple in seen:
            raise PlanViolationError(kg.surface(triple), 'Duplicate triple in plan')
        seen.add(triple)
        if mode == 'delete' and triple not in kg:
            raise PlanViolationError(kg.surface(triple), 'Deleted triple is not in the graph')
        if mode == 'add' and triple in kg:
            raise PlanViolationError(kg.surface(triple), 'Added triple is already in the graph')
