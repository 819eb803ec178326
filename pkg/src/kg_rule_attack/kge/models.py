"""Fact based embedding models: TransE, DistMult and ComplEx.

Embedding tables are float64 numpy arrays. ComplEx stores a complex vector of size dim
as 2 * dim reals, real parts first then imaginary parts.
"""

from abc import ABC, abstractmethod

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException

TRANSE = 'transe'
DISTMULT = 'distmult'
COMPLEX = 'complex'
MODEL_KINDS = (TRANSE, DISTMULT, COMPLEX)

NORM_L1 = 'L1'
NORM_L2 = 'L2'
NORMS = (NORM_L1, NORM_L2)


class EmbeddingModel(ABC):
    """Entity and relation embedding tables plus a scoring function.

    Higher scores are more plausible for every model kind.

    Parameters
    ----------
    entity_embeddings : numpy.ndarray
        (|E|, width) table.
    relation_embeddings : numpy.ndarray
        (|R|, width) table.
    dim : int
        Embedding dimension; width is dim, or 2 * dim for complex models.

    Raises
    ------
    KGRuleAttackException
        If a table has the wrong width or non finite values.
    """

    KIND = None

    def __init__(self, entity_embeddings, relation_embeddings, dim):
        width = self.width_for(dim)
        for name, table in (('entity', entity_embeddings), ('relation', relation_embeddings)):
            if table.ndim != 2 or table.shape[1] != width:
                raise KGRuleAttackException(
                    f"{name} table shape {table.shape} does not match width {width}"
                )
            if not np.all(np.isfinite(table)):
                raise KGRuleAttackException(f"{name} table has non finite values")

        self.__dim = dim
        self.entity_embeddings = entity_embeddings
        self.relation_embeddings = relation_embeddings

    @classmethod
    def width_for(cls, dim):
        """
        Returns
        -------
        int
            Number of reals per embedding for a dimension.
        """
        return dim

    @property
    def kind(self):
        """
        Returns
        -------
        str
        """
        return self.KIND

    @property
    def dim(self):
        """
        Returns
        -------
        int
        """
        return self.__dim

    @property
    def num_entities(self):
        """
        Returns
        -------
        int
        """
        return self.entity_embeddings.shape[0]

    @property
    def num_relations(self):
        """
        Returns
        -------
        int
        """
        return self.relation_embeddings.shape[0]

    def lookup(self, triples):
        """
        Parameters
        ----------
        triples : numpy.ndarray
            (n, 3) id array.

        Returns
        -------
        tuple of numpy.ndarray
            Head, relation and tail embedding rows.
        """
        return (
            self.entity_embeddings[triples[:, 0]],
            self.relation_embeddings[triples[:, 1]],
            self.entity_embeddings[triples[:, 2]]
        )

    def score_triples(self, triples):
        """Scores of many triples.

        Parameters
        ----------
        triples : numpy.ndarray or list of Triple

        Returns
        -------
        numpy.ndarray
        """
        triples = np.asarray(triples, dtype=np.int64).reshape(-1, 3)
        return self.score(*self.lookup(triples))

    def score_triple(self, triple):
        """
        Returns
        -------
        float
            Plausibility of one triple.
        """
        return float(self.score_triples([tuple(triple)])[0])

    def parameters(self):
        """
        Returns
        -------
        dict of str to numpy.ndarray
            Extra model specific settings persisted in checkpoints.
        """
        return {}

    @abstractmethod
    def score(self, heads, relations, tails):
        """Row wise scores of embedding rows."""

    @abstractmethod
    def score_gradients(self, heads, relations, tails):
        """Row wise gradients of the score.

        Returns
        -------
        tuple of numpy.ndarray
            d score / d head, d score / d relation, d score / d tail, one row per triple.
        """

    @abstractmethod
    def score_tails(self, head, relation):
        """Scores of (head, relation, e) for every entity e."""

    @abstractmethod
    def score_heads(self, relation, tail):
        """Scores of (e, relation, tail) for every entity e."""

    def __repr__(self):
        return (
            f"{type(self).__name__}(dim={self.dim}, entities={self.num_entities}, "
            f"relations={self.num_relations})"
        )


class TransE(EmbeddingModel):
    """Translation model, score -||h + r - t||.

    Parameters
    ----------
    norm : str
        'L1' or 'L2'.
    """

    KIND = TRANSE

    def __init__(self, entity_embeddings, relation_embeddings, dim, norm=NORM_L2):
        if norm not in NORMS:
            raise KGRuleAttackException(f"TransE norm ({norm}) must be one of {NORMS}")
        super().__init__(entity_embeddings, relation_embeddings, dim)
        self.__norm = norm

    @property
    def norm(self):
        """
        Returns
        -------
        str
        """
        return self.__norm

    def parameters(self):
        return {'norm': self.__norm}

    def __distance(self, differences):
        if self.__norm == NORM_L1:
            return np.abs(differences).sum(axis=-1)
        return np.sqrt((differences ** 2).sum(axis=-1))

    def score(self, heads, relations, tails):
        return -self.__distance(heads + relations - tails)

    def score_gradients(self, heads, relations, tails):
        differences = heads + relations - tails
        if self.__norm == NORM_L1:
            direction = np.sign(differences)
        else:
            norms = np.sqrt((differences ** 2).sum(axis=1, keepdims=True))
            # the L2 norm is not differentiable at 0, take the zero subgradient
            direction = np.divide(
                differences, norms, out=np.zeros_like(differences), where=norms > 0
            )
        return -direction, -direction, direction

    def score_tails(self, head, relation):
        translated = self.entity_embeddings[head] + self.relation_embeddings[relation]
        return -self.__distance(translated[None, :] - self.entity_embeddings)

    def score_heads(self, relation, tail):
        target = self.entity_embeddings[tail] - self.relation_embeddings[relation]
        return -self.__distance(self.entity_embeddings - target[None, :])

    def normalize_entities(self, rows=None):
        """Projects entity vectors onto the unit L2 sphere, in place.

        Parameters
        ----------
        rows : numpy.ndarray, optional
            Entity ids to project; all entities by default.
        """
        if rows is None:
            rows = np.arange(self.num_entities)
        vectors = self.entity_embeddings[rows]
        norms = np.linalg.norm(vectors, axis=1, keepdims=True)
        self.entity_embeddings[rows] = np.divide(
            vectors, norms, out=vectors.copy(), where=norms > 0
        )


class DistMult(EmbeddingModel):
    """Diagonal bilinear model, score sum(h * r * t)."""

    KIND = DISTMULT

    def score(self, heads, relations, tails):
        return (heads * relations * tails).sum(axis=-1)

    def score_gradients(self, heads, relations, tails):
        return relations * tails, heads * tails, heads * relations

    def score_tails(self, head, relation):
        return self.entity_embeddings @ (
            self.entity_embeddings[head] * self.relation_embeddings[relation]
        )

    def score_heads(self, relation, tail):
        return self.entity_embeddings @ (
            self.relation_embeddings[relation] * self.entity_embeddings[tail]
        )


def _split(table):
    half = table.shape[-1] // 2
    return table[..., :half], table[..., half:]


class ComplEx(EmbeddingModel):
    """Complex diagonal model, score Re(sum(h * r * conj(t)))."""

    KIND = COMPLEX

    @classmethod
    def width_for(cls, dim):
        return 2 * dim

    def score(self, heads, relations, tails):
        h_re, h_im = _split(heads)
        r_re, r_im = _split(relations)
        t_re, t_im = _split(tails)
        return (
            h_re * r_re * t_re + h_re * r_im * t_im + h_im * r_re * t_im - h_im * r_im * t_re
        ).sum(axis=-1)

    def score_gradients(self, heads, relations, tails):
        h_re, h_im = _split(heads)
        r_re, r_im = _split(relations)
        t_re, t_im = _split(tails)
        d_head = np.concatenate([r_re * t_re + r_im * t_im, r_re * t_im - r_im * t_re], axis=1)
        d_relation = np.concatenate([h_re * t_re + h_im * t_im, h_re * t_im - h_im * t_re], axis=1)
        d_tail = np.concatenate([h_re * r_re - h_im * r_im, h_re * r_im + h_im * r_re], axis=1)
        return d_head, d_relation, d_tail

    def score_tails(self, head, relation):
        h_re, h_im = _split(self.entity_embeddings[head])
        r_re, r_im = _split(self.relation_embeddings[relation])
        # Re(a * conj(t)) = a_re * t_re + a_im * t_im with a = h * r
        query = np.concatenate([h_re * r_re - h_im * r_im, h_re * r_im + h_im * r_re])
        return self.entity_embeddings @ query

    def score_heads(self, relation, tail):
        r_re, r_im = _split(self.relation_embeddings[relation])
        t_re, t_im = _split(self.entity_embeddings[tail])
        query = np.concatenate([r_re * t_re + r_im * t_im, r_re * t_im - r_im * t_re])
        return self.entity_embeddings @ query


MODEL_CLASSES = {
    TRANSE: TransE,
    DISTMULT: DistMult,
    COMPLEX: ComplEx
}


def model_class(kind):
    """
    Returns
    -------
    type
        EmbeddingModel subclass of a kind.

    Raises
    ------
    KGRuleAttackException
        If the kind is unknown.
    """
    try:
        return MODEL_CLASSES[kind.lower()]
    except KeyError as error:
        raise KGRuleAttackException(
            f"Model kind ({kind}) must be one of {MODEL_KINDS}"
        ) from error


def init_model(kg, kind, dim, seed=0, **parameters):
    """Randomly initialized model for a graph.

    Values are drawn uniformly from [-1/sqrt(dim), 1/sqrt(dim)]; TransE entity vectors are
    then normalized to unit L2 norm.

    Parameters
    ----------
    kg : KnowledgeGraph
    kind : str
    dim : int
    seed : int
    parameters
        Model specific settings, e.g. norm for TransE.

    Returns
    -------
    EmbeddingModel

    Raises
    ------
    KGRuleAttackException
        If dim < 1 or the kind is unknown.
    """
    if dim < 1:
        raise KGRuleAttackException(f"Embedding dimension ({dim}) must be at least 1")

    cls = model_class(kind)
    width = cls.width_for(dim)
    bound = 1.0 / np.sqrt(dim)
    rng = np.random.default_rng(seed)
    entities = rng.uniform(-bound, bound, size=(kg.num_entities, width))
    relations = rng.uniform(-bound, bound, size=(kg.num_relations, width))

    model = cls(entities, relations, dim, **parameters)
    if isinstance(model, TransE):
        model.normalize_entities()
    return model


def score_triple(model, triple):
    """
    Returns
    -------
    float
        Plausibility of a triple under a model.
    """
    return model.score_triple(triple)
