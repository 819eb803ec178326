"""Relation similarity of a trained model.
"""

import logging

import numpy as np
import pandas as pd

from kg_rule_attack.utils.file import create_parent_dir

logger = logging.getLogger(__name__)


def relation_similarity_matrix(model, relations=None):
    """Cosine similarities between relation vectors.

    Complex vectors are compared as their 2 * dim reals. A zero vector has similarity 0
    with everything, itself included.

    Parameters
    ----------
    model : EmbeddingModel
    relations : list of int, optional
        Relation ids, all relations by default.

    Returns
    -------
    numpy.ndarray
        Symmetric matrix with values in [-1, 1].
    """
    if relations is None:
        relations = list(range(model.num_relations))
    vectors = model.relation_embeddings[np.asarray(relations, dtype=np.int64)]
    norms = np.linalg.norm(vectors, axis=1)
    zero = norms == 0
    if zero.any():
        logger.warning(
            "Relations with a zero vector get similarity 0: %s",
            [relations[i] for i in np.flatnonzero(zero)]
        )

    units = np.zeros_like(vectors)
    units[~zero] = vectors[~zero] / norms[~zero, None]
    return np.clip(units @ units.T, -1.0, 1.0)


def relation_similarity_frame(model, vocabulary, relations=None):
    """
    Returns
    -------
    pandas.DataFrame
        Similarity matrix labelled by relation surface forms on both axes.
    """
    if relations is None:
        relations = list(range(model.num_relations))
    names = [vocabulary.lookup(relation) for relation in relations]
    return pd.DataFrame(
        relation_similarity_matrix(model, relations), index=names, columns=names
    )


def save_relation_similarity(model, vocabulary, path, relations=None):
    """Writes the similarity matrix as CSV, header row of relation surface forms.

    Returns
    -------
    str
        The given path.
    """
    create_parent_dir(path)
    relation_similarity_frame(model, vocabulary, relations).to_csv(path, index_label='relation')
    return path
