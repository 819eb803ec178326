"""Training losses with analytic gradients.
"""

import collections

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kge.models import TRANSE

LOSS_MARGIN = 'margin'
LOSS_SOFTPLUS = 'softplus'
LOSS_KINDS = (LOSS_MARGIN, LOSS_SOFTPLUS)

Gradients = collections.namedtuple(
    'Gradients',
    ['entity_ids', 'entity_rows', 'relation_ids', 'relation_rows']
)
Gradients.__doc__ = """Sparse loss gradients: one row per embedding occurrence, ids may repeat."""


def default_loss(kind):
    """
    Returns
    -------
    str
        Margin ranking for TransE, softplus for the bilinear models.
    """
    return LOSS_MARGIN if kind == TRANSE else LOSS_SOFTPLUS


def check_loss(kind, loss_kind):
    """
    Raises
    ------
    KGRuleAttackException
        If the loss does not fit the model kind.
    """
    if loss_kind not in LOSS_KINDS:
        raise KGRuleAttackException(f"Loss ({loss_kind}) must be one of {LOSS_KINDS}")
    if loss_kind == LOSS_MARGIN and kind != TRANSE:
        raise KGRuleAttackException(f"Margin loss is only used with TransE, not {kind}")


def dense_gradients(model, gradients):
    """Accumulates sparse gradients into full tables.

    Returns
    -------
    tuple of numpy.ndarray
        Entity and relation gradient tables shaped like the model tables.
    """
    entity_grad = np.zeros_like(model.entity_embeddings)
    relation_grad = np.zeros_like(model.relation_embeddings)
    np.add.at(entity_grad, gradients.entity_ids, gradients.entity_rows)
    np.add.at(relation_grad, gradients.relation_ids, gradients.relation_rows)
    return entity_grad, relation_grad


def _chain(model, triples, score_weights, extra=None):
    """Gradients of sum(score_weights * score(triples)) plus optional direct row terms."""
    d_head, d_relation, d_tail = model.score_gradients(*model.lookup(triples))
    weights = score_weights[:, None]
    entity_rows = [weights * d_head, weights * d_tail]
    relation_rows = [weights * d_relation]
    if extra is not None:
        entity_rows.extend(extra[0])
        relation_rows.extend(extra[1])
    repeats = len(entity_rows) // 2
    return Gradients(
        np.concatenate([triples[:, 0], triples[:, 2]] * repeats),
        np.concatenate(entity_rows),
        np.concatenate([triples[:, 1]] * len(relation_rows)),
        np.concatenate(relation_rows)
    )


def margin_ranking_loss(model, positives, negatives, margin):
    """Mean hinge loss max(0, margin - score(pos) + score(neg)) over aligned pairs.

    Parameters
    ----------
    model : EmbeddingModel
    positives : numpy.ndarray
        (n, 3) ids.
    negatives : numpy.ndarray
        (n, 3) ids, negatives[i] is paired with positives[i].
    margin : float

    Returns
    -------
    tuple of (float, Gradients)
    """
    pos_scores = model.score_triples(positives)
    neg_scores = model.score_triples(negatives)
    violations = margin - pos_scores + neg_scores
    active = (violations > 0).astype(float)
    count = len(positives)
    loss = float(np.maximum(violations, 0.0).sum() / count)

    triples = np.concatenate([positives, negatives])
    weights = np.concatenate([-active, active]) / count
    return loss, _chain(model, triples, weights)


def softplus_loss(model, positives, negatives, regularization):
    """Logistic loss softplus(-y * score) with L2 regularization of the used embeddings.

    Loss is mean over all positive and negative triples of
    softplus(-y * score) + regularization * (|h|^2 + |r|^2 + |t|^2), y = 1 for positives
    and -1 for negatives.

    Returns
    -------
    tuple of (float, Gradients)
    """
    triples = np.concatenate([positives, negatives])
    labels = np.concatenate([np.ones(len(positives)), -np.ones(len(negatives))])
    count = len(triples)

    heads, relations, tails = model.lookup(triples)
    margins = -labels * model.score(heads, relations, tails)
    squares = (heads ** 2).sum(axis=1) + (relations ** 2).sum(axis=1) + (tails ** 2).sum(axis=1)
    loss = float((np.logaddexp(0.0, margins) + regularization * squares).sum() / count)

    # d softplus(m) / dm = sigmoid(m), dm / dscore = -y
    sigmoid = np.exp(-np.logaddexp(0.0, -margins))
    weights = -labels * sigmoid / count
    scale = 2.0 * regularization / count
    extra = ([scale * heads, scale * tails], [scale * relations])
    return loss, _chain(model, triples, weights, extra)


def compute_loss(model, loss_kind, positives, negatives, margin=1.0, regularization=0.0):
    """Dispatches to the configured loss.

    Returns
    -------
    tuple of (float, Gradients)
    """
    if loss_kind == LOSS_MARGIN:
        return margin_ranking_loss(model, positives, negatives, margin)
    return softplus_loss(model, positives, negatives, regularization)
