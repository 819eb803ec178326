"""Link prediction evaluation: ranking, MRR and Hits@K.
"""

import collections
import concurrent.futures
import logging

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException

logger = logging.getLogger(__name__)

SETTING_FILTERED = 'filtered'
SETTING_RAW = 'raw'
SETTINGS = (SETTING_FILTERED, SETTING_RAW)

DEFAULT_HITS_AT = (1, 3, 10)
DEFAULT_TARGET_RANK_THRESHOLD = 10


class FilterIndex:
    """Known true triples, indexed by query.

    Parameters
    ----------
    triples : iterable of Triple
        Typically train, valid and test together.
    """

    def __init__(self, triples=()):
        self.__tails = collections.defaultdict(set)
        self.__heads = collections.defaultdict(set)
        for head, relation, tail in triples:
            self.__tails[(head, relation)].add(tail)
            self.__heads[(relation, tail)].add(head)

    @classmethod
    def of(cls, *graphs):
        """
        Returns
        -------
        FilterIndex
            Index over the union of the given graphs or triple collections.
        """
        return cls(triple for graph in graphs for triple in graph)

    def tails(self, head, relation):
        """
        Returns
        -------
        set of int
            Known tails of (head, relation, ?).
        """
        return self.__tails.get((head, relation), set())

    def heads(self, relation, tail):
        """
        Returns
        -------
        set of int
            Known heads of (?, relation, tail).
        """
        return self.__heads.get((relation, tail), set())


def rank_from_scores(scores, truth, excluded=()):
    """Rank of the truth among candidate scores.

    Rank is 1 plus the number of candidates scoring strictly higher; ties are resolved by
    the mean rank convention: the truth takes the average position of its tie group,
    rounded up.

    Parameters
    ----------
    scores : numpy.ndarray
        Score of every candidate entity.
    truth : int
        Entity id of the correct answer.
    excluded : iterable of int
        Candidates removed before ranking; the truth is never removed.

    Returns
    -------
    int
    """
    keep = np.ones(len(scores), dtype=bool)
    excluded = [e for e in excluded if e != truth]
    keep[excluded] = False
    keep[truth] = False

    truth_score = scores[truth]
    higher = int(np.count_nonzero(scores[keep] > truth_score))
    ties = int(np.count_nonzero(scores[keep] == truth_score))
    # positions higher + 1 .. higher + ties + 1, average rounded up
    return higher + (ties + 3) // 2


def rank_query(model, query, truth, known=None):
    """Rank of the truth for a (head, relation, ?) or (?, relation, tail) query.

    Parameters
    ----------
    model : EmbeddingModel
    query : tuple
        (head, relation, None) for a tail query, (None, relation, tail) for a head query.
    truth : int
        Correct entity.
    known : FilterIndex or iterable of Triple, optional
        Known triples filtered out of the candidates, raw ranking when None.

    Returns
    -------
    int
    """
    if known is not None and not isinstance(known, FilterIndex):
        known = FilterIndex(known)

    head, relation, tail = query
    if tail is None:
        scores = model.score_tails(head, relation)
        excluded = known.tails(head, relation) if known is not None else ()
    elif head is None:
        scores = model.score_heads(relation, tail)
        excluded = known.heads(relation, tail) if known is not None else ()
    else:
        raise KGRuleAttackException(f"Query ({query}) must leave the head or the tail open")
    return rank_from_scores(scores, truth, list(excluded))


def query_ranks(model, test, known=None, workers=1):
    """Head and tail query ranks of every test triple.

    Returns
    -------
    numpy.ndarray
        (len(test), 2) ranks, head query first.
    """
    test = list(test)

    def ranks_of(triple):
        head, relation, tail = triple
        return (
            rank_query(model, (None, relation, tail), head, known),
            rank_query(model, (head, relation, None), tail, known)
        )

    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        ranks = list(executor.map(ranks_of, test))
    return np.asarray(ranks, dtype=np.int64).reshape(-1, 2)


def _metrics(ranks, hits_at):
    ranks = np.asarray(ranks, dtype=float)
    return float(np.mean(1.0 / ranks)), {k: float(np.mean(ranks <= k)) for k in hits_at}


class EvalReport:
    """Ranking metrics over the head and tail queries of a test set.

    Parameters
    ----------
    mrr : float
    hits : dict of int to float
    setting : str
        'filtered' or 'raw'.
    n_queries : int
    per_relation : dict of str to dict, optional
        Per relation surface form, {'mrr', 'hits', 'n_queries'}.
    """

    def __init__(self, mrr, hits, setting, n_queries, per_relation=None):  # pylint: disable=too-many-arguments
        self.mrr = float(mrr)
        self.hits = {int(k): float(v) for k, v in hits.items()}
        self.setting = setting
        self.n_queries = int(n_queries)
        self.per_relation = per_relation or {}

    def relative_drops(self, attacked):
        """Relative degradation of another report against this clean one.

        Returns
        -------
        dict of str to float or None
            (clean - attacked) / clean for 'mrr' and every 'hits@K'; None when the clean
            value is 0.
        """
        if attacked.setting != self.setting:
            raise KGRuleAttackException(
                f"Can not compare {self.setting} and {attacked.setting} metrics"
            )

        def drop(clean, other):
            return (clean - other) / clean if clean else None

        drops = {'mrr': drop(self.mrr, attacked.mrr)}
        for k in sorted(self.hits):
            if k in attacked.hits:
                drops[f"hits@{k}"] = drop(self.hits[k], attacked.hits[k])
        return drops

    def to_dict(self):
        """
        Returns
        -------
        dict
            JSON serializable form.
        """
        return {
            'mrr': self.mrr,
            'hits': {str(k): v for k, v in sorted(self.hits.items())},
            'setting': self.setting,
            'n-queries': self.n_queries,
            'per-relation': {
                relation: {
                    'mrr': values['mrr'],
                    'hits': {str(k): v for k, v in sorted(values['hits'].items())},
                    'n-queries': values['n_queries']
                }
                for relation, values in sorted(self.per_relation.items())
            }
        }

    @classmethod
    def from_dict(cls, data):
        """
        Returns
        -------
        EvalReport
            Report read back from `to_dict` output.
        """
        return cls(
            mrr=data['mrr'],
            hits=data['hits'],
            setting=data['setting'],
            n_queries=data['n-queries'],
            per_relation={
                relation: {
                    'mrr': values['mrr'],
                    'hits': {int(k): v for k, v in values['hits'].items()},
                    'n_queries': values['n-queries']
                }
                for relation, values in data.get('per-relation', {}).items()
            }
        )

    def __eq__(self, other):
        return isinstance(other, EvalReport) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return (
            f"EvalReport(setting={self.setting}, mrr={self.mrr:.4f}, hits={self.hits}, "
            f"n_queries={self.n_queries})"
        )


def evaluate(  # pylint: disable=too-many-arguments
    model,
    test,
    known=None,
    hits_at=DEFAULT_HITS_AT,
    setting=SETTING_FILTERED,
    relations=None,
    workers=1
):
    """Evaluates a model on head and tail queries of every test triple.

    Parameters
    ----------
    model : EmbeddingModel
    test : list of Triple
        Nonempty test triples.
    known : FilterIndex or iterable of Triple, optional
        Filter triples, used in the filtered setting only.
    hits_at : sequence of int
    setting : str
        'filtered' or 'raw'.
    relations : Vocabulary, optional
        Names the per relation breakdown; relation ids are used otherwise.
    workers : int

    Returns
    -------
    EvalReport

    Raises
    ------
    KGRuleAttackException
        If the test set is empty or the setting is unknown.
    """
    test = list(test)
    if not test:
        raise KGRuleAttackException('Can not evaluate on an empty test set')
    if setting not in SETTINGS:
        raise KGRuleAttackException(f"Evaluation setting ({setting}) must be one of {SETTINGS}")
    if setting == SETTING_FILTERED and known is None:
        known = FilterIndex(test)
    filter_index = known if setting == SETTING_FILTERED else None

    hits_at = sorted(set(hits_at))
    ranks = query_ranks(model, test, filter_index, workers)
    mrr, hits = _metrics(ranks.ravel(), hits_at)

    by_relation = collections.defaultdict(list)
    for triple, pair in zip(test, ranks):
        by_relation[triple[1]].extend(pair)
    per_relation = {}
    for relation, relation_ranks in by_relation.items():
        relation_mrr, relation_hits = _metrics(relation_ranks, hits_at)
        name = relations.lookup(relation) if relations is not None else str(relation)
        per_relation[name] = {
            'mrr': relation_mrr, 'hits': relation_hits, 'n_queries': len(relation_ranks)
        }

    report = EvalReport(mrr, hits, setting, ranks.size, per_relation)
    logger.info("Evaluated %d queries: %s", ranks.size, report)
    return report


def select_highly_ranked(model, test, known=None, max_rank=DEFAULT_TARGET_RANK_THRESHOLD,
                         workers=1):
    """Test triples a model already ranks well.

    Returns
    -------
    list of Triple
        Triples whose filtered head and tail ranks are both at most max_rank, in test order.
    """
    test = list(test)
    if known is None:
        known = FilterIndex(test)
    ranks = query_ranks(model, test, known, workers)
    return [triple for triple, pair in zip(test, ranks) if pair.max() <= max_rank]
