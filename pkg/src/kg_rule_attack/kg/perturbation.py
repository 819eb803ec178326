"""Perturbation plans: ordered triple additions or deletions under a budget.
"""

import math

from kg_rule_attack.exceptions import KGRuleAttackException, PlanViolationError
from kg_rule_attack.kg.knowledge_graph import Triple, check_plan_against
from kg_rule_attack.utils.file import create_parent_dir

PLAN_MODES = ('delete', 'add')

PROVENANCE_RANDOM = 'random'
PROVENANCE_RANDOM_FILL = 'random-fill'
PROVENANCE_COSINE = 'cosine'
PROVENANCE_SEPARATOR = ';'


def budget_for_ratio(kg, ratio):
    """Perturbation budget for a ratio, rounded down.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph.
    ratio : float
        Perturbation ratio in (0, 1).

    Returns
    -------
    int
        floor(ratio * |T|)

    Examples
    --------
    A ratio of 0.1 on a 272115 triple graph gives 27211.
    """
    if not 0 < ratio < 1:
        raise ValueError(f"Perturbation ratio ({ratio}) must be in (0, 1)")
    # the epsilon absorbs binary representation error, e.g. 0.1 * 70 = 7.000000000000001
    return int(math.floor(ratio * len(kg) + 1e-9))


class PerturbationPlan:
    """Ordered list of triples to add to or delete from a graph.

    Parameters
    ----------
    mode : str
        'delete' or 'add'.
    triples : list of Triple
        Planned triples, in planning order.
    provenance : list of str, optional
        Per triple annotation: rule identifier(s) separated by ';', 'random',
        'random-fill' or 'cosine'. Defaults to empty strings.
    scores : list of float, optional
        Per triple score that ranked it (influence, similarity). Defaults to 0.
    ratio : float, optional
        Perturbation ratio the budget was derived from.
    fill_count : int, optional
        How many trailing triples were filled at random because the planner ran
        out of ranked candidates.

    Raises
    ------
    KGRuleAttackException
        If the mode is unknown, the per triple lists disagree in length,
        or the plan has duplicate triples.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        mode,
        triples,
        provenance=None,
        scores=None,
        ratio=None,
        fill_count=0
    ):
        if mode not in PLAN_MODES:
            raise KGRuleAttackException(f"Plan mode ({mode}) must be one of {PLAN_MODES}")

        triples = tuple(Triple(*triple) for triple in triples)
        provenance = tuple(provenance) if provenance is not None else ('',) * len(triples)
        scores = tuple(float(s) for s in scores) if scores is not None else (0.0,) * len(triples)

        if not len(triples) == len(provenance) == len(scores):
            raise KGRuleAttackException(
                'Plan triples, provenance and scores must have the same length'
            )
        if len(set(triples)) != len(triples):
            raise KGRuleAttackException('Plan contains duplicate triples')

        self.__mode = mode
        self.__triples = triples
        self.__provenance = provenance
        self.__scores = scores
        self.__ratio = ratio
        self.__fill_count = fill_count

    @property
    def mode(self):
        """
        Returns
        -------
        str
            'delete' or 'add'.
        """
        return self.__mode

    @property
    def triples(self):
        """
        Returns
        -------
        tuple of Triple
        """
        return self.__triples

    @property
    def provenance(self):
        """
        Returns
        -------
        tuple of str
        """
        return self.__provenance

    @property
    def scores(self):
        """
        Returns
        -------
        tuple of float
        """
        return self.__scores

    @property
    def budget(self):
        """
        Returns
        -------
        int
            Number of planned triples.
        """
        return len(self.__triples)

    @property
    def ratio(self):
        """
        Returns
        -------
        float or None
            Perturbation ratio the budget was derived from.
        """
        return self.__ratio

    @property
    def fill_count(self):
        """
        Returns
        -------
        int
            Number of randomly filled triples.
        """
        return self.__fill_count

    @property
    def fill_fraction(self):
        """
        Returns
        -------
        float
            fill_count / budget, 0 for an empty plan.
        """
        return self.__fill_count / self.budget if self.budget else 0.0

    def validate(self, kg):
        """Checks the plan invariants against a graph.

        Raises
        ------
        PlanViolationError
            If a deleted triple is missing from the graph, an added triple is already
            in it, or a triple uses unknown ids.
        """
        check_plan_against(kg, self.__mode, self.__triples)

    def reverse(self):
        """
        Returns
        -------
        PerturbationPlan
            The plan undoing this one (add and delete swapped).
        """
        return PerturbationPlan(
            mode='add' if self.__mode == 'delete' else 'delete',
            triples=self.__triples,
            provenance=self.__provenance,
            scores=self.__scores,
            ratio=self.__ratio,
            fill_count=self.__fill_count
        )

    def provenance_counts(self):
        """
        Returns
        -------
        dict of str to int
            Number of planned triples per provenance kind: 'rule' for rule
            derived triples, otherwise the provenance tag itself.
        """
        counts = {}
        for tag in self.__provenance:
            kind = tag if tag in (PROVENANCE_RANDOM, PROVENANCE_RANDOM_FILL,
                                  PROVENANCE_COSINE, '') else 'rule'
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    def save(self, kg, path):
        """Writes the plan file.

        One line per triple: `op<TAB>head<TAB>relation<TAB>tail<TAB>score<TAB>provenance`.

        Parameters
        ----------
        kg : KnowledgeGraph
            Graph whose vocabularies render the triples.
        path : str
            Destination, parent folders are created.
        """
        create_parent_dir(path)
        with open(path, 'w', encoding='utf-8') as plan_file:
            for triple, score, provenance in zip(self.__triples, self.__scores, self.__provenance):
                fields = (self.__mode,) + kg.surface(triple) + (repr(score), provenance)
                plan_file.write('\t'.join(fields))
                plan_file.write('\n')

    def __len__(self):
        return len(self.__triples)

    def __iter__(self):
        return iter(self.__triples)

    def __eq__(self, other):
        return (
            isinstance(other, PerturbationPlan) and
            self.mode == other.mode and
            self.triples == other.triples and
            self.provenance == other.provenance and
            self.scores == other.scores
        )

    def __repr__(self):
        return (
            f"PerturbationPlan(mode={self.__mode}, budget={self.budget}, "
            f"ratio={self.__ratio}, fill_count={self.__fill_count})"
        )


def load_plan(path, kg, ratio=None):
    """Reads a plan file written by `PerturbationPlan.save`.

    Parameters
    ----------
    path : str
        Plan file.
    kg : KnowledgeGraph
        Graph whose vocabularies the plan refers to.
    ratio : float, optional
        Ratio to stamp on the loaded plan.

    Returns
    -------
    PerturbationPlan

    Raises
    ------
    PlanViolationError
        If a line is malformed, mixes modes, or references unknown symbols.
    """
    mode = None
    triples, scores, provenance = [], [], []
    with open(path, 'r', encoding='utf-8') as plan_file:
        for line_number, line in enumerate(plan_file, start=1):
            line = line.rstrip('\r\n')
            if not line:
                continue
            fields = line.split('\t')
            if len(fields) != 6:
                raise PlanViolationError(
                    (path, line_number), f"Expected 6 TAB separated fields, got {len(fields)}"
                )
            if mode is None:
                mode = fields[0]
            elif fields[0] != mode:
                raise PlanViolationError((path, line_number), 'Plan mixes add and delete')
            try:
                triples.append(kg.triple(fields[1], fields[2], fields[3]))
            except KGRuleAttackException as error:
                raise PlanViolationError(tuple(fields[1:4]), str(error)) from error
            scores.append(float(fields[4]))
            provenance.append(fields[5])

    fill_count = sum(1 for tag in provenance if tag == PROVENANCE_RANDOM_FILL)
    return PerturbationPlan(
        mode=mode or 'delete',
        triples=triples,
        provenance=provenance,
        scores=scores,
        ratio=ratio,
        fill_count=fill_count
    )
