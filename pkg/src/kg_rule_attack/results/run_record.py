"""Record of one experiment run: settings, fingerprints, and clean versus attacked metrics.
"""

import copy
import json

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kge.evaluation import EvalReport
from kg_rule_attack.utils.file import write_json_file

RUN_RECORD_KEY = 'kgra-run-record'


class RunCell:  # pylint: disable=too-many-instance-attributes
    """Clean and attacked evaluation of one (model, attacker, ratio) combination.

    Parameters
    ----------
    model : str
        Model kind.
    attacker : str
    gamma : float
        Perturbation ratio.
    budget : int
        floor(gamma * |T|) of the clean training graph.
    clean : EvalReport
    attacked : EvalReport
    plan_size : int
        Number of planned triples; 0 for the `none` attacker.
    plan_file : str, optional
    fill_count : int
        Trailing plan triples filled at random.
    provenance : dict of str to int, optional
        Planned triples per provenance kind.
    train_mode : str
        'deterministic' or 'concurrent'.
    highly_ranked : dict, optional
        `{'targets': int, 'clean': EvalReport, 'attacked': EvalReport}` over the test
        triples the clean model already ranked well.
    train_size : int, optional
        Number of clean training triples, to recheck the budget.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        model,
        attacker,
        gamma,
        budget,
        clean,
        attacked,
        plan_size=0,
        plan_file=None,
        fill_count=0,
        provenance=None,
        train_mode='deterministic',
        highly_ranked=None,
        train_size=None
    ):
        self.model = model
        self.attacker = attacker
        self.gamma = float(gamma)
        self.budget = int(budget)
        self.clean = clean
        self.attacked = attacked
        self.plan_size = int(plan_size)
        self.plan_file = plan_file
        self.fill_count = int(fill_count)
        self.provenance = dict(provenance or {})
        self.train_mode = train_mode
        self.highly_ranked = highly_ranked
        self.train_size = int(train_size) if train_size is not None else None

    @property
    def key(self):
        """
        Returns
        -------
        tuple
            (model, attacker, gamma)
        """
        return self.model, self.attacker, self.gamma

    def relative_drops(self):
        """
        Returns
        -------
        dict of str to float or None
            Recomputed from the stored clean and attacked reports.
        """
        return self.clean.relative_drops(self.attacked)

    def to_dict(self):
        """
        Returns
        -------
        dict
            JSON serializable form, relative drops included.
        """
        data = {
            'model': self.model,
            'attacker': self.attacker,
            'gamma': self.gamma,
            'budget': self.budget,
            'plan-size': self.plan_size,
            'plan-file': self.plan_file,
            'fill-count': self.fill_count,
            'provenance': dict(sorted(self.provenance.items())),
            'train-mode': self.train_mode,
            'clean': self.clean.to_dict(),
            'attacked': self.attacked.to_dict(),
            'relative-drops': self.relative_drops(),
            'highly-ranked': None,
            'train-size': self.train_size
        }
        if self.highly_ranked is not None:
            clean = self.highly_ranked['clean']
            attacked = self.highly_ranked['attacked']
            data['highly-ranked'] = {
                'targets': self.highly_ranked['targets'],
                'clean': clean.to_dict(),
                'attacked': attacked.to_dict(),
                'relative-drops': clean.relative_drops(attacked)
            }
        return data

    @classmethod
    def from_dict(cls, data):
        """
        Returns
        -------
        RunCell
        """
        highly_ranked = data.get('highly-ranked')
        if highly_ranked is not None:
            highly_ranked = {
                'targets': highly_ranked['targets'],
                'clean': EvalReport.from_dict(highly_ranked['clean']),
                'attacked': EvalReport.from_dict(highly_ranked['attacked'])
            }
        return cls(
            model=data['model'],
            attacker=data['attacker'],
            gamma=data['gamma'],
            budget=data['budget'],
            clean=EvalReport.from_dict(data['clean']),
            attacked=EvalReport.from_dict(data['attacked']),
            plan_size=data.get('plan-size', 0),
            plan_file=data.get('plan-file'),
            fill_count=data.get('fill-count', 0),
            provenance=data.get('provenance'),
            train_mode=data.get('train-mode', 'deterministic'),
            highly_ranked=highly_ranked,
            train_size=data.get('train-size')
        )

    def __eq__(self, other):
        return isinstance(other, RunCell) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"RunCell(model={self.model}, attacker={self.attacker}, gamma={self.gamma})"


class RunRecord:
    """Everything needed to regenerate the reports of one run.

    Parameters
    ----------
    config : dict
        Settings snapshot, `ExperimentConfig.as_dict()`.
    seed : int
    cells : list of RunCell, optional
    fingerprints : dict of str to str, optional
        Rule set and dataset fingerprints.
    timings : dict of str to float, optional
        Wall clock seconds per stage.
    """

    def __init__(self, config, seed, cells=None, fingerprints=None, timings=None):  # pylint: disable=too-many-arguments
        self.config = copy.deepcopy(config)
        self.seed = int(seed)
        self.cells = list(cells or [])
        self.fingerprints = dict(fingerprints or {})
        self.timings = dict(timings or {})

    def add_cell(self, cell):
        """
        Raises
        ------
        KGRuleAttackException
            If a cell of the same (model, attacker, gamma) is already recorded.
        """
        if any(existing.key == cell.key for existing in self.cells):
            raise KGRuleAttackException(f"Duplicate run cell {cell.key}")
        self.cells.append(cell)

    def to_dict(self, include_timings=True):
        """
        Parameters
        ----------
        include_timings : bool
            False leaves out wall clock timings, which differ between identical runs.

        Returns
        -------
        dict
        """
        data = {
            'config': copy.deepcopy(self.config),
            'seed': self.seed,
            'fingerprints': dict(sorted(self.fingerprints.items())),
            'cells': [cell.to_dict() for cell in self.cells]
        }
        if include_timings:
            data['timings'] = dict(sorted(self.timings.items()))
        return {RUN_RECORD_KEY: data}

    @classmethod
    def from_dict(cls, data):
        """
        Returns
        -------
        RunRecord

        Raises
        ------
        KGRuleAttackException
            If the top-level key is missing.
        """
        if RUN_RECORD_KEY not in data:
            raise KGRuleAttackException(f"Missing top level key ({RUN_RECORD_KEY})")
        data = data[RUN_RECORD_KEY]
        return cls(
            config=data['config'],
            seed=data['seed'],
            cells=[RunCell.from_dict(cell) for cell in data.get('cells', [])],
            fingerprints=data.get('fingerprints'),
            timings=data.get('timings')
        )

    def save(self, path):
        """Writes the record as canonical JSON.

        Returns
        -------
        str
            The path.
        """
        return write_json_file(path, self.to_dict())

    @classmethod
    def load(cls, path):
        """
        Returns
        -------
        RunRecord
            Record read from a `save` file.
        """
        with open(path, 'r', encoding='utf-8') as record_file:
            return cls.from_dict(json.load(record_file))

    def __eq__(self, other):
        return isinstance(other, RunRecord) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"RunRecord(seed={self.seed}, cells={len(self.cells)})"
