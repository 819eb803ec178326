"""The experiment settings a configuration describes, with their defaults and validation.

Configuration keys live under the `kg-rule-attack-config` top-level key:

Configuration Key         | Default          | Description
--------------------------|------------------|------------
`train`                   |                  | Training triple file, TAB separated.
`valid`                   |                  | Validation triple file, used for filtering.
`test`                    |                  | Test triple file.
`attacker`                | `rules-delete`   | One of `rules-delete`, `rules-add`, \
                                               `random-delete`, `random-add`, `cos-delete`, \
                                               `cos-add`, `none`.
`gammas`                  | `[0.1]`          | Perturbation ratios, each in (0, 1).
`pool`                    | `mean`           | Influence pooling, `mean` or `max`.
`zero-padded-pooling`     | `false`          | Mean pooling over every top-m rule of the head.
`m`                       | `50`             | Most confident rules per head used for deletion.
`n`                       | `10`             | Least confident rules per head used for addition.
`rule-length`             | `2`              | Longest mined rule body.
`miner`                   |                  | Path sampling miner settings, see `MINER_DEFAULTS`.
`rules-file`              |                  | Externally mined rules, JSON lines; skips mining.
`rewriting`               | `correlation`    | Predicate rewriting, `correlation` or `random`.
`pseudo-target-fraction`  | `0.05`           | Share of training triples CosAttack targets.
`models`                  | `[transe]`       | Model kinds: `transe`, `distmult`, `complex`.
`train-config`            |                  | Training settings, see `TRAIN_DEFAULTS`.
`eval-setting`            | `filtered`       | `filtered` or `raw` ranking.
`hits-at`                 | `[1, 3, 10]`     | Hits@K cut offs.
`target-rank-threshold`   | `10`             | Rank cut off of the highly ranked test subset.
`seed`                    | `0`              | Seed of every random choice.
`workers`                 | `1`              | Threads for grounding, similarity and ranking.
`out`                     | `kgra-working`   | Output directory.
"""

import copy
import os

from kg_rule_attack.attacks.addition import REWRITING_STRATEGIES
from kg_rule_attack.attacks.deletion import POOLS
from kg_rule_attack.kge.evaluation import SETTINGS
from kg_rule_attack.kge.losses import LOSS_KINDS
from kg_rule_attack.kge.models import MODEL_KINDS, NORMS
from kg_rule_attack.kge.training import OPTIMIZERS, TrainConfig
from kg_rule_attack.rules.grounding import DEFAULT_MAX_FRONTIER
from kg_rule_attack.rules.miner import MinerConfig
from kg_rule_attack.utils.dict import deep_merge

ATTACKER_RULES_DELETE = 'rules-delete'
ATTACKER_RULES_ADD = 'rules-add'
ATTACKER_RANDOM_DELETE = 'random-delete'
ATTACKER_RANDOM_ADD = 'random-add'
ATTACKER_COS_DELETE = 'cos-delete'
ATTACKER_COS_ADD = 'cos-add'
ATTACKER_NONE = 'none'
ATTACKERS = (
    ATTACKER_RULES_DELETE,
    ATTACKER_RULES_ADD,
    ATTACKER_RANDOM_DELETE,
    ATTACKER_RANDOM_ADD,
    ATTACKER_COS_DELETE,
    ATTACKER_COS_ADD,
    ATTACKER_NONE
)

MINER_DEFAULTS = {
    'walks-per-entity': 10,
    'top-k-per-head': 100,
    'min-body-support': 2,
    'exhaustive': False,
    'max-frontier': DEFAULT_MAX_FRONTIER
}

TRAIN_DEFAULTS = {
    'dim': 100,
    'epochs': 100,
    'batch-size': 1024,
    'learning-rate': 0.1,
    'negatives-per-positive': 16,
    'margin': 1.0,
    'norm': 'L2',
    'regularization': 1e-5,
    'optimizer': 'adagrad',
    'loss': None,
    'workers': 1
}

DEFAULTS = {
    'train': None,
    'valid': None,
    'test': None,
    'attacker': ATTACKER_RULES_DELETE,
    'gammas': [0.1],
    'pool': 'mean',
    'zero-padded-pooling': False,
    'm': 50,
    'n': 10,
    'rule-length': 2,
    'miner': MINER_DEFAULTS,
    'rules-file': None,
    'rewriting': 'correlation',
    'pseudo-target-fraction': 0.05,
    'models': ['transe'],
    'train-config': TRAIN_DEFAULTS,
    'eval-setting': 'filtered',
    'hits-at': [1, 3, 10],
    'target-rank-threshold': 10,
    'seed': 0,
    'workers': 1,
    'out': 'kgra-working'
}

FILE_KEYS = ('train', 'valid', 'test', 'rules-file')


def default_values():
    """
    Returns
    -------
    dict
        Deep copy of every default.
    """
    return copy.deepcopy(DEFAULTS)


def unknown_keys(values, _schema=None, _prefix=''):
    """Dotted keys of a configuration dictionary that are not experiment settings.

    Parameters
    ----------
    values : dict
        Contents of the top-level configuration key.

    Returns
    -------
    list of str
    """
    schema = DEFAULTS if _schema is None else _schema
    unknown = []
    for key, value in values.items():
        dotted = f"{_prefix}{key}"
        if key not in schema:
            unknown.append(dotted)
        elif isinstance(schema[key], dict):
            if isinstance(value, dict):
                unknown.extend(unknown_keys(value, schema[key], f"{dotted}."))
            elif value is not None:
                unknown.append(dotted)
    return unknown


class ExperimentConfig:  # pylint: disable=too-many-instance-attributes
    """Validated experiment settings.

    Parameters
    ----------
    values : dict
        Plain configuration values, kebab-case keys as under the top-level
        configuration key. Missing keys take their defaults.

    Raises
    ------
    AssertionError
        If a key is unknown or a value is out of range, or a referenced file does not exist.
    ValueError
        If the miner or training settings are out of range.
    """

    def __init__(self, values=None):
        values = copy.deepcopy(values or {})
        unknown = unknown_keys(values)
        assert not unknown, f"Unknown configuration keys: {unknown}"
        for section in ('miner', 'train-config'):
            if section in values and values[section] is None:
                del values[section]

        merged = deep_merge(default_values(), values, overwrite_duplicate_keys=True)
        self.__values = merged

        self.train = merged['train']
        self.valid = merged['valid']
        self.test = merged['test']
        self.attacker = merged['attacker']
        self.gammas = [float(gamma) for gamma in _as_list(merged['gammas'])]
        self.pool = merged['pool']
        self.zero_padded_pooling = bool(merged['zero-padded-pooling'])
        self.m = int(merged['m'])
        self.n = int(merged['n'])
        self.rule_length = int(merged['rule-length'])
        self.rules_file = merged['rules-file']
        self.rewriting = merged['rewriting']
        self.pseudo_target_fraction = float(merged['pseudo-target-fraction'])
        self.models = [str(kind).lower() for kind in _as_list(merged['models'])]
        self.eval_setting = merged['eval-setting']
        self.hits_at = sorted({int(k) for k in _as_list(merged['hits-at'])})
        self.target_rank_threshold = int(merged['target-rank-threshold'])
        self.seed = int(merged['seed'])
        self.workers = int(merged['workers'])
        self.out = merged['out']

        self.__validate()
        # fail early on bad miner and training settings
        self.miner_config()
        self.train_config()

    def __validate(self):  # pylint: disable=too-many-branches
        assert self.attacker in ATTACKERS, \
            f"Attacker ({self.attacker}) must be one of {ATTACKERS}"
        assert self.gammas, 'At least one perturbation ratio (gammas) is required'
        for gamma in self.gammas:
            assert 0 < gamma < 1, f"Perturbation ratio ({gamma}) must be in (0, 1)"
        assert self.pool in POOLS, f"Pool ({self.pool}) must be one of {POOLS}"
        assert self.m >= 1, f"m ({self.m}) must be at least 1"
        assert self.n >= 1, f"n ({self.n}) must be at least 1"
        assert self.rule_length >= 1, f"Rule length ({self.rule_length}) must be at least 1"
        assert self.rewriting in REWRITING_STRATEGIES, \
            f"Rewriting ({self.rewriting}) must be one of {REWRITING_STRATEGIES}"
        assert 0 < self.pseudo_target_fraction <= 1, \
            f"Pseudo target fraction ({self.pseudo_target_fraction}) must be in (0, 1]"
        assert self.models, 'At least one model kind (models) is required'
        for kind in self.models:
            assert kind in MODEL_KINDS, f"Model kind ({kind}) must be one of {MODEL_KINDS}"
        assert self.eval_setting in SETTINGS, \
            f"Evaluation setting ({self.eval_setting}) must be one of {SETTINGS}"
        assert self.hits_at and min(self.hits_at) >= 1, \
            f"Hits@K cut offs ({self.hits_at}) must be positive"
        assert self.target_rank_threshold >= 1, \
            f"Target rank threshold ({self.target_rank_threshold}) must be at least 1"
        assert self.workers >= 1, f"Workers ({self.workers}) must be at least 1"
        assert self.out, 'Output directory (out) must not be empty'

        training = self.__values['train-config']
        assert training['norm'] in NORMS, f"Norm ({training['norm']}) must be one of {NORMS}"
        assert training['optimizer'] in OPTIMIZERS, \
            f"Optimizer ({training['optimizer']}) must be one of {OPTIMIZERS}"
        assert training['loss'] is None or training['loss'] in LOSS_KINDS, \
            f"Loss ({training['loss']}) must be one of {LOSS_KINDS}"

        for key in FILE_KEYS:
            path = self.__values[key]
            if path is not None:
                assert os.path.isfile(path), f"Given {key} file does not exist: {path}"

    def require(self, *keys):
        """Asserts that optional settings are given.

        Raises
        ------
        AssertionError
            Naming every missing key.
        """
        missing = [key for key in keys if self.__values.get(key) is None]
        assert not missing, f"Missing required configuration keys: {missing}"

    def miner_config(self):
        """
        Returns
        -------
        MinerConfig
            Path sampling miner settings, seeded with the experiment seed.
        """
        miner = self.__values['miner']
        return MinerConfig(
            max_len=self.rule_length,
            walks_per_entity=miner['walks-per-entity'],
            top_k_per_head=miner['top-k-per-head'],
            min_body_support=miner['min-body-support'],
            seed=self.seed,
            exhaustive=miner['exhaustive'],
            max_frontier=miner['max-frontier'],
            workers=self.workers
        )

    def train_config(self, seed=None):
        """
        Parameters
        ----------
        seed : int, optional
            Overrides the experiment seed.

        Returns
        -------
        TrainConfig
        """
        training = self.__values['train-config']
        return TrainConfig(
            dim=training['dim'],
            epochs=training['epochs'],
            batch_size=training['batch-size'],
            learning_rate=float(training['learning-rate']),
            negatives_per_positive=training['negatives-per-positive'],
            margin=float(training['margin']),
            norm=training['norm'],
            regularization=float(training['regularization']),
            optimizer=training['optimizer'],
            loss_kind=training['loss'],
            seed=self.seed if seed is None else seed,
            workers=training['workers']
        )

    def as_dict(self):
        """
        Returns
        -------
        dict
            Every setting, defaults filled in, keyed like the configuration file.
        """
        snapshot = copy.deepcopy(self.__values)
        snapshot['gammas'] = list(self.gammas)
        snapshot['models'] = list(self.models)
        snapshot['hits-at'] = list(self.hits_at)
        return snapshot

    def __repr__(self):
        return f"ExperimentConfig({self.as_dict()})"


def _as_list(value):
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]
