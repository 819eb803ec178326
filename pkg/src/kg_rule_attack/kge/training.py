"""Negative sampling training of embedding models.
"""

import concurrent.futures
import logging

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException, TrainingDivergedError
from kg_rule_attack.kge.losses import check_loss, compute_loss, default_loss
from kg_rule_attack.kge.models import NORM_L2, TRANSE, TransE, init_model

logger = logging.getLogger(__name__)

OPTIMIZER_SGD = 'sgd'
OPTIMIZER_ADAGRAD = 'adagrad'
OPTIMIZERS = (OPTIMIZER_SGD, OPTIMIZER_ADAGRAD)

MODE_DETERMINISTIC = 'deterministic'
MODE_CONCURRENT = 'concurrent'

ADAGRAD_EPSILON = 1e-10


class TrainConfig:  # pylint: disable=too-many-instance-attributes
    """Training hyperparameters.

    Parameters
    ----------
    dim : int
    epochs : int
    batch_size : int
    learning_rate : float
    negatives_per_positive : int
    margin : float
        TransE margin.
    norm : str
        TransE norm, 'L1' or 'L2'.
    regularization : float
        L2 weight of the softplus loss.
    optimizer : str
        'sgd' or 'adagrad'.
    loss_kind : str, optional
        Defaults to the loss of the model kind.
    seed : int
    workers : int
        1 trains deterministically; more workers update the tables concurrently without
        locks and are only statistically reproducible.

    Raises
    ------
    ValueError
        If a setting is out of range.
    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        dim=100,
        epochs=100,
        batch_size=1024,
        learning_rate=0.1,
        negatives_per_positive=16,
        margin=1.0,
        norm=NORM_L2,
        regularization=1e-5,
        optimizer=OPTIMIZER_ADAGRAD,
        loss_kind=None,
        seed=0,
        workers=1
    ):
        for name, value in (
            ('dim', dim),
            ('epochs', epochs),
            ('batch_size', batch_size),
            ('negatives_per_positive', negatives_per_positive),
            ('workers', workers)
        ):
            if int(value) < 1:
                raise ValueError(f"Training setting {name} ({value}) must be at least 1")
        if learning_rate <= 0 or margin <= 0:
            raise ValueError('Training learning rate and margin must be positive')
        if regularization < 0:
            raise ValueError(f"Regularization ({regularization}) must not be negative")
        if optimizer not in OPTIMIZERS:
            raise ValueError(f"Optimizer ({optimizer}) must be one of {OPTIMIZERS}")

        self.dim = int(dim)
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.learning_rate = float(learning_rate)
        self.negatives_per_positive = int(negatives_per_positive)
        self.margin = float(margin)
        self.norm = norm
        self.regularization = float(regularization)
        self.optimizer = optimizer
        self.loss_kind = loss_kind
        self.seed = int(seed)
        self.workers = int(workers)

    @property
    def mode(self):
        """
        Returns
        -------
        str
            'deterministic' for a single worker, otherwise 'concurrent'.
        """
        return MODE_DETERMINISTIC if self.workers == 1 else MODE_CONCURRENT

    def loss_for(self, kind):
        """
        Returns
        -------
        str
            Configured loss, or the default one of the model kind.

        Raises
        ------
        KGRuleAttackException
            If the configured loss does not fit the model kind.
        """
        loss_kind = self.loss_kind or default_loss(kind)
        check_loss(kind, loss_kind)
        return loss_kind

    def as_dict(self):
        """
        Returns
        -------
        dict
            Settings keyed by their configuration names.
        """
        return {
            'dim': self.dim,
            'epochs': self.epochs,
            'batch-size': self.batch_size,
            'learning-rate': self.learning_rate,
            'negatives-per-positive': self.negatives_per_positive,
            'margin': self.margin,
            'norm': self.norm,
            'regularization': self.regularization,
            'optimizer': self.optimizer,
            'loss': self.loss_kind,
            'seed': self.seed,
            'workers': self.workers,
            'mode': self.mode
        }

    def __repr__(self):
        return f"TrainConfig({self.as_dict()})"


def corrupt_batch(positives, num_entities, negatives_per_positive, rng):
    """Negatives made by replacing the head or the tail (equal odds) with a random entity.

    Returns
    -------
    tuple of numpy.ndarray
        Positives repeated negatives_per_positive times, and the aligned negatives.
    """
    repeated = np.repeat(positives, negatives_per_positive, axis=0)
    negatives = repeated.copy()
    replace_head = rng.integers(2, size=len(repeated)) == 0
    entities = rng.integers(num_entities, size=len(repeated))
    negatives[replace_head, 0] = entities[replace_head]
    negatives[~replace_head, 2] = entities[~replace_head]
    return repeated, negatives


class Trainer:
    """Trains one model on one graph.

    Parameters
    ----------
    kg : KnowledgeGraph
        Training graph, nonempty.
    kind : str
        Model kind.
    cfg : TrainConfig
    """

    def __init__(self, kg, kind, cfg):
        if len(kg) == 0:
            raise KGRuleAttackException('Can not train on an empty graph')

        self.__kg = kg
        self.__kind = kind
        self.__cfg = cfg
        self.__loss_kind = cfg.loss_for(kind)
        self.__epoch_losses = []

        parameters = {'norm': cfg.norm} if kind == TRANSE else {}
        self.__model = init_model(kg, kind, cfg.dim, cfg.seed, **parameters)
        self.__entity_accumulator = np.zeros_like(self.__model.entity_embeddings)
        self.__relation_accumulator = np.zeros_like(self.__model.relation_embeddings)

    @property
    def model(self):
        """
        Returns
        -------
        EmbeddingModel
        """
        return self.__model

    @property
    def epoch_losses(self):
        """
        Returns
        -------
        list of float
            Mean batch loss of every finished epoch.
        """
        return list(self.__epoch_losses)

    def __update(self, table, accumulator, ids, rows):
        touched, inverse = np.unique(ids, return_inverse=True)
        gradient = np.zeros((len(touched), table.shape[1]))
        np.add.at(gradient, inverse, rows)

        if self.__cfg.optimizer == OPTIMIZER_ADAGRAD:
            accumulator[touched] += gradient ** 2
            step = gradient / (np.sqrt(accumulator[touched]) + ADAGRAD_EPSILON)
        else:
            step = gradient
        table[touched] -= self.__cfg.learning_rate * step
        return touched

    def __step(self, positives, rng):
        cfg = self.__cfg
        model = self.__model
        positives, negatives = corrupt_batch(
            positives, model.num_entities, cfg.negatives_per_positive, rng
        )
        loss, gradients = compute_loss(
            model, self.__loss_kind, positives, negatives, cfg.margin, cfg.regularization
        )
        if not np.isfinite(loss):
            raise TrainingDivergedError(
                f"Training loss became {loss} ({self.__kind}, lr={cfg.learning_rate}, "
                f"optimizer={cfg.optimizer}); lower the learning rate"
            )

        touched = self.__update(
            model.entity_embeddings, self.__entity_accumulator,
            gradients.entity_ids, gradients.entity_rows
        )
        self.__update(
            model.relation_embeddings, self.__relation_accumulator,
            gradients.relation_ids, gradients.relation_rows
        )
        if isinstance(model, TransE):
            model.normalize_entities(touched)
        return loss

    def __run_batches(self, triples, batches, rng):
        return [self.__step(triples[batch], rng) for batch in batches]

    def fit(self):
        """Runs every epoch.

        Returns
        -------
        EmbeddingModel
            The trained model.

        Raises
        ------
        TrainingDivergedError
            If the loss becomes non finite.
        """
        cfg = self.__cfg
        triples = self.__kg.as_array()
        rng = np.random.default_rng(cfg.seed)
        logger.info(
            "Training %s on %d triples: %s", self.__kind, len(triples), cfg.as_dict()
        )

        for epoch in range(cfg.epochs):
            order = rng.permutation(len(triples))
            batches = [
                order[start:start + cfg.batch_size]
                for start in range(0, len(order), cfg.batch_size)
            ]
            if cfg.workers == 1:
                losses = self.__run_batches(triples, batches, rng)
            else:
                # workers update the shared tables without synchronization
                worker_rngs = [
                    np.random.default_rng([cfg.seed, epoch, worker])
                    for worker in range(cfg.workers)
                ]
                with concurrent.futures.ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                    futures = [
                        executor.submit(
                            self.__run_batches, triples, batches[worker::cfg.workers],
                            worker_rngs[worker]
                        )
                        for worker in range(cfg.workers)
                    ]
                    losses = [loss for future in futures for loss in future.result()]

            epoch_loss = float(np.mean(losses))
            self.__epoch_losses.append(epoch_loss)
            logger.info("Epoch %d/%d: loss %.6f", epoch + 1, cfg.epochs, epoch_loss)

        return self.__model


def train(kg, kind, cfg):
    """Trains a freshly initialized model.

    Parameters
    ----------
    kg : KnowledgeGraph
    kind : str
        'transe', 'distmult' or 'complex'.
    cfg : TrainConfig

    Returns
    -------
    EmbeddingModel
    """
    return Trainer(kg, kind, cfg).fit()
