"""Model checkpoints as numpy .npz containers.

A checkpoint holds the model kind, dimension, model settings, the fingerprints of the
vocabularies it was trained on and both embedding tables.
"""

import numpy as np

from kg_rule_attack.exceptions import VocabularyError
from kg_rule_attack.kge.models import model_class
from kg_rule_attack.utils.file import create_parent_dir


def save_model(model, kg, path):
    """Writes a checkpoint.

    Parameters
    ----------
    model : EmbeddingModel
    kg : KnowledgeGraph
        Graph the model was trained on.
    path : str
        Destination, should end in '.npz'.

    Returns
    -------
    str
        The given path.
    """
    create_parent_dir(path)
    parameters = {f"param_{key}": np.asarray(value) for key, value in model.parameters().items()}
    with open(path, 'wb') as checkpoint_file:
        np.savez(
            checkpoint_file,
            kind=np.asarray(model.kind),
            dim=np.asarray(model.dim),
            entity_fingerprint=np.asarray(kg.entities.fingerprint()),
            relation_fingerprint=np.asarray(kg.relations.fingerprint()),
            entity_embeddings=model.entity_embeddings,
            relation_embeddings=model.relation_embeddings,
            **parameters
        )
    return path


def load_model(path, kg):
    """Reads a checkpoint for a graph.

    Raises
    ------
    VocabularyError
        If the checkpoint was trained over other vocabularies.
    """
    with np.load(path, allow_pickle=False) as checkpoint:
        mismatched = [
            name for name, fingerprint in (
                ('entity', kg.entities.fingerprint()),
                ('relation', kg.relations.fingerprint())
            )
            if str(checkpoint[f"{name}_fingerprint"]) != fingerprint
        ]
        if mismatched:
            raise VocabularyError(
                mismatched, f"Checkpoint ({path}) does not match the graph vocabularies"
            )

        parameters = {
            key[len('param_'):]: str(checkpoint[key])
            for key in checkpoint.files if key.startswith('param_')
        }
        cls = model_class(str(checkpoint['kind']))
        return cls(
            np.array(checkpoint['entity_embeddings']),
            np.array(checkpoint['relation_embeddings']),
            int(checkpoint['dim']),
            **parameters
        )
