"""Fact based knowledge graph embeddings: models, training, evaluation.
"""

from kg_rule_attack.kge.models import (COMPLEX, DISTMULT, MODEL_KINDS, TRANSE, ComplEx,
                                       DistMult, EmbeddingModel, TransE, init_model,
                                       model_class, score_triple)
from kg_rule_attack.kge.losses import (LOSS_MARGIN, LOSS_SOFTPLUS, compute_loss,
                                       dense_gradients, margin_ranking_loss, softplus_loss)
from kg_rule_attack.kge.training import (MODE_CONCURRENT, MODE_DETERMINISTIC, TrainConfig,
                                         Trainer, train)
from kg_rule_attack.kge.evaluation import (DEFAULT_HITS_AT, SETTING_FILTERED, SETTING_RAW,
                                           EvalReport, FilterIndex, evaluate, query_ranks,
                                           rank_from_scores, rank_query, select_highly_ranked)
from kg_rule_attack.kge.similarity import (relation_similarity_frame,
                                           relation_similarity_matrix, save_relation_similarity)
from kg_rule_attack.kge.checkpoint import load_model, save_model
