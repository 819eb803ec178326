"""Dispatch from attacker names to perturbation planners.
"""

import logging

from kg_rule_attack.attacks.addition import correlation_table, plan_addition
from kg_rule_attack.attacks.baselines import (cos_attack, random_addition, random_deletion,
                                              sample_pseudo_targets)
from kg_rule_attack.attacks.deletion import influence_scores, plan_deletion
from kg_rule_attack.config.experiment_config import (ATTACKER_COS_ADD, ATTACKER_COS_DELETE,
                                                     ATTACKER_NONE, ATTACKER_RANDOM_ADD,
                                                     ATTACKER_RANDOM_DELETE,
                                                     ATTACKER_RULES_ADD,
                                                     ATTACKER_RULES_DELETE)
from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kg.perturbation import budget_for_ratio
from kg_rule_attack.rules.rule import SELECT_HIGHEST, SELECT_LOWEST, select_rules

logger = logging.getLogger(__name__)

RULE_ATTACKERS = (ATTACKER_RULES_DELETE, ATTACKER_RULES_ADD)
COSINE_ATTACKERS = (ATTACKER_COS_DELETE, ATTACKER_COS_ADD)


class AttackPlanner:
    """Plans the perturbations of one attacker over a ratio sweep.

    Influence, correlation and pseudo target computations do not depend on the ratio and
    are done once.

    Parameters
    ----------
    cfg : ExperimentConfig
    kg : KnowledgeGraph
        Clean training graph.
    ruleset : RuleSet, optional
        Mined rules with confidences, needed by the rule based attackers.
    surrogate : EmbeddingModel, optional
        Model trained on the clean graph, needed by the cosine attackers.
    """

    def __init__(self, cfg, kg, ruleset=None, surrogate=None):
        self.__cfg = cfg
        self.__kg = kg
        self.__ruleset = ruleset
        self.__surrogate = surrogate
        self.__influence = None
        self.__correlation = None
        self.__targets = None

    @property
    def attacker(self):
        """
        Returns
        -------
        str
        """
        return self.__cfg.attacker

    def deletion_rules(self):
        """
        Returns
        -------
        RuleSet
            The m most confident rules of every head.
        """
        return select_rules(self.__require_rules(), self.__cfg.m, SELECT_HIGHEST)

    def addition_rules(self):
        """
        Returns
        -------
        RuleSet
            The n least confident rules of every head.
        """
        return select_rules(self.__require_rules(), self.__cfg.n, SELECT_LOWEST)

    def __require_rules(self):
        if self.__ruleset is None or len(self.__ruleset) == 0:
            raise KGRuleAttackException(f"Attacker ({self.attacker}) needs a nonempty rule set")
        return self.__ruleset

    def plan(self, gamma):
        """Plans the perturbation for one ratio.

        Parameters
        ----------
        gamma : float
            Perturbation ratio in (0, 1).

        Returns
        -------
        PerturbationPlan or None
            None for the `none` attacker.

        Raises
        ------
        KGRuleAttackException
            If the attacker lacks its rules or its surrogate model.
        """
        cfg = self.__cfg
        kg = self.__kg
        attacker = cfg.attacker
        if attacker == ATTACKER_NONE:
            return None

        budget = budget_for_ratio(kg, gamma)
        logger.info("Planning %s at ratio %s: budget %d", attacker, gamma, budget)

        if attacker == ATTACKER_RULES_DELETE:
            if self.__influence is None:
                self.__influence = influence_scores(
                    kg, self.deletion_rules(), cfg.pool, cfg.zero_padded_pooling, cfg.workers
                )
            return plan_deletion(
                kg, None, budget, pool=cfg.pool, seed=cfg.seed,
                zero_padded=cfg.zero_padded_pooling, ratio=gamma, workers=cfg.workers,
                table=self.__influence
            )
        if attacker == ATTACKER_RULES_ADD:
            if self.__correlation is None:
                self.__correlation = correlation_table(kg)
            return plan_addition(
                kg, self.addition_rules(), budget, seed=cfg.seed, strategy=cfg.rewriting,
                ratio=gamma, workers=cfg.workers, table=self.__correlation
            )
        if attacker == ATTACKER_RANDOM_DELETE:
            return random_deletion(kg, budget, seed=cfg.seed, ratio=gamma)
        if attacker == ATTACKER_RANDOM_ADD:
            return random_addition(kg, budget, seed=cfg.seed, ratio=gamma)

        if self.__surrogate is None:
            raise KGRuleAttackException(f"Attacker ({attacker}) needs a surrogate model")
        if self.__targets is None:
            self.__targets = sample_pseudo_targets(kg, cfg.pseudo_target_fraction, cfg.seed)
        mode = 'delete' if attacker == ATTACKER_COS_DELETE else 'add'
        return cos_attack(
            kg, self.__surrogate, self.__targets, budget, mode, seed=cfg.seed, ratio=gamma,
            workers=cfg.workers
        )
