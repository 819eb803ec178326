"""Abstract parent class for StepImplementers of the `attack` step.
"""

from kg_rule_attack.harness.attackers import COSINE_ATTACKERS, RULE_ATTACKERS, AttackPlanner
from kg_rule_attack.harness.pipeline import obtain_rules, run_name
from kg_rule_attack.kg.knowledge_graph import apply_plan, save_tsv
from kg_rule_attack.kg.perturbation import budget_for_ratio
from kg_rule_attack.kge.checkpoint import save_model
from kg_rule_attack.kge.models import TRANSE
from kg_rule_attack.kge.training import train
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.rules.miner import mine_rules
from kg_rule_attack.rules.statistics import confidence_distribution, save_confidence_distribution
from kg_rule_attack.step_implementer import StepImplementer, gamma_key


class AttackGeneric(StepImplementer):
    """Abstract parent class for StepImplementers of the `attack` step.

    Subclasses name their attacker in `ATTACKER`. For every ratio in `gammas` the plan
    is written to `plans/<attacker>-<gamma>.tsv` and the perturbed training graph to
    `graphs/<attacker>-<gamma>.tsv`.
    """

    ATTACKER = None

    def _run_step(self):  # pylint: disable=too-many-locals
        step_result = StepResult.from_step_implementer(self)

        cfg = self.experiment_config(overrides={'attacker': self.ATTACKER})
        train_kg, _, _ = self.load_graphs()

        ruleset = None
        if self.ATTACKER in RULE_ATTACKERS:
            ruleset = obtain_rules(cfg, train_kg)

        surrogate = None
        if self.ATTACKER in COSINE_ATTACKERS:
            surrogate = train(train_kg, TRANSE, cfg.train_config())
            step_result.add_artifact(
                name='surrogate-checkpoint',
                value=save_model(
                    surrogate, train_kg, self.working_path('surrogate', f"{TRANSE}.npz")
                ),
                description='TransE model of the clean graph the cosine attack ranks with.',
                is_file=True
            )

        planner = AttackPlanner(cfg, train_kg, ruleset, surrogate)

        plans = {}
        graphs = {}
        budgets = {}
        rule_impact = {}
        for gamma in cfg.gammas:
            key = gamma_key(gamma)
            name = run_name(self.ATTACKER, gamma)
            budgets[key] = budget_for_ratio(train_kg, gamma)

            plan = planner.plan(gamma)
            if plan is None:
                continue

            plans[key] = self.working_path('plans', f"{name}.tsv")
            plan.save(train_kg, plans[key])
            perturbed_kg = apply_plan(train_kg, plan)
            graphs[key] = self.working_path('graphs', f"{name}.tsv")
            save_tsv(perturbed_kg, graphs[key])
            print(
                f"{name}: {len(plan)} triples planned ({plan.fill_count} filled at random), "
                f"{len(perturbed_kg)} training triples after the attack"
            )

            if ruleset is not None:
                remined = mine_rules(perturbed_kg, cfg.miner_config())
                rule_impact[key] = save_confidence_distribution(
                    confidence_distribution(remined, train_kg.relations),
                    self.working_path('rule-impact', f"{name}.csv")
                )

        step_result.add_artifact(
            name='attacker',
            value=self.ATTACKER
        )
        step_result.add_artifact(
            name='budgets',
            value=budgets,
            description='floor(gamma * |T|) per perturbation ratio.'
        )
        if plans:
            step_result.add_artifact(
                name='plans',
                value=plans,
                description='Perturbation plan per perturbation ratio.',
                is_file=True
            )
            step_result.add_artifact(
                name='perturbed-graphs',
                value=graphs,
                description='Perturbed training graph per perturbation ratio.',
                is_file=True
            )
        if rule_impact:
            step_result.add_artifact(
                name='rule-impact',
                value=rule_impact,
                description='Confidence distribution re-mined on every perturbed graph.',
                is_file=True
            )
        if ruleset is not None:
            step_result.add_artifact(
                name='rule-fingerprints',
                value={
                    'rules': ruleset.fingerprint(),
                    'rules-top-m': planner.deletion_rules().fingerprint(),
                    'rules-bottom-n': planner.addition_rules().fingerprint()
                }
            )
        return step_result
