"""Abstract parent class for StepImplementers that produce a rule file.
"""

from abc import abstractmethod

from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.rules.miner import coverage_summary
from kg_rule_attack.rules.rule_file import save_rules
from kg_rule_attack.rules.statistics import confidence_distribution, save_confidence_distribution
from kg_rule_attack.step_implementer import StepImplementer


class RulesGeneric(StepImplementer):
    """Abstract parent class for StepImplementers that produce a rule file.

    Writes `rules.jsonl` and `confidence.csv` into the working folder of the step.
    """

    @abstractmethod
    def _obtain_rules(self, cfg, train_kg):
        """
        Returns
        -------
        RuleSet
            Rules over the training graph, every rule with a confidence.
        """

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)

        cfg = self.experiment_config(with_artifacts=False)
        train_kg, _, _ = self.load_graphs()
        ruleset = self._obtain_rules(cfg, train_kg)

        if len(ruleset) == 0:
            step_result.success = False
            step_result.message = f"No rules with a confidence over the training graph ({cfg.train})"
            return step_result

        uncovered = coverage_summary(ruleset, train_kg)
        print(f"{len(ruleset)} rules over {len(ruleset.heads())} head relations")
        if uncovered:
            print(f"Head relations without rules: {uncovered}")

        rules_path = save_rules(ruleset, train_kg.relations, self.working_path('rules.jsonl'))
        distribution_path = save_confidence_distribution(
            confidence_distribution(ruleset, train_kg.relations),
            self.working_path('confidence.csv')
        )

        step_result.add_artifact(
            name='rules-file',
            value=rules_path,
            description='Rules with confidences, JSON lines.',
            is_file=True
        )
        step_result.add_artifact(
            name='confidence-distribution',
            value=distribution_path,
            description='Confidences of the most confident rules of every head relation.',
            is_file=True
        )
        step_result.add_artifact(
            name='rules-fingerprint',
            value=ruleset.fingerprint()
        )
        step_result.add_artifact(
            name='rule-count',
            value=len(ruleset)
        )
        if uncovered:
            step_result.add_artifact(
                name='uncovered-relations',
                value=uncovered
            )
        return step_result
