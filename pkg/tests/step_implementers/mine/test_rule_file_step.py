# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
import os

from testfixtures import TempDirectory
from tests.helpers.base_step_implementer_test_case import \
    BaseStepImplementerTestCase
from tests.helpers.kg_fixtures import toy_kg, write_toy_splits

from kg_rule_attack.rules.rule_file import load_rules
from kg_rule_attack.step_implementers.mine import RuleFile


class TestStepImplementerRuleFile(BaseStepImplementerTestCase):
    def create_step_implementer(
            self,
            step_config={},
            parent_work_dir_path=''
    ):
        return self.create_given_step_implementer(
            step_implementer=RuleFile,
            step_config=step_config,
            step_name='mine',
            parent_work_dir_path=parent_work_dir_path
        )

    def test_step_implementer_config_defaults(self):
        self.assertEqual(RuleFile.step_implementer_config_defaults(), {})

    def test__required_config_or_result_keys(self):
        self.assertEqual(RuleFile._required_config_or_result_keys(), ['train', 'rules-file'])

    def test_run_step_scores_and_drops_rules(self):
        with TempDirectory() as temp_dir:
            parent_work_dir_path = os.path.join(temp_dir.path, 'working')
            train_path, _, _ = write_toy_splits(temp_dir.path)
            temp_dir.write(
                'rules.jsonl',
                b'{"head": "bornIn", "body": ["studyIn"], "confidence": 0.9}\n'
                b'{"head": "studyIn", "body": ["bornIn"]}\n'
                b'{"head": "bornIn", "body": ["locatedIn", "bornIn"]}\n'
            )

            step_implementer = self.create_step_implementer(
                step_config={
                    'train': train_path,
                    'rules-file': os.path.join(temp_dir.path, 'rules.jsonl')
                },
                parent_work_dir_path=parent_work_dir_path
            )

            result = step_implementer._run_step()

            self.assertTrue(result.success)
            self.assertEqual(result.get_artifact_value('rule-count'), 2)
            self.assertEqual(result.get_artifact_value('uncovered-relations'), ['locatedIn'])
            ruleset = load_rules(result.get_artifact_value('rules-file'), toy_kg())

        self.assertEqual(sorted(rule.confidence for rule in ruleset), [0.25, 0.9])

    def test_run_step_no_usable_rules(self):
        with TempDirectory() as temp_dir:
            train_path, _, _ = write_toy_splits(temp_dir.path)
            temp_dir.write(
                'rules.jsonl',
                b'{"head": "bornIn", "body": ["locatedIn", "bornIn"]}\n'
            )

            step_implementer = self.create_step_implementer(
                step_config={
                    'train': train_path,
                    'rules-file': os.path.join(temp_dir.path, 'rules.jsonl')
                },
                parent_work_dir_path=os.path.join(temp_dir.path, 'working')
            )

            result = step_implementer._run_step()

        self.assertFalse(result.success)
        self.assertRegex(result.message, r'No rules with a confidence over the training graph')
        self.assertEqual(result.artifacts, {})
