# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
import os

from testfixtures import TempDirectory
from tests.helpers.base_step_implementer_test_case import \
    BaseStepImplementerTestCase
from tests.helpers.kg_fixtures import TOY_TRIPLES, toy_kg, write_toy_splits

from kg_rule_attack.kg.knowledge_graph import load_tsv
from kg_rule_attack.kg.perturbation import load_plan
from kg_rule_attack.step_implementers.attack import RulesDelete

RULES_JSONL = (
    b'{"head": "bornIn", "body": ["bornIn", "locatedIn"], "confidence": 0.5}\n'
    b'{"head": "bornIn", "body": ["studyIn"], "confidence": 0.8}\n'
    b'{"head": "studyIn", "body": ["bornIn"], "confidence": 0.25}\n'
)


class TestStepImplementerRulesDelete(BaseStepImplementerTestCase):
    def create_step_implementer(
            self,
            step_config={},
            workflow_result=None,
            parent_work_dir_path=''
    ):
        return self.create_given_step_implementer(
            step_implementer=RulesDelete,
            step_config=step_config,
            step_name='attack',
            workflow_result=workflow_result,
            parent_work_dir_path=parent_work_dir_path
        )

    def test_step_implementer_config_defaults(self):
        self.assertEqual(
            RulesDelete.step_implementer_config_defaults(),
            {
                'gammas': [0.1],
                'm': 50,
                'pool': 'mean',
                'zero-padded-pooling': False,
                'seed': 0
            }
        )

    def test__required_config_or_result_keys(self):
        self.assertEqual(
            RulesDelete._required_config_or_result_keys(),
            ['train', 'rules-file', 'gammas', 'm', 'pool', 'seed']
        )

    def test_run_step_with_rules_from_previous_step(self):
        with TempDirectory() as temp_dir:
            parent_work_dir_path = os.path.join(temp_dir.path, 'working')
            train_path, _, _ = write_toy_splits(temp_dir.path)
            temp_dir.write('rules.jsonl', RULES_JSONL)
            workflow_result = self.setup_previous_result(
                parent_work_dir_path,
                {'rules-file': {'value': os.path.join(temp_dir.path, 'rules.jsonl')}},
                step_name='mine',
                implementer_name='RuleFile'
            )

            step_implementer = self.create_step_implementer(
                step_config={'train': train_path, 'gammas': [0.3, 0.5]},
                workflow_result=workflow_result,
                parent_work_dir_path=parent_work_dir_path
            )

            result = step_implementer._run_step()

            self.assertTrue(result.success)
            self.assertEqual(result.get_artifact_value('attacker'), 'rules-delete')
            self.assertEqual(result.get_artifact_value('budgets'), {'0.3': 2, '0.5': 3})

            plans = result.get_artifact_value('plans')
            self.assertEqual(
                plans['0.3'],
                os.path.join(parent_work_dir_path, 'attack', 'plans', 'rules-delete-0.3.tsv')
            )
            kg = toy_kg()
            plan = load_plan(plans['0.5'], kg)
            self.assertEqual((plan.mode, len(plan)), ('delete', 3))
            plan.validate(kg)

            graphs = result.get_artifact_value('perturbed-graphs')
            self.assertEqual(len(load_tsv(graphs['0.3'])), len(TOY_TRIPLES) - 2)
            self.assertEqual(sorted(result.get_artifact_value('rule-impact')), ['0.3', '0.5'])
            self.assertEqual(
                sorted(result.get_artifact_value('rule-fingerprints')),
                ['rules', 'rules-bottom-n', 'rules-top-m']
            )

    def test_run_step_missing_rules(self):
        with TempDirectory() as temp_dir:
            train_path, _, _ = write_toy_splits(temp_dir.path)
            step_implementer = self.create_step_implementer(
                step_config={'train': train_path},
                parent_work_dir_path=os.path.join(temp_dir.path, 'working')
            )

            result = step_implementer.run_step()

        self.assertFalse(result.success)
        self.assertRegex(result.message, r"\['rules-file'\]")
