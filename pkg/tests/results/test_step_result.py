# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
from unittest.mock import MagicMock

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.results import StepResult, StepResultArtifact
from tests.helpers.base_test_case import BaseTestCase


class TestStepResult(BaseTestCase):
    def test_new_result_is_successful_and_empty(self):
        step_result = StepResult('attack', 'RulesDelete')

        self.assertEqual(step_result.step_name, 'attack')
        self.assertEqual(step_result.implementer_name, 'RulesDelete')
        self.assertTrue(step_result.success)
        self.assertEqual(step_result.message, '')
        self.assertEqual(step_result.artifacts, {})

    def test_from_step_implementer(self):
        step_implementer = MagicMock()
        step_implementer.step_name = 'train'
        step_implementer.implementer_name = 'KGE'

        step_result = StepResult.from_step_implementer(step_implementer)

        self.assertEqual(step_result, StepResult('train', 'KGE'))

    def test_add_artifact(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.add_artifact('budget', 7, 'triples to perturb')

        self.assertEqual(
            step_result.get_artifact('budget'),
            StepResultArtifact('budget', 7, 'triples to perturb')
        )
        self.assertEqual(step_result.get_artifact_value('budget'), 7)

    def test_add_artifact_falsy_values(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.add_artifact('zero', 0)
        step_result.add_artifact('no', False)

        self.assertEqual(step_result.get_artifact_value('zero'), 0)
        self.assertIs(step_result.get_artifact_value('no'), False)

    def test_add_artifact_replaces_same_name(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.add_artifact('budget', 7)
        step_result.add_artifact('budget', 8)

        self.assertEqual(step_result.get_artifact_value('budget'), 8)
        self.assertEqual(len(step_result.artifacts), 1)

    def test_add_artifact_missing_name(self):
        step_result = StepResult('attack', 'RulesDelete')

        with self.assertRaisesRegex(KGRuleAttackException, 'Name is required to add artifact'):
            step_result.add_artifact('', 'value')

    def test_add_artifact_missing_value(self):
        step_result = StepResult('attack', 'RulesDelete')

        with self.assertRaisesRegex(KGRuleAttackException, 'Value is required to add artifact'):
            step_result.add_artifact('name', '')
        with self.assertRaisesRegex(KGRuleAttackException, 'Value is required to add artifact'):
            step_result.add_artifact('name', None)

    def test_missing_artifact(self):
        step_result = StepResult('attack', 'RulesDelete')

        self.assertIsNone(step_result.get_artifact('nope'))
        self.assertIsNone(step_result.get_artifact_value('nope'))

    def test_success_and_message(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.success = False
        step_result.message = 'planned failure'

        self.assertFalse(step_result.success)
        self.assertEqual(step_result.message, 'planned failure')

    def test_get_step_result_dict(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.add_artifact('budget', 7, 'triples to perturb')
        step_result.add_artifact('plan', '/out/plan.tsv', is_file=True)

        self.assertEqual(
            step_result.get_step_result_dict(),
            {
                'attack': {
                    'implementer': 'RulesDelete',
                    'success': True,
                    'message': '',
                    'artifacts': [
                        {'name': 'budget', 'value': 7, 'description': 'triples to perturb'},
                        {'name': 'plan', 'value': '/out/plan.tsv', 'description': ''}
                    ]
                }
            }
        )

    def test_str_and_repr(self):
        step_result = StepResult('attack', 'RulesDelete')
        step_result.add_artifact('budget', 7)

        self.assertEqual(
            str(step_result),
            str({
                'step-name': 'attack',
                'implementer': 'RulesDelete',
                'success': True,
                'message': '',
                'artifacts': [{'name': 'budget', 'value': 7, 'description': ''}]
            })
        )
        self.assertEqual(
            repr(step_result),
            "StepResult(step_name=attack,implementer_name=RulesDelete,success=True,"
            "message=,artifacts=[{'name': 'budget', 'value': 7, 'description': ''}])"
        )

    def test_equality(self):
        first = StepResult('attack', 'RulesDelete')
        second = StepResult('attack', 'RulesDelete')
        self.assertEqual(first, second)

        second.add_artifact('budget', 7)
        self.assertNotEqual(first, second)

        first.add_artifact('budget', 7)
        first.success = False
        self.assertNotEqual(first, second)
        self.assertNotEqual(first, 'attack')
