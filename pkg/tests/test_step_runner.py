# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
import os
from contextlib import redirect_stdout
from io import StringIO

import yaml
from testfixtures import TempDirectory

from kg_rule_attack import StepRunner, WorkflowResult
from kg_rule_attack.config import Config
from kg_rule_attack.exceptions import KGRuleAttackException
from tests.helpers.base_test_case import BaseTestCase

SAMPLES = 'tests.helpers.sample_step_implementers'


def runner(temp_dir, values=None):
    return StepRunner(
        config={Config.CONFIG_KEY: values or {}},
        work_dir_path=os.path.join(temp_dir.path, 'working')
    )


class TestStepRunnerInit(BaseTestCase):
    def test_init_with_config_object(self):
        config = Config({Config.CONFIG_KEY: {'seed': 3}})

        step_runner = StepRunner(config)

        self.assertIs(step_runner.config, config)
        self.assertEqual(step_runner.work_dir_path, 'kgra-working')

    def test_init_with_dict_and_out(self):
        step_runner = StepRunner({Config.CONFIG_KEY: {'out': 'elsewhere'}})

        self.assertEqual(step_runner.work_dir_path, 'elsewhere')
        self.assertEqual(
            step_runner.results_file_path, os.path.join('elsewhere', 'kgra-results.yml')
        )
        self.assertEqual(
            step_runner.workflow_result_pickle_file_path,
            os.path.join('elsewhere', 'kgra-results.pkl')
        )
        self.assertEqual(
            step_runner.manifest_file_path, os.path.join('elsewhere', 'manifest.yml')
        )

    def test_init_invalid_config(self):
        with self.assertRaisesRegex(AssertionError, 'Unknown configuration keys'):
            StepRunner({Config.CONFIG_KEY: {'budget': 3}})


class TestStepRunnerDefaultImplementers(BaseTestCase):
    def test_mine(self):
        self.assertEqual(
            StepRunner({Config.CONFIG_KEY: {}}).default_implementer_name('mine'),
            'PathSampling'
        )
        with TempDirectory() as temp_dir:
            temp_dir.write('rules.jsonl', b'')
            step_runner = StepRunner({Config.CONFIG_KEY: {
                'rules-file': os.path.join(temp_dir.path, 'rules.jsonl')
            }})

            self.assertEqual(step_runner.default_implementer_name('mine'), 'RuleFile')

    def test_attack_follows_attacker(self):
        self.assertEqual(
            StepRunner({Config.CONFIG_KEY: {}}).default_implementer_name('attack'),
            'RulesDelete'
        )
        self.assertEqual(
            StepRunner({Config.CONFIG_KEY: {'attacker': 'cos-add'}})
            .default_implementer_name('attack'),
            'CosAdd'
        )

    def test_attack_unknown_attacker(self):
        config = Config({Config.CONFIG_KEY: {}})
        config.set_overrides({'attacker': 'bogus'})

        with self.assertRaisesRegex(KGRuleAttackException, r'Attacker \(bogus\) must be one of'):
            StepRunner(config).default_implementer_name('attack')

    def test_other_steps(self):
        step_runner = StepRunner({Config.CONFIG_KEY: {}})

        self.assertEqual(step_runner.default_implementer_name('train'), 'KGE')
        self.assertEqual(step_runner.default_implementer_name('eval'), 'LinkPrediction')
        self.assertEqual(step_runner.default_implementer_name('pipeline'), 'AttackPipeline')
        self.assertEqual(step_runner.default_implementer_name('report'), 'ExperimentReport')

    def test_unknown_step(self):
        with self.assertRaisesRegex(KGRuleAttackException, r'Unknown step \(deploy\)'):
            StepRunner({Config.CONFIG_KEY: {}}).default_implementer_name('deploy')


class TestStepRunnerRunStep(BaseTestCase):
    def test_run_step_writes_results(self):
        with TempDirectory() as temp_dir:
            step_runner = runner(temp_dir, {'seed': 11})

            with redirect_stdout(StringIO()):
                success = step_runner.run_step('train', f"{SAMPLES}.FooStepImplementer")

            self.assertTrue(success)
            with open(step_runner.results_file_path, 'r', encoding='utf-8') as results_file:
                results = yaml.safe_load(results_file)
            self.assertTrue(os.path.isfile(step_runner.manifest_file_path))
            workflow_result = WorkflowResult.load_from_pickle_file(
                step_runner.workflow_result_pickle_file_path
            )

        self.assertEqual(
            results,
            {'kgra-results': {'train': {
                'implementer': 'FooStepImplementer',
                'success': True,
                'message': '',
                'artifacts': [{'name': 'seed', 'value': 11, 'description': ''}]
            }}}
        )
        self.assertEqual(workflow_result.get_artifact_value('seed', step_name='train'), 11)

    def test_run_step_failure(self):
        with TempDirectory() as temp_dir:
            with redirect_stdout(StringIO()):
                success = runner(temp_dir).run_step('eval', f"{SAMPLES}.FailStepImplementer")

        self.assertFalse(success)

    def test_results_carry_over_between_runners(self):
        with TempDirectory() as temp_dir:
            with redirect_stdout(StringIO()):
                runner(temp_dir, {'seed': 5}).run_step('train', f"{SAMPLES}.FooStepImplementer")
                second = runner(temp_dir)
                second.run_step('eval', f"{SAMPLES}.FailStepImplementer")

            workflow_result = second.workflow_result

        self.assertEqual(
            [step_result.step_name for step_result in workflow_result.workflow_list],
            ['train', 'eval']
        )

    def test_implementer_does_not_exist(self):
        with TempDirectory() as temp_dir:
            with self.assertRaisesRegex(
                KGRuleAttackException,
                r'Could not dynamically load step \(train\) step implementer \(Missing\) '
                r'from module \(kg_rule_attack.step_implementers.train\)'
            ):
                runner(temp_dir).run_step('train', 'Missing')

    def test_implementer_is_not_a_step_implementer(self):
        with TempDirectory() as temp_dir:
            with self.assertRaisesRegex(
                KGRuleAttackException,
                r'which is not a subclass of required parent class'
            ):
                runner(temp_dir).run_step('train', f"{SAMPLES}.NotAStepImplementer")
