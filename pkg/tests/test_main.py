# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
import os
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from unittest.mock import patch

import yaml
from testfixtures import TempDirectory

from kg_rule_attack.__main__ import build_parser, main, runtime_overrides
from tests.helpers.base_test_case import BaseTestCase

SAMPLES = 'tests.helpers.sample_step_implementers'


class TestRuntimeOverrides(BaseTestCase):
    def test_flags_and_set(self):
        args = build_parser().parse_args([
            'attack', '--attacker', 'rules-add', '--gammas', '0.1', '0.2',
            '--zero-padded-pooling', '--set', 'train-config.dim=8', 'seed=4', '--seed', '2'
        ])

        self.assertEqual(args.step, 'attack')
        self.assertEqual(
            runtime_overrides(args),
            {
                'attacker': 'rules-add',
                'gammas': [0.1, 0.2],
                'zero-padded-pooling': True,
                'seed': 4,
                'train-config.dim': 8
            }
        )

    def test_set_parses_yaml_values(self):
        args = build_parser().parse_args(['train', '--set', 'models=[transe, complex]'])

        self.assertEqual(runtime_overrides(args), {'models': ['transe', 'complex']})


class TestMain(BaseTestCase):
    def run_main(self, argv, expected_exit_code=None):
        stdout = StringIO()
        stderr = StringIO()
        with redirect_stdout(stdout), redirect_stderr(stderr):
            if expected_exit_code is None:
                self.assertEqual(main(argv), 0)
            else:
                with self.assertRaises(SystemExit) as context:
                    main(argv)
                self.assertEqual(context.exception.code, expected_exit_code)
        return stdout.getvalue(), stderr.getvalue()

    def test_no_step(self):
        self.run_main([], expected_exit_code=2)

    def test_unknown_step(self):
        self.run_main(['deploy'], expected_exit_code=2)

    def test_bad_set_item(self):
        self.run_main(['train', '--set', 'seed'], expected_exit_code=2)

    def test_missing_config_file(self):
        with TempDirectory() as temp_dir:
            _, stderr = self.run_main(
                ['train', '-c', os.path.join(temp_dir.path, 'missing.yml')],
                expected_exit_code=101
            )

        self.assertIn('specified -c/--config must exist and not be empty', stderr)

    def test_empty_config_file(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('empty.yml', b'')

            self.run_main(
                ['train', '-c', os.path.join(temp_dir.path, 'empty.yml')],
                expected_exit_code=101
            )

    def test_invalid_config_file(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('config.yml', yaml.safe_dump({'other': {'seed': 1}}).encode())

            _, stderr = self.run_main(
                ['train', '-c', os.path.join(temp_dir.path, 'config.yml')],
                expected_exit_code=102
            )

        self.assertIn('specified -c/--config is invalid configuration', stderr)

    def test_invalid_override(self):
        self.run_main(['train', '--set', 'budget=3'], expected_exit_code=102)

    def test_out_of_range_value(self):
        _, stderr = self.run_main(['attack', '--gammas', '1.5'], expected_exit_code=102)

        self.assertIn('Perturbation ratio (1.5) must be in (0, 1)', stderr)

    def test_successful_step(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('config.yml', yaml.safe_dump({
                'kg-rule-attack-config': {'seed': 9}
            }).encode())
            out = os.path.join(temp_dir.path, 'out')

            stdout, _ = self.run_main([
                'train',
                '-c', os.path.join(temp_dir.path, 'config.yml'),
                '--out', out,
                '--implementer', f"{SAMPLES}.FooStepImplementer"
            ])

            with open(os.path.join(out, 'kgra-results.yml'), 'r', encoding='utf-8') as results:
                artifacts = yaml.safe_load(results)['kgra-results']['train']['artifacts']

        self.assertIn('foo ran', stdout)
        self.assertEqual(artifacts, [{'name': 'seed', 'value': 9, 'description': ''}])

    def test_unsuccessful_step(self):
        with TempDirectory() as temp_dir:
            _, stderr = self.run_main([
                'eval',
                '--out', os.path.join(temp_dir.path, 'out'),
                '--implementer', f"{SAMPLES}.FailStepImplementer"
            ], expected_exit_code=200)

        self.assertIn('Step eval not successful', stderr)

    @patch('kg_rule_attack.__main__.StepRunner')
    def test_step_exception(self, step_runner_mock):
        step_runner_mock.return_value.run_step.side_effect = RuntimeError('boom')

        _, stderr = self.run_main(['mine'], expected_exit_code=300)

        self.assertIn('Fatal error calling step (mine): boom', stderr)
