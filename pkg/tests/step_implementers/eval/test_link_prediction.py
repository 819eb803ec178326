# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring
import os

from testfixtures import TempDirectory
from tests.helpers.base_step_implementer_test_case import \
    BaseStepImplementerTestCase
from tests.helpers.kg_fixtures import TINY_TRAIN_CONFIG, toy_kg, write_toy_splits

from kg_rule_attack.attacks.baselines import random_deletion
from kg_rule_attack.kg.knowledge_graph import apply_plan, save_tsv
from kg_rule_attack.results import RunRecord, StepResult, WorkflowResult
from kg_rule_attack.step_implementers.eval import LinkPrediction
from kg_rule_attack.step_implementers.train import KGE


class TestStepImplementerLinkPrediction(BaseStepImplementerTestCase):
    def step_config(self, temp_dir, **values):
        train_path, valid_path, test_path = write_toy_splits(temp_dir.path)
        config = {
            'train': train_path,
            'valid': valid_path,
            'test': test_path,
            'gammas': [0.3],
            'train-config': dict(TINY_TRAIN_CONFIG)
        }
        config.update(values)
        return config

    def train_workflow(self, temp_dir, parent_work_dir_path, attacked):
        workflow_result = WorkflowResult()
        if attacked:
            kg = toy_kg()
            plan = random_deletion(kg, 2, seed=1, ratio=0.3)
            plan_path = os.path.join(temp_dir.path, 'plan.tsv')
            plan.save(kg, plan_path)
            graph_path = os.path.join(temp_dir.path, 'perturbed.tsv')
            save_tsv(apply_plan(kg, plan), graph_path)

            attack = StepResult('attack', 'RandomDelete')
            attack.add_artifact('attacker', 'random-delete')
            attack.add_artifact('plans', {'0.3': plan_path}, is_file=True)
            attack.add_artifact('perturbed-graphs', {'0.3': graph_path}, is_file=True)
            workflow_result.add_step_result(attack)

        train_step = self.create_given_step_implementer(
            step_implementer=KGE,
            step_config=self.step_config(temp_dir),
            step_name='train',
            workflow_result=workflow_result,
            parent_work_dir_path=parent_work_dir_path
        )
        workflow_result.add_step_result(train_step._run_step())
        return workflow_result

    def create_step_implementer(self, temp_dir, workflow_result, parent_work_dir_path):
        return self.create_given_step_implementer(
            step_implementer=LinkPrediction,
            step_config=self.step_config(temp_dir, **{'hits-at': [1, 10]}),
            step_name='eval',
            workflow_result=workflow_result,
            parent_work_dir_path=parent_work_dir_path
        )

    def test_step_implementer_config_defaults(self):
        self.assertEqual(
            LinkPrediction.step_implementer_config_defaults(),
            {'eval-setting': 'filtered', 'hits-at': [1, 3, 10], 'target-rank-threshold': 10}
        )

    def test__required_config_or_result_keys(self):
        self.assertEqual(
            LinkPrediction._required_config_or_result_keys(),
            ['train', 'test', 'eval-setting', 'hits-at', 'target-rank-threshold', 'checkpoints']
        )

    def test_run_step_attacked(self):
        with TempDirectory() as temp_dir:
            parent_work_dir_path = os.path.join(temp_dir.path, 'working')
            workflow_result = self.train_workflow(temp_dir, parent_work_dir_path, attacked=True)

            result = self.create_step_implementer(
                temp_dir, workflow_result, parent_work_dir_path
            )._run_step()

            reports = result.get_artifact_value('reports')
            self.assertEqual(sorted(reports['transe']), ['0.3', 'clean'])
            self.assertTrue(os.path.isfile(result.get_artifact_value('similarity')['transe']['0.3']))
            record = RunRecord.load(result.get_artifact_value('run-record'))

        cell, = record.cells
        self.assertEqual(cell.key, ('transe', 'random-delete', 0.3))
        self.assertEqual((cell.budget, cell.plan_size), (2, 2))
        self.assertEqual(cell.provenance, {'random': 2})
        self.assertEqual(sorted(cell.clean.hits), [1, 10])
        self.assertEqual(cell.clean.n_queries, 4)
        self.assertIn('train', record.fingerprints)

    def test_run_step_without_attack_reuses_clean_metrics(self):
        with TempDirectory() as temp_dir:
            parent_work_dir_path = os.path.join(temp_dir.path, 'working')
            workflow_result = self.train_workflow(temp_dir, parent_work_dir_path, attacked=False)

            result = self.create_step_implementer(
                temp_dir, workflow_result, parent_work_dir_path
            )._run_step()

            record = RunRecord.load(result.get_artifact_value('run-record'))

        cell, = record.cells
        self.assertEqual(cell.attacker, 'none')
        self.assertEqual(cell.attacked, cell.clean)
        self.assertEqual(cell.plan_size, 0)
        self.assertEqual(list(result.get_artifact_value('reports')['transe']), ['clean'])

    def test_run_step_missing_checkpoints(self):
        with TempDirectory() as temp_dir:
            parent_work_dir_path = os.path.join(temp_dir.path, 'working')

            result = self.create_step_implementer(
                temp_dir, WorkflowResult(), parent_work_dir_path
            ).run_step()

        self.assertFalse(result.success)
        self.assertRegex(result.message, r"\['checkpoints'\]")
