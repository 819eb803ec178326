"""`StepImplementer` for the `pipeline` step running the whole sweep in one go: load, mine
or load rules, clean training and evaluation, then plan, apply, retrain and evaluate for
every ratio.

Step Configuration
------------------
Every configuration key; see `kg_rule_attack.config.experiment_config`. `train` and `test`
are required.

Result Artifacts
----------------
Results artifacts output by this step, each a dict of file paths.

Result Artifact Key | Description
--------------------|------------
`rules`             | Rule file and its confidence distribution.
`rule-impact`       | Confidences re-mined on every perturbed graph.
`plans`             | Plan file per run.
`checkpoints`       | Checkpoint per model and run.
`reports`           | Evaluation report per model and run.
`similarity`        | Relation similarity matrix per model and run.
`run-record`        | The run record.
"""

from kg_rule_attack.exceptions import StageError
from kg_rule_attack.harness.pipeline import Pipeline
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.step_implementer import StepImplementer

DEFAULT_CONFIG = {}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'test'
]

ARTIFACT_DESCRIPTIONS = {
    'rules': 'Rule file and its confidence distribution.',
    'rule-impact': 'Confidences re-mined on every perturbed graph.',
    'plans': 'Plan file per run.',
    'checkpoints': 'Checkpoint per model and run.',
    'reports': 'Evaluation report per model and run.',
    'similarity': 'Relation similarity matrix per model and run.',
    'run-record': 'The run record.'
}


class AttackPipeline(StepImplementer):
    """`StepImplementer` for the `pipeline` step.
    """

    @staticmethod
    def step_implementer_config_defaults():
        """Getter for the StepImplementer's configuration defaults.

        Returns
        -------
        dict
            Default values to use for step configuration values.
        """
        return DEFAULT_CONFIG

    @staticmethod
    def _required_config_or_result_keys():
        """Getter for step configuration or previous step result artifacts that are required before
        running this step.

        Returns
        -------
        array_list
            Array of configuration keys or previous step result artifacts
            that are required before running the step.
        """
        return REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS

    def _run_step(self):
        step_result = StepResult.from_step_implementer(self)

        cfg = self.experiment_config(with_artifacts=False)
        pipeline = Pipeline(cfg, self.work_dir_path)
        try:
            record = pipeline.run()
            print(f"Recorded {len(record.cells)} runs")
        except StageError as error:
            step_result.success = False
            step_result.message = str(error)

        # partial artifacts of a failed run are kept
        for kind, paths in sorted(pipeline.artifacts.items()):
            value = paths['run-record'] if kind == 'run-record' else paths
            step_result.add_artifact(
                name=kind,
                value=value,
                description=ARTIFACT_DESCRIPTIONS.get(kind, ''),
                is_file=True
            )
        return step_result
