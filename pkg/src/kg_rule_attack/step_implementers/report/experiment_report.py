"""`StepImplementer` for the `report` step comparing clean and attacked metrics of every run
record produced by earlier `eval` and `pipeline` steps.

Budgets are audited first: every attacked run must have perturbed exactly
floor(gamma * \\|T\\|) triples.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * previous step results

Configuration Key | Required? | Default | Description
------------------|-----------|---------|-----------
`run-record`      | Yes       |         | Run record of the `eval` or `pipeline` step.

Result Artifacts
----------------
Results artifacts output by this step.

Result Artifact Key | Description
--------------------|------------
`report-json`       | Rows and columns as JSON.
`report-csv`        | One row per model, attacker, ratio and seed.
`report-markdown`   | Comparison table.
"""

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.harness.report import REPORT_EXTENSIONS, REPORT_FORMATS, emit_report
from kg_rule_attack.results.run_record import RunRecord
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.step_implementer import StepImplementer

DEFAULT_CONFIG = {}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'run-record'
]


class ExperimentReport(StepImplementer):
    """`StepImplementer` for the `report` step.
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

        record_paths = []
        for path in self.workflow_result.get_artifact_values('run-record'):
            if path not in record_paths:
                record_paths.append(path)
        records = [RunRecord.load(path) for path in record_paths]
        print(f"Reporting {len(records)} run records: {record_paths}")

        try:
            for report_format in REPORT_FORMATS:
                step_result.add_artifact(
                    name=f"report-{report_format}",
                    value=emit_report(
                        records,
                        report_format,
                        self.working_path(f"report.{REPORT_EXTENSIONS[report_format]}")
                    ),
                    is_file=True
                )
        except KGRuleAttackException as error:
            step_result.success = False
            step_result.message = str(error)

        return step_result
