"""Step results, the workflow result collecting them, and experiment run records.
"""

from kg_rule_attack.results.step_result_artifact import StepResultArtifact
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.results.workflow_result import WorkflowResult
from kg_rule_attack.results.run_record import RunCell, RunRecord
