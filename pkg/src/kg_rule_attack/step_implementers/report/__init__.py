"""`StepImplementers` for the `report` step.
"""

from kg_rule_attack.step_implementers.report.experiment_report import ExperimentReport
