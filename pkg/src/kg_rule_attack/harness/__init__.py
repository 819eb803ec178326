"""Experiment orchestration: the attack sweep and its reports.
"""

from kg_rule_attack.harness.attackers import AttackPlanner
from kg_rule_attack.harness.pipeline import (Pipeline, dataset_fingerprints, load_splits,
                                             obtain_rules, run_name, run_pipeline,
                                             score_rules)
from kg_rule_attack.harness.report import (REPORT_FORMATS, audit_budgets, emit_report,
                                           report_rows)
