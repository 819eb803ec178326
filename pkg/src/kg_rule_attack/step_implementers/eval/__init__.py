"""`StepImplementers` for the `eval` step.
"""

from kg_rule_attack.step_implementers.eval.link_prediction import LinkPrediction
