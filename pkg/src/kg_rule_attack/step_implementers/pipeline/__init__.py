"""`StepImplementers` for the `pipeline` step.
"""

from kg_rule_attack.step_implementers.pipeline.attack_pipeline import AttackPipeline
