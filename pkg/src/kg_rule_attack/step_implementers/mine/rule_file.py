"""`StepImplementer` for the `mine` step reading externally mined rules.

Rules without a confidence are scored against the training graph; rules whose body has no
grounding are dropped.

Step Configuration
------------------
Step configuration expected as input to this step.
Could come from:

  * static configuration
  * runtime configuration

Configuration Key | Required? | Default | Description
------------------|-----------|---------|-----------
`train`           | Yes       |         | Training triple file.
`rules-file`      | Yes       |         | Rule file, JSON lines.
`miner`           | No        |         | Only `max-frontier` is used, to bound grounding.

Result Artifacts
----------------
Same as `PathSampling`; `rules-file` is the scored copy in the working folder.
"""

from kg_rule_attack.harness.pipeline import score_rules
from kg_rule_attack.rules.rule_file import load_rules
from kg_rule_attack.step_implementers.shared.rules_generic import RulesGeneric

DEFAULT_CONFIG = {}

REQUIRED_CONFIG_OR_PREVIOUS_STEP_RESULT_ARTIFACT_KEYS = [
    'train',
    'rules-file'
]


class RuleFile(RulesGeneric):
    """`StepImplementer` for the `mine` step loading a rule file.
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

    def _obtain_rules(self, cfg, train_kg):
        return score_rules(
            train_kg,
            load_rules(self.get_value('rules-file'), train_kg),
            cfg.miner_config().max_frontier
        )
