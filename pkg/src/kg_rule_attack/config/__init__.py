"""Experiment configuration.
"""

from kg_rule_attack.config.config_value import ConfigValue
from kg_rule_attack.config.experiment_config import (ATTACKERS, DEFAULTS, ExperimentConfig,
                                                     default_values, unknown_keys)
from kg_rule_attack.config.config import Config
