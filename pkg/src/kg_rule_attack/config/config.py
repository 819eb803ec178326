"""Representation of the configuration of an experiment.
"""

import copy
import glob
import os.path

from kg_rule_attack.config.config_value import ConfigValue
from kg_rule_attack.config.experiment_config import ExperimentConfig, unknown_keys
from kg_rule_attack.utils.dict import deep_merge
from kg_rule_attack.utils.file import parse_yaml_or_json_file

RUNTIME_OVERRIDES_SOURCE = 'runtime overrides'


def nest_dotted_keys(values):
    """Turns `{'train-config.dim': 8}` into `{'train-config': {'dim': 8}}`.

    Parameters
    ----------
    values : dict
        Keys may be dotted paths; values may already be nested dicts.

    Returns
    -------
    dict

    Raises
    ------
    ValueError
        If two keys set the same leaf to different values.
    """
    nested = {}
    for key, value in values.items():
        parts = str(key).split('.')
        branch = value
        for part in reversed(parts[1:]):
            branch = {part: branch}
        deep_merge(nested, {parts[0]: branch})
    return nested


class Config:
    """Configuration merged from files, dictionaries and runtime overrides.

    Parameters
    ----------
    config : dict, list, str (file or directory), optional
        A dictionary that is a valid configuration,
        or a string that is a path to a YAML or JSON file that is
        a valid configuration,
        or a string that is a path to a directory containing one or more
        files that are valid YAML or JSON files that are valid
        configurations,
        or a list of any of the former.

    Raises
    ------
    ValueError
        If given config is not of expected type, or sources conflict.
    AssertionError
        If given config contains any invalid configurations.
    """
    CONFIG_KEY = 'kg-rule-attack-config'

    def __init__(self, config=None):
        self.__values = {}
        self.__overrides = {}
        self.__sources = []

        if config is not None:
            self.add_config(config)

    @property
    def values(self):
        """
        Returns
        -------
        dict
            Deep copy of the merged configuration, ConfigValue leaves.
        """
        return copy.deepcopy(self.__values)

    @property
    def overrides(self):
        """
        Returns
        -------
        dict
            Deep copy of the runtime overrides, ConfigValue leaves.
        """
        return copy.deepcopy(self.__overrides)

    @property
    def sources(self):
        """
        Returns
        -------
        list of str
            Configuration files added so far, in order.
        """
        return list(self.__sources)

    def add_config(self, config):
        """Parses, validates, and adds a given config to this Config.

        Parameters
        ----------
        config : dict, list, str (file or directory)

        Raises
        ------
        ValueError
            If given config is not of expected type or conflicts with earlier sources.
        AssertionError
            If given config contains any invalid configurations.
        """
        if isinstance(config, dict):
            self.__add_config_dict(config)
        elif isinstance(config, list):
            for _config in config:
                self.add_config(_config)
        elif isinstance(config, str):
            if os.path.isfile(config):
                self.__add_config_file(config)
            elif os.path.isdir(config):
                config_dir_files = sorted(glob.glob(config + '/**', recursive=True))
                found_nested_file = False
                for config_dir_file in config_dir_files:
                    if os.path.isfile(config_dir_file):
                        found_nested_file = True
                        self.__add_config_file(config_dir_file)

                if not found_nested_file:
                    raise ValueError(
                        f"Given config string ({config}) is a directory" +
                        " with no recursive children files."
                    )
            else:
                raise ValueError(
                    f"Given config string ({config}) is not a valid path."
                )
        else:
            raise ValueError(
                f"Given config ({config}) is unexpected type ({type(config)}) " +
                "not a dictionary, string, or list of former."
            )

    def set_overrides(self, overrides):
        """Sets the runtime overrides, replacing earlier ones.

        Parameters
        ----------
        overrides : dict
            Values keyed by dotted configuration keys, e.g. `train-config.dim`.

        Raises
        ------
        AssertionError
            If an override key is not a configuration key.
        """
        nested = nest_dotted_keys(overrides or {})
        unknown = unknown_keys(nested)
        assert not unknown, f"Unknown configuration keys in overrides: {unknown}"

        self.__overrides = ConfigValue.convert_leaves_to_config_values(
            values=nested,
            parent_source=RUNTIME_OVERRIDES_SOURCE
        )

    def get_config_value(self, key, defaults=None):
        """Value of a configuration key.

        Precedence, highest first: runtime overrides, configuration sources, defaults.

        Parameters
        ----------
        key : str
            Dotted configuration key.
        defaults : dict, optional
            Plain default values.

        Returns
        -------
        obj or None
            Plain value, None when no layer sets the key.
        """
        for layer in (self.__overrides, self.__values, defaults or {}):
            found, value = _lookup(layer, key)
            if found:
                return ConfigValue.convert_leaves_to_values(value)
        return None

    def get_config_value_source(self, key):
        """
        Returns
        -------
        ConfigValue or None
            The ConfigValue that sets a key, to report where a value came from.
        """
        for layer in (self.__overrides, self.__values):
            found, value = _lookup(layer, key)
            if found and isinstance(value, ConfigValue):
                return value
        return None

    def get_runtime_values(self, defaults=None):
        """Every configuration layer merged.

        Parameters
        ----------
        defaults : dict, optional
            Plain default values, lowest precedence.

        Returns
        -------
        dict
            Plain values.
        """
        runtime = copy.deepcopy(defaults or {})
        for layer in (self.__values, self.__overrides):
            deep_merge(
                runtime,
                ConfigValue.convert_leaves_to_values(layer),
                overwrite_duplicate_keys=True
            )
        return runtime

    def experiment_config(self):
        """
        Returns
        -------
        ExperimentConfig
            Validated settings of every layer.

        Raises
        ------
        AssertionError
            If a value is invalid.
        """
        return ExperimentConfig(self.get_runtime_values())

    def __add_config_file(self, config_file):
        try:
            parsed_config_file = parse_yaml_or_json_file(config_file)
        except ValueError as error:
            raise ValueError(
                f"Error parsing config file ({config_file}) as json or yaml"
            ) from error

        try:
            self.__add_config_dict(parsed_config_file, config_file)
        except AssertionError as error:
            raise AssertionError(
                f"Failed to add parsed configuration file ({config_file}): {error}"
            ) from error
        self.__sources.append(config_file)

    def __add_config_dict(self, config_dict, source_file_path=None):
        assert isinstance(config_dict, dict) and Config.CONFIG_KEY in config_dict, \
            "Failed to add invalid config. " + \
            f"Missing expected top level key ({Config.CONFIG_KEY}): " + \
            f"{config_dict}"

        section = config_dict[Config.CONFIG_KEY] or {}
        assert isinstance(section, dict), \
            f"Configuration under ({Config.CONFIG_KEY}) must be a dictionary: {section}"

        unknown = unknown_keys(section)
        assert not unknown, f"Unknown configuration keys: {unknown}"

        if source_file_path is not None:
            parent_source = source_file_path
        else:
            parent_source = copy.deepcopy(config_dict)

        config_values = ConfigValue.convert_leaves_to_config_values(
            values=copy.deepcopy(section),
            parent_source=parent_source
        )

        try:
            self.__values = deep_merge(copy.deepcopy(self.__values), config_values)
        except ValueError as error:
            raise ValueError(f"Error merging configuration: {error}") from error


def _lookup(values, key):
    node = values
    for part in key.split('.'):
        if not isinstance(node, dict) or part not in node:
            return False, None
        node = node[part]
    return True, node
