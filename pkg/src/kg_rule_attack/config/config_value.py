"""Representation of a configuration value.
"""

import copy


class ConfigValue:
    """A configuration leaf together with where it was read from.

    Lists are leaves: `gammas: [0.05, 0.1]` is one ConfigValue holding a list, so a later
    source replaces a whole sweep rather than merging it element by element.

    Parameters
    ----------
    value : any
        The value of the configuration key.
    parent_source : str file path or dict, optional
        YAML or JSON file, or the dict, the value was found in.
    path_parts : list, optional
        Key path to the value below the top-level configuration key.
    """

    def __init__(self, value, parent_source=None, path_parts=None):
        self.__value = value
        self.__parent_source = parent_source
        self.__path_parts = list(path_parts) if path_parts is not None else []

    @property
    def value(self):
        """
        Returns
        -------
        obj
            Copy of the value.
        """
        return copy.deepcopy(self.__value)

    @property
    def path_parts(self):
        """
        Returns
        -------
        list
            Copy of the key path to the value.
        """
        return list(self.__path_parts)

    @property
    def key(self):
        """
        Returns
        -------
        str
            Dotted key path, e.g. `train-config.dim`.
        """
        return '.'.join(str(part) for part in self.__path_parts)

    @property
    def parent_source(self):
        """
        Returns
        -------
        str file path or dict
            Where this value came from.
        """
        return copy.deepcopy(self.__parent_source)

    @property
    def source_name(self):
        """
        Returns
        -------
        str
            The source file path, or a short description of a dict source.
        """
        if isinstance(self.__parent_source, str):
            return self.__parent_source
        if self.__parent_source is None:
            return '<defaults>'
        return '<dict>'

    def __eq__(self, other):
        return isinstance(other, ConfigValue) and self.__value == other.value

    def __hash__(self):
        return hash(repr(self.__value))

    def __repr__(self):
        return f"ConfigValue(value={self.__value!r}, value_path='{self.__path_parts}')"

    @staticmethod
    def convert_leaves_to_config_values(values, parent_source=None, path_parts=None):
        """In place recursively changes the leaves of a dictionary to ConfigValues.

        Parameters
        ----------
        values : dict, ConfigValue, None or obj
        parent_source : str file path or dict
        path_parts : list

        Returns
        -------
        dict, ConfigValue or None
            The given dict with leaves converted; None stays None; anything else,
            lists included, becomes a ConfigValue.
        """
        if path_parts is None:
            path_parts = []

        if isinstance(values, dict):
            for child_key in values:
                values[child_key] = ConfigValue.convert_leaves_to_config_values(
                    values=values[child_key],
                    parent_source=parent_source,
                    path_parts=path_parts + [child_key]
                )
            return values
        if values is None or isinstance(values, ConfigValue):
            return values
        return ConfigValue(value=values, parent_source=parent_source, path_parts=path_parts)

    @staticmethod
    def convert_leaves_to_values(values):
        """Recursively replaces ConfigValue leaves with their values.

        Parameters
        ----------
        values : dict, list, ConfigValue or obj

        Returns
        -------
        dict, list or obj
            A new structure; the given one is not modified.
        """
        if isinstance(values, dict):
            return {key: ConfigValue.convert_leaves_to_values(value) for key, value in values.items()}
        if isinstance(values, (list, tuple)):
            return [ConfigValue.convert_leaves_to_values(value) for value in values]
        if isinstance(values, ConfigValue):
            return values.value
        return values
