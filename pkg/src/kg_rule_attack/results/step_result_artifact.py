"""Defines a StepResultArtifact object which represents an artifact included in the StepResult
of a invocation of a StepImplementer#run.
"""


class StepResultArtifact:
    """An artifact included in the StepResult of a StepImplementer run.

    Parameters
    ----------
    name : str
        Name of the result artifact.
    value : object
        Value of the artifact: a plain value, a file path, or a dict of file paths.
    description : str, optional
        Human readable description of the result artifact (defaults to empty).
    is_file : bool, optional
        True if the value is a file path, or a dict whose leaves are file paths,
        written by the step. File artifacts are listed in the manifest with their hash.
    """

    def __init__(self, name, value, description='', is_file=False):
        self.__name = name
        self.__value = value
        self.__description = description
        self.__is_file = is_file

    @property
    def name(self):
        """
        Returns
        -------
        str
        """
        return self.__name

    @property
    def value(self):
        """
        Returns
        -------
        object
        """
        return self.__value

    @property
    def description(self):
        """
        Returns
        -------
        str
        """
        return self.__description

    @property
    def is_file(self):
        """
        Returns
        -------
        bool
        """
        return self.__is_file

    def file_paths(self):
        """Every file path of a file artifact.

        Returns
        -------
        list of (str, str)
            (key, path) pairs; key is the artifact name, dotted with the dict keys for
            dict values. Empty for non file artifacts.
        """
        if not self.__is_file:
            return []
        return sorted(_leaves(self.__name, self.__value))

    def as_dict(self):
        """Dictionary representation of this artifact.

        Returns
        -------
        dict
        """
        return {
            'name': self.name,
            'value': self.value,
            'description': self.description
        }

    def __str__(self):
        return str(self.as_dict())

    def __repr__(self):
        return "StepResultArtifact(" \
            f"name={self.name}," \
            f" value={self.value}," \
            f" description={self.description}," \
            f" is_file={self.is_file}" \
            ")"

    def __eq__(self, other):
        return (
            isinstance(other, StepResultArtifact) and
            self.name == other.name and
            self.value == other.value and
            self.description == other.description and
            self.is_file == other.is_file
        )

    def __ne__(self, other):
        return not self.__eq__(other)


def _leaves(key, value):
    if isinstance(value, dict):
        for child_key, child_value in value.items():
            yield from _leaves(f"{key}.{child_key}", child_value)
    elif value is not None:
        yield key, str(value)
