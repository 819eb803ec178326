"""Defines a StepResult object which represents the results of a invocation
of a StepImplementer#run.
"""
from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.results.step_result_artifact import StepResultArtifact


class StepResult:
    """The results of a StepImplementer run.

    Parameters
    ----------
    step_name : str
        Name of the step, e.g. `attack`.
    implementer_name : str
        Name of the StepImplementer that ran, e.g. `RulesDelete`.
    """

    def __init__(self, step_name, implementer_name):
        self.__step_name = step_name
        self.__implementer_name = implementer_name
        self.__success = True
        self.__message = ''
        self.__artifacts = {}

    @classmethod
    def from_step_implementer(cls, step_implementer):
        """
        Returns
        ------
        StepResult
            Empty, successful result for the given StepImplementer.
        """
        return cls(
            step_name=step_implementer.step_name,
            implementer_name=step_implementer.implementer_name
        )

    @property
    def step_name(self):
        """
        Returns
        -------
        str
        """
        return self.__step_name

    @property
    def implementer_name(self):
        """
        Returns
        -------
        str
        """
        return self.__implementer_name

    @property
    def artifacts(self):
        """
        Returns
        -------
        dict of str: StepResultArtifact
            Key is artifact name, value is StepResultArtifact.
        """
        return self.__artifacts

    @property
    def artifacts_dicts(self):
        """
        Returns
        -------
        list of dict
            Each item in list a dict representation of the StepResultArtifact.
        """
        return [artifact.as_dict() for artifact in self.artifacts.values()]

    def get_artifact(self, name):
        """
        Returns
        -------
        StepResultArtifact or None
        """
        return self.__artifacts.get(name)

    def get_artifact_value(self, name):
        """
        Returns
        -------
        object or None
            The value of the named artifact.
        """
        artifact = self.__artifacts.get(name)
        return artifact.value if artifact is not None else None

    def add_artifact(self, name, value, description='', is_file=False):
        """Add an artifact to this StepResult.

        Parameters
        ----------
        name : str
            Name of the result artifact.
        value : object
            Value of the artifact.
        description : str, optional
            Human readable description of the result artifact (defaults to empty).
        is_file : bool, optional
            True if the value is a file path, or a dict of file paths.

        Raises
        ------
        KGRuleAttackException
            If the name or the value is empty.
        """
        if not name:
            raise KGRuleAttackException('Name is required to add artifact')

        # False and 0 can be the value
        if value == '' or value is None:
            raise KGRuleAttackException('Value is required to add artifact')

        self.__artifacts[name] = StepResultArtifact(
            name=name,
            value=value,
            description=description,
            is_file=is_file
        )

    @property
    def success(self):
        """
        Returns
        -------
        bool
        """
        return self.__success

    @success.setter
    def success(self, success=True):
        self.__success = success

    @property
    def message(self):
        """
        Returns
        -------
        str
            Message or error message.
        """
        return self.__message

    @message.setter
    def message(self, message):
        self.__message = message

    def get_step_result_dict(self):
        """
        Returns
        -------
        dict
            Results with all step result components.
            For example:
            {
                'attack': {
                    'implementer': 'RulesDelete',
                    'success': True,
                    'message': '',
                    'artifacts': [{'name': 'plans', 'value': {...}, 'description': ''}]
                }
            }
        """
        return {
            self.step_name: {
                'implementer': self.implementer_name,
                'success': self.success,
                'message': self.message,
                'artifacts': self.artifacts_dicts
            }
        }

    def __str__(self):
        return str({
            'step-name': self.step_name,
            'implementer': self.implementer_name,
            'success': self.success,
            'message': self.message,
            'artifacts': self.artifacts_dicts
        })

    def __repr__(self):
        return "StepResult(" \
            f"step_name={self.step_name}," \
            f"implementer_name={self.implementer_name}," \
            f"success={self.success}," \
            f"message={self.message}," \
            f"artifacts={self.artifacts_dicts}" \
            ")"

    def __eq__(self, other):
        return (
            isinstance(other, StepResult) and
            self.step_name == other.step_name and
            self.implementer_name == other.implementer_name and
            self.success == other.success and
            self.message == other.message and
            self.artifacts == other.artifacts
        )

    def __ne__(self, other):
        return not self.__eq__(other)
