"""Custom kg-rule-attack Exceptions.
"""


class KGRuleAttackException(Exception):
    """Generic KGRuleAttackException
    """


class TripleFileParseError(KGRuleAttackException):
    """Raised when a triple file can not be parsed.

    Parameters
    ----------
    path : str
        Path to the file being parsed.
    line_number : int or None
        1 based line number of the offending line, None if the problem is file wide.
    message : str
        What is wrong.
    """

    def __init__(self, path, line_number, message):
        self.path = path
        self.line_number = line_number
        if line_number is None:
            super().__init__(f"{path}: {message}")
        else:
            super().__init__(f"{path}:{line_number}: {message}")


class PlanViolationError(KGRuleAttackException):
    """Raised when a perturbation plan does not hold against a knowledge graph.

    Parameters
    ----------
    triple : tuple
        Offending triple, as surface forms.
    message : str
        What is wrong.
    """

    def __init__(self, triple, message):
        self.triple = triple
        super().__init__(f"{message}: {triple}")


class UnsupportedRuleError(KGRuleAttackException):
    """Raised when a rule body has no grounding in the knowledge graph.
    """


class VocabularyError(KGRuleAttackException):
    """Raised when symbols are not part of a knowledge graph vocabulary.

    Parameters
    ----------
    unknown : list of str
        The unknown symbols.
    message : str
        What is wrong.
    """

    def __init__(self, unknown, message='Unknown symbols'):
        self.unknown = sorted(unknown)
        super().__init__(f"{message}: {self.unknown}")


class TrainingDivergedError(KGRuleAttackException):
    """Raised when the training loss becomes non finite.
    """


class StageError(KGRuleAttackException):
    """Raised when a pipeline stage fails.

    Parameters
    ----------
    stage : str
        Name of the stage that failed.
    message : str
        What went wrong.
    """

    def __init__(self, stage, message):
        self.stage = stage
        super().__init__(f"Stage ({stage}) failed: {message}")
