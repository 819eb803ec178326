"""Abstract class and helper constants for StepImplementer.
"""
import json
import os
import pprint
import sys
import textwrap
from abc import ABC, abstractmethod
from contextlib import redirect_stderr, redirect_stdout

from kg_rule_attack.config.config_value import ConfigValue
from kg_rule_attack.config.experiment_config import ExperimentConfig
from kg_rule_attack.kg.knowledge_graph import load_tsv
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.utils.io import TextIOIndenter


class DefaultSteps:  # pylint: disable=too-few-public-methods
    """Names of the steps the command line runs.
    """
    MINE = 'mine'
    ATTACK = 'attack'
    TRAIN = 'train'
    EVAL = 'eval'
    PIPELINE = 'pipeline'
    REPORT = 'report'

    ALL = (MINE, ATTACK, TRAIN, EVAL, PIPELINE, REPORT)


def gamma_key(gamma):
    """
    Returns
    -------
    str
        Ratio as used in artifact keys, e.g. `0.1`.
    """
    return f"{float(gamma):g}"


class StepImplementer(ABC):  # pylint: disable=too-many-instance-attributes
    """Abstract representation of a step implementer.

    Parameters
    ----------
    workflow_result : WorkflowResult
        The WorkflowResult holding the results of earlier steps.
    parent_work_dir_path : str
        Output directory; the step writes into a sub folder named after the step.
    config : Config
        Experiment configuration, runtime overrides included.
    step_name : str
        Name of the step this implementer runs for.
    """

    __TITLE_LENGTH = 80
    __INDENT_SIZE = 4

    def __init__(self, workflow_result, parent_work_dir_path, config, step_name):
        self.__parent_work_dir_path = parent_work_dir_path
        self.__config = config
        self.__step_name = step_name
        self.__workflow_result = workflow_result
        self.__graphs = None

        super().__init__()

    @property
    def config(self):
        """
        Returns
        -------
        Config
        """
        return self.__config

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
            Class name of this implementer.
        """
        return type(self).__name__

    @property
    def workflow_result(self):
        """
        Returns
        -------
        WorkflowResult
            Results of earlier steps.
        """
        return self.__workflow_result

    @property
    def parent_work_dir_path(self):
        """
        Returns
        -------
        str
        """
        return self.__parent_work_dir_path

    @property
    def work_dir_path(self):
        """Working folder of this step, created if missing.

        Returns
        -------
        str
        """
        work_dir_path_step = os.path.join(self.__parent_work_dir_path, self.step_name)
        os.makedirs(work_dir_path_step, exist_ok=True)
        return work_dir_path_step

    @staticmethod
    @abstractmethod
    def step_implementer_config_defaults():
        """
        Getter for the StepImplementer's configuration defaults.

        Notes
        -----
        These are the lowest precedence configuration values.

        Returns
        -------
        dict
            Default values to use for step configuration values.
        """

    @staticmethod
    @abstractmethod
    def _required_config_or_result_keys():
        """Getter for step configuration or previous step result artifacts that are required before
        running this step.

        Returns
        -------
        list of str
        """

    @abstractmethod
    def _run_step(self):
        """Runs the step implemented by this StepImplementer.

        Returns
        -------
        StepResult
            Object containing the results of this step.
        """

    def _validate_required_config_or_previous_step_result_artifact_keys(self):
        """Validates that the required configuration keys or previous step result artifacts
        are set.

        Raises
        ------
        AssertionError
            Listing every missing key.
        """
        invalid_required_keys = [
            required_key
            for required_key in self._required_config_or_result_keys()
            if self.get_value(required_key) is None
        ]

        assert not invalid_required_keys, \
            'Missing required step configuration or previous step result artifact keys: ' + \
            f'{invalid_required_keys}'

    def run_step(self):
        """Wrapper for running the implemented step.

        Returns
        -------
        StepResult
            Results of running this step.
        """
        StepImplementer.__print_section_title(f"Step Start - {self.step_name}")

        StepImplementer.__print_section_title(
            f"Configuration - {self.step_name}",
            div_char="-",
            indent=1
        )
        StepImplementer.__print_data(
            "Step Implementer Configuration Defaults",
            self.step_implementer_config_defaults()
        )
        StepImplementer.__print_data("Configuration Sources", self.config.sources)
        StepImplementer.__print_data(
            "Configuration",
            ConfigValue.convert_leaves_to_values(self.config.values)
        )
        StepImplementer.__print_data(
            "Configuration Runtime Overrides",
            ConfigValue.convert_leaves_to_values(self.config.overrides)
        )
        StepImplementer.__print_data(
            "Runtime Configuration",
            self.get_copy_of_runtime_config()
        )

        step_result = None
        try:
            self._validate_required_config_or_previous_step_result_artifact_keys()

            StepImplementer.__print_section_title(
                f"Standard Out - {self.step_name}",
                div_char="-",
                indent=1
            )

            indented_stdout = TextIOIndenter(
                parent_stream=sys.stdout,
                indent_level=2
            )
            indented_stderr = TextIOIndenter(
                parent_stream=sys.stderr,
                indent_level=2
            )

            with redirect_stdout(indented_stdout), redirect_stderr(indented_stderr):
                step_result = self._run_step()
        except AssertionError as invalid_error:
            step_result = StepResult.from_step_implementer(self)
            step_result.success = False
            step_result.message = str(invalid_error)

        StepImplementer.__print_section_title(
            f"Results - {self.step_name}",
            div_char="-",
            indent=1
        )

        StepImplementer.__print_data('Step', step_result.step_name)
        StepImplementer.__print_data('Implementer', step_result.implementer_name)
        StepImplementer.__print_data('Success', step_result.success)
        StepImplementer.__print_data('Message', step_result.message)
        StepImplementer.__print_data('Artifacts', step_result.artifacts_dicts)

        StepImplementer.__print_section_title(f'Step End - {self.step_name}')

        return step_result

    def get_value(self, key):
        """Value of a key from the configuration, or else from an earlier step's artifacts.

        Parameters
        ----------
        key : str or list of str
            Key, or keys tried in order.

        Returns
        -------
        obj or None
        """
        keys = key if isinstance(key, list) else [key]

        for k in keys:
            config_value = self.get_config_value(k)
            if config_value is not None:
                return config_value

            result_value = self.get_result_value(k)
            if result_value is not None:
                return result_value

        return None

    def get_config_value(self, key):
        """Configuration value of a key.

        From least precedence to highest precedence.

            1. step implementer defaults
            2. configuration sources
            3. runtime overrides

        Returns
        -------
        obj or None
        """
        return self.config.get_config_value(key, self.step_implementer_config_defaults())

    def get_copy_of_runtime_config(self):
        """
        Returns
        -------
        dict
            Every configuration layer merged, plain values.
        """
        return self.config.get_runtime_values(self.step_implementer_config_defaults())

    def get_result_value(self, artifact_name, step_name=None):
        """Value of an artifact of an earlier step, most recent first.

        Returns
        -------
        obj or None
        """
        return self.workflow_result.get_artifact_value(
            artifact=artifact_name,
            step_name=step_name
        )

    def experiment_config(self, with_artifacts=True, overrides=None):
        """
        Parameters
        ----------
        with_artifacts : bool
            Whether `rules-file` falls back to an earlier step's artifact.
        overrides : dict, optional
            Top level values that win over every configuration layer.

        Returns
        -------
        ExperimentConfig

        Raises
        ------
        AssertionError
            If a setting is invalid.
        """
        values = self.get_copy_of_runtime_config()
        values.update(overrides or {})
        if with_artifacts and values.get('rules-file') is None:
            values['rules-file'] = self.get_result_value('rules-file')
        return ExperimentConfig(values)

    def load_graphs(self):
        """Loads the configured splits once.

        Returns
        -------
        tuple of KnowledgeGraph
            train, valid (None when not configured), test (None when not configured);
            the splits share the vocabularies of train.
        """
        if self.__graphs is None:
            cfg = self.experiment_config()
            cfg.require('train')
            train_kg = load_tsv(cfg.train)
            valid_kg = load_tsv(cfg.valid, like=train_kg) if cfg.valid else None
            test_kg = load_tsv(cfg.test, like=train_kg) if cfg.test else None
            self.__graphs = (train_kg, valid_kg, test_kg)
        return self.__graphs

    def working_path(self, *parts):
        """Path under the working folder of this step, parent folders created.

        Returns
        -------
        str
        """
        file_path = os.path.join(self.work_dir_path, *parts)
        os.makedirs(os.path.dirname(file_path), exist_ok=True)
        return file_path

    @staticmethod
    def __print_section_title(title, div_char="=", indent=0):
        print()
        print()
        StepImplementer.__print_indented(
            text=div_char * StepImplementer.__TITLE_LENGTH,
            indent=indent
        )
        StepImplementer.__print_indented(
            text=title.center(StepImplementer.__TITLE_LENGTH),
            indent=indent
        )
        StepImplementer.__print_indented(
            text=div_char * StepImplementer.__TITLE_LENGTH,
            indent=indent
        )

    @staticmethod
    def __print_data(title, data, indent=2):
        """Pretty prints data under a title.

        Notes
        -----
        Indent levels are each are StepImplementer.__INDENT_SIZE spaces wide.
        """
        StepImplementer.__print_indented(
            text=title,
            indent=indent
        )

        # json.dumps puts the {} and [] of dicts and lists on their own lines
        if isinstance(data, (dict, list)):
            formated_data = json.dumps(
                data,
                indent=StepImplementer.__INDENT_SIZE,
                default=str
            )
        elif isinstance(data, str):
            formated_data = data
        else:
            printer = pprint.PrettyPrinter()
            formated_data = printer.pformat(data)

        StepImplementer.__print_indented(
            text=formated_data,
            indent=indent + 1
        )
        print()

    @staticmethod
    def __print_indented(text, indent=0):
        print(textwrap.indent(
            text=text,
            prefix=" " * (StepImplementer.__INDENT_SIZE * indent)
        ))
