"""Constructs the StepImplementer of a given step from a configuration, and runs it.
"""
import os

from kg_rule_attack.config.config import Config
from kg_rule_attack.config.experiment_config import DEFAULTS
from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.results import WorkflowResult
from kg_rule_attack.step_implementer import DefaultSteps, StepImplementer
from kg_rule_attack.utils.reflection import import_and_get_class

DEFAULT_IMPLEMENTERS = {
    DefaultSteps.TRAIN: 'KGE',
    DefaultSteps.EVAL: 'LinkPrediction',
    DefaultSteps.PIPELINE: 'AttackPipeline',
    DefaultSteps.REPORT: 'ExperimentReport'
}


class StepRunner:
    """Runs the steps of an experiment via StepImplementers.

    Results of every step are kept in a pickled WorkflowResult under the output directory,
    so a later invocation sees the artifacts of earlier ones.

    Parameters
    ----------
    config : Config, dict, list, str (file or directory)
        A Config object,
        or a dictionary that is a valid configuration,
        or a string that is a path to a YAML or JSON configuration file,
        or a string that is a path to a directory of such files,
        or a list of any of the former.
    results_file_name : str, optional
        Name of the YAML results file in the output directory.
        Default: kgra-results.yml
    work_dir_path : str, optional
        Output directory. Default: the `out` configuration value.
    manifest_file_name : str, optional
        Name of the artifact manifest in the output directory.
        Default: manifest.yml

    Raises
    ------
    ValueError
        If given config is not of expected type.
    AssertionError
        If given config contains any invalid configurations.
    """

    __DEFAULT_MODULE = 'kg_rule_attack.step_implementers'

    def __init__(
        self,
        config,
        results_file_name='kgra-results.yml',
        work_dir_path=None,
        manifest_file_name='manifest.yml'
    ):
        if isinstance(config, Config):
            self.__config = config
        else:
            self.__config = Config(config)

        self.__results_file_name = results_file_name
        self.__work_dir_path = work_dir_path or self.__config.get_config_value(
            'out', DEFAULTS
        )
        self.__manifest_file_name = manifest_file_name

        self.__workflow_result = None

    @property
    def config(self):
        """
        Returns
        -------
        Config
            Configuration used by this runner.
        """
        return self.__config

    @property
    def work_dir_path(self):
        """
        Returns
        -------
        str
            Output directory.
        """
        return self.__work_dir_path

    @property
    def results_file_path(self):
        """Get the full path to the results file.

        Returns
        -------
        str
            Full path to the results file.
        """
        return os.path.join(self.__work_dir_path, self.__results_file_name)

    @property
    def manifest_file_path(self):
        """
        Returns
        -------
        str
            Full path to the artifact manifest.
        """
        return os.path.join(self.__work_dir_path, self.__manifest_file_name)

    @property
    def workflow_result_pickle_file_path(self):
        """
        Get the full path to the workflow result pickle file.
        (The 'pickle' file contains the serialized list of step results.)
        The name of the pickle file is the basename of the results_file_name.

        Returns
        -------
        str
           Full path to the workflow pickle (serialized) file.
        """
        pickle_filename = os.path.splitext(self.__results_file_name)[0] + '.pkl'
        return os.path.join(self.__work_dir_path, pickle_filename)

    @property
    def workflow_result(self):
        """
        Returns
        -------
        WorkflowResult
            Step results of earlier runs in the same output directory.
        """
        if not self.__workflow_result:
            self.__workflow_result = WorkflowResult.load_from_pickle_file(
                pickle_filename=self.workflow_result_pickle_file_path
            )
        return self.__workflow_result

    def default_implementer_name(self, step_name):
        """The implementer a step runs with unless one is named.

        `mine` reads `rules-file` when configured and samples paths otherwise; `attack`
        follows the configured `attacker`.

        Returns
        -------
        str

        Raises
        ------
        KGRuleAttackException
            If the step is unknown.
        """
        if step_name == DefaultSteps.MINE:
            return 'RuleFile' if self.config.get_config_value('rules-file') else 'PathSampling'

        if step_name == DefaultSteps.ATTACK:
            # pylint: disable=import-outside-toplevel
            from kg_rule_attack.step_implementers.attack import ATTACK_IMPLEMENTERS
            attacker = self.config.get_config_value('attacker', DEFAULTS)
            if attacker not in ATTACK_IMPLEMENTERS:
                raise KGRuleAttackException(
                    f"Attacker ({attacker}) must be one of {sorted(ATTACK_IMPLEMENTERS)}"
                )
            return ATTACK_IMPLEMENTERS[attacker]

        if step_name not in DEFAULT_IMPLEMENTERS:
            raise KGRuleAttackException(
                f"Unknown step ({step_name}), expected one of {DefaultSteps.ALL}"
            )
        return DEFAULT_IMPLEMENTERS[step_name]

    def run_step(self, step_name, implementer_name=None):
        """
        Run the given step.

        Parameters
        ----------
        step_name : str
            Step to run.
        implementer_name : str, optional
            Short class name under `kg_rule_attack.step_implementers.<step>`, or a dotted
            module path ending in the class name. Default: `default_implementer_name`.

        Raises
        ------
        KGRuleAttackException
            If the step is unknown, or the StepImplementer can not be loaded.

        Returns
        -------
        Bool
           True if step completed successfully
           False if step returned an error message
        """
        implementer_name = implementer_name or self.default_implementer_name(step_name)
        step_implementer_class = StepRunner.__get_step_implementer_class(
            step_name,
            implementer_name
        )

        step = step_implementer_class(
            workflow_result=self.workflow_result,
            parent_work_dir_path=self.__work_dir_path,
            config=self.config,
            step_name=step_name
        )

        step_result = step.run_step()

        # save the step results
        self.workflow_result.add_step_result(
            step_result=step_result
        )
        self.workflow_result.write_to_pickle_file(
            pickle_filename=self.workflow_result_pickle_file_path
        )
        self.workflow_result.write_results_to_yml_file(
            yml_filename=self.results_file_path
        )
        self.workflow_result.write_manifest(
            manifest_filename=self.manifest_file_path
        )

        return step_result.success

    @staticmethod
    def __get_step_implementer_class(step_name, step_implementer_name):
        """Given a step name and a step implementer name dynamically loads the Class.

        Parameters
        ----------
        step_name : str
            Name of the step to load the given step implementer for.
            This is only used if the given step_implementer_name does not include
            a module path.
        step_implementer_name : str
            Either the short name of a StepImplementer class which will be dynamically
            loaded from the 'kg_rule_attack.step_implementers.{step_name}' module or
            A class name that includes a dot seperated module name to load the Class from.

        Returns
        -------
        StepImplementer
            Dynamically loaded subclass of StepImplementer.

        Raises
        ------
        KGRuleAttackException
            If could not find class to load
            If loaded class is not a subclass of StepImplementer
        """
        parts = step_implementer_name.split('.')
        class_name = parts.pop()
        module_name = '.'.join(parts)

        if not module_name:
            step_module_part = step_name.replace('-', '_')
            module_name = f"{StepRunner.__DEFAULT_MODULE}.{step_module_part}"

        clazz = import_and_get_class(module_name, class_name)
        if not clazz:
            raise KGRuleAttackException(
                f"Could not dynamically load step ({step_name}) step implementer" +
                f" ({step_implementer_name}) from module ({module_name})" +
                f" with class name ({class_name})"
            )
        if not issubclass(clazz, StepImplementer):
            raise KGRuleAttackException(
                f"Step ({step_name}) is configured to use step implementer" +
                f" ({step_implementer_name}) from module ({module_name}) with" +
                f" class name ({class_name}), and dynamically loads as class ({clazz})" +
                f" which is not a subclass of required parent class ({StepImplementer}).")

        return clazz
