"""Results of every step run against one output directory.
"""
import logging
import os
import pickle

import yaml

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.results.step_result import StepResult
from kg_rule_attack.utils.dict import deep_merge
from kg_rule_attack.utils.file import create_parent_dir, get_file_hash

logger = logging.getLogger(__name__)

MANIFEST_KEY = 'kgra-manifest'


class WorkflowResult:
    """
    Class to manage a list of StepResults.
    The WorkflowResult represents ALL previous results.
    """

    def __init__(self):
        self.__workflow_list = []

    @property
    def workflow_list(self):
        """
        Returns
        -------
        list of StepResult
            In the order they were added.
        """
        return self.__workflow_list

    def get_artifact_value(self, artifact, step_name=None):
        """Search for an artifact, most recent step result first.

        Parameters
        ----------
        artifact: str
           The artifact name to search for
        step_name: str optional
           Optionally search only in one step

        Returns
        -------
        object or None
        """
        for step_result in reversed(self.workflow_list):
            if not step_name or step_result.step_name == step_name:
                value = step_result.get_artifact_value(name=artifact)
                if value is not None:
                    return value
        return None

    def get_artifact_values(self, artifact, step_name=None):
        """Every value recorded for an artifact, oldest first.

        Returns
        -------
        list
        """
        values = []
        for step_result in self.workflow_list:
            if not step_name or step_result.step_name == step_name:
                value = step_result.get_artifact_value(name=artifact)
                if value is not None:
                    values.append(value)
        return values

    def add_step_result(self, step_result):
        """Add a single step_result to the workflow list.

        A result of the same step and implementer as an earlier one replaces it, so
        rerunning a step supersedes its previous artifacts.

        Parameters
        ----------
        step_result : StepResult

        Raises
        ------
        KGRuleAttackException
            If the given object is not a StepResult.
        """
        if not isinstance(step_result, StepResult):
            raise KGRuleAttackException('expect StepResult instance type')

        existing_step_result = self.get_step_result(
            step_name=step_result.step_name,
            implementer_name=step_result.implementer_name
        )
        if existing_step_result is not None:
            logger.info(
                "Replacing earlier result of step (%s) implementer (%s)",
                step_result.step_name, step_result.implementer_name
            )
            self.workflow_list.remove(existing_step_result)

        self.workflow_list.append(step_result)

    def get_step_result(self, step_name, implementer_name=None):
        """
        Returns
        -------
        StepResult or None
            The most recent result of the step, optionally of one implementer.
        """
        for step_result in reversed(self.workflow_list):
            if (
                (not step_name or step_result.step_name == step_name) and
                (not implementer_name or step_result.implementer_name == implementer_name)
            ):
                return step_result
        return None

    def write_results_to_yml_file(self, yml_filename):
        """Write the workflow list in a yaml format to file

        Parameters
        ----------
        yml_filename : str

        Raises
        ------
        RuntimeError
            If the file cannot be dumped
        """
        try:
            create_parent_dir(yml_filename)
            with open(yml_filename, 'w', encoding='utf-8') as file:
                yaml.safe_dump(self.__get_all_step_results_dict(), file, indent=4)
        except Exception as error:
            raise RuntimeError(f'error dumping {yml_filename}: {error}') from error

    def manifest_entries(self):
        """Every file artifact with its content hash.

        Returns
        -------
        list of dict
            One entry per file, keys `step`, `implementer`, `artifact`, `path`, `sha256`,
            sorted by step then artifact. Missing files have a null hash.
        """
        entries = []
        for step_result in self.workflow_list:
            for artifact in step_result.artifacts.values():
                for key, path in artifact.file_paths():
                    entries.append({
                        'step': step_result.step_name,
                        'implementer': step_result.implementer_name,
                        'artifact': key,
                        'path': path,
                        'sha256': get_file_hash(path) if os.path.isfile(path) else None
                    })
        return sorted(entries, key=lambda entry: (entry['step'], entry['artifact']))

    def write_manifest(self, manifest_filename):
        """Writes the artifact manifest as YAML.

        Parameters
        ----------
        manifest_filename : str

        Raises
        ------
        RuntimeError
            If the file cannot be written.
        """
        try:
            create_parent_dir(manifest_filename)
            with open(manifest_filename, 'w', encoding='utf-8') as file:
                yaml.safe_dump({MANIFEST_KEY: self.manifest_entries()}, file, indent=4)
        except Exception as error:
            raise RuntimeError(f'error dumping {manifest_filename}: {error}') from error

    @staticmethod
    def load_from_pickle_file(pickle_filename):
        """Return the WorkflowResult pickled in a file.

        Parameters
        ----------
        pickle_filename: str

        Returns
        -------
        WorkflowResult
            Empty when the file does not exist or is empty.

        Raises
        ------
        KGRuleAttackException
            If the file cannot be loaded or holds something else.
        """
        try:
            create_parent_dir(pickle_filename)

            if not os.path.isfile(pickle_filename) or os.path.getsize(pickle_filename) == 0:
                return WorkflowResult()

            with open(pickle_filename, 'rb') as file:
                workflow_result = pickle.load(file)
                if not isinstance(workflow_result, WorkflowResult):
                    raise KGRuleAttackException(f'error {pickle_filename} has invalid data')
                return workflow_result

        except Exception as error:
            raise KGRuleAttackException(f'error loading {pickle_filename}: {error}') from error

    def write_to_pickle_file(self, pickle_filename):
        """Write the workflow list in a pickle format to file

        Raises
        ------
        RuntimeError
            If the file cannot be dumped
        """
        try:
            create_parent_dir(pickle_filename)
            with open(pickle_filename, 'wb') as file:
                pickle.dump(self, file)
        except Exception as error:
            raise RuntimeError(f'error dumping {pickle_filename}: {error}') from error

    def __get_all_step_results_dict(self):
        all_results = {}
        for step_result in self.workflow_list:
            all_results = deep_merge(
                dest=all_results,
                source=step_result.get_step_result_dict(),
                overwrite_duplicate_keys=True
            )
        return {'kgra-results': all_results}
