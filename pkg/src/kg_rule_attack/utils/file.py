"""Shared utils for dealing with files.
"""

import hashlib
import json
import os

import yaml


def parse_yaml_or_json_file(yaml_or_json_file):
    """Parse a YAML or JSON file.

    Parameters
    ----------
    yaml_or_json_file : str
        Path to a YAML or JSON file.

    Returns
    -------
    dict
        Dictionary parsed from the given file.

    Raises
    ------
    ValueError
        If the given file can not be parsed as YAML or JSON.
    """
    with open(yaml_or_json_file, 'r', encoding='utf-8') as open_file:
        file_contents = open_file.read()

    try:
        return json.loads(file_contents)
    except ValueError as json_parse_error:
        try:
            # JSON is a subset of YAML, so YAML is tried second for the better error
            return yaml.safe_load(file_contents)
        except yaml.YAMLError as yaml_parse_error:
            raise ValueError(
                f"Error parsing file ({yaml_or_json_file}) as YAML or JSON: " +
                f"\n  JSON error: {str(json_parse_error)}" +
                f"\n  YAML error: {str(yaml_parse_error)}"
            ) from yaml_parse_error


def create_parent_dir(file_path):
    """Helper method to create parent folder of given file if it does not exist.

    Parameters
    ----------
    file_path: str
        Path of a file to create the parent folders for.
    """
    parent_dir_path = os.path.dirname(file_path)
    if parent_dir_path:
        os.makedirs(parent_dir_path, exist_ok=True)


def get_file_hash(file_path):
    """Returns the SHA-256 hex digest of the given file.

    Parameters
    ----------
    file_path : str
        File to hash.

    Returns
    -------
    str
        Hex digest.
    """
    sha256_hash = hashlib.sha256()
    with open(file_path, "rb") as the_file:
        # Read and update hash string value in blocks of 4K
        for byte_block in iter(lambda: the_file.read(4096), b""):
            sha256_hash.update(byte_block)
    return sha256_hash.hexdigest()


def write_json_file(file_path, data):
    """Writes data as canonical JSON (sorted keys, fixed indent, trailing newline).

    Canonical form keeps files byte-identical across identical runs.

    Parameters
    ----------
    file_path : str
        Destination path, parent folders are created.
    data : dict or list
        JSON serializable data.

    Returns
    -------
    str
        The given file path.
    """
    create_parent_dir(file_path)
    with open(file_path, 'w', encoding='utf-8') as file:
        json.dump(data, file, indent=4, sort_keys=True)
        file.write('\n')
    return file_path
