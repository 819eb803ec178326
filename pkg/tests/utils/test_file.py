# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import hashlib
import os

from testfixtures import TempDirectory

from kg_rule_attack.utils.file import (create_parent_dir, get_file_hash,
                                       parse_yaml_or_json_file, write_json_file)

from tests.helpers.base_test_case import BaseTestCase


class TestParseYamlOrJsonFile(BaseTestCase):
    def test_json(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('config.json', b'{"kg-rule-attack-config": {"m": 5}}')

            self.assertEqual(
                parse_yaml_or_json_file(os.path.join(temp_dir.path, 'config.json')),
                {'kg-rule-attack-config': {'m': 5}}
            )

    def test_yaml(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('config.yml', b'kg-rule-attack-config:\n  gammas:\n  - 0.05\n')

            self.assertEqual(
                parse_yaml_or_json_file(os.path.join(temp_dir.path, 'config.yml')),
                {'kg-rule-attack-config': {'gammas': [0.05]}}
            )

    def test_neither(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('config.yml', b'{ not: [valid\n')

            with self.assertRaisesRegex(ValueError, r'as YAML or JSON:\s+JSON error: .*\s+YAML error'):
                parse_yaml_or_json_file(os.path.join(temp_dir.path, 'config.yml'))


class TestFileHelpers(BaseTestCase):
    def test_create_parent_dir(self):
        with TempDirectory() as temp_dir:
            create_parent_dir(os.path.join(temp_dir.path, 'a', 'b', 'file.txt'))

            self.assertTrue(os.path.isdir(os.path.join(temp_dir.path, 'a', 'b')))
            create_parent_dir('file-in-cwd.txt')

    def test_get_file_hash(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('data.txt', b'a\tr\tb\n')

            self.assertEqual(
                get_file_hash(os.path.join(temp_dir.path, 'data.txt')),
                hashlib.sha256(b'a\tr\tb\n').hexdigest()
            )

    def test_write_json_file(self):
        with TempDirectory() as temp_dir:
            path = write_json_file(os.path.join(temp_dir.path, 'out', 'r.json'), {'b': 1, 'a': [2]})

            self.assertEqual(
                temp_dir.read('out/r.json', encoding='utf-8'),
                '{\n    "a": [\n        2\n    ],\n    "b": 1\n}\n'
            )
            self.assertTrue(path.endswith('r.json'))
