# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import os

from testfixtures import TempDirectory

from kg_rule_attack.exceptions import KGRuleAttackException, VocabularyError
from kg_rule_attack.rules.rule import Atom, Rule, RuleSet
from kg_rule_attack.rules.rule_file import load_rules, save_rules

from tests.helpers.base_test_case import BaseTestCase
from tests.helpers.kg_fixtures import toy_kg


class TestLoadRules(BaseTestCase):
    def test_load(self):
        kg = toy_kg()
        with TempDirectory() as temp_dir:
            temp_dir.write(
                'rules.jsonl',
                b'{"head": "bornIn", "body": ["bornIn", "locatedIn"], "confidence": 0.5}\n'
                b'\n'
                b'{"head": "studyIn", "body": ["inv:bornIn"]}\n'
            )

            ruleset = load_rules(os.path.join(temp_dir.path, 'rules.jsonl'), kg)

        self.assertEqual(len(ruleset), 2)
        self.assertIs(ruleset.relations, kg.relations)
        born_in, study_in = ruleset.rules
        self.assertEqual(born_in.body, (Atom(0, False), Atom(1, False)))
        self.assertEqual(born_in.confidence, 0.5)
        self.assertEqual(study_in.head, 2)
        self.assertEqual(study_in.body, (Atom(0, True),))
        self.assertIsNone(study_in.confidence)

    def test_invalid_json(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('rules.jsonl', b'{"head": "bornIn"\n')

            with self.assertRaisesRegex(KGRuleAttackException, r'rules.jsonl:1: Invalid rule line'):
                load_rules(os.path.join(temp_dir.path, 'rules.jsonl'), toy_kg())

    def test_missing_body(self):
        with TempDirectory() as temp_dir:
            temp_dir.write(
                'rules.jsonl',
                b'{"head": "bornIn", "body": ["locatedIn"]}\n{"head": "bornIn", "body": []}\n'
            )

            with self.assertRaisesRegex(
                KGRuleAttackException,
                r'rules.jsonl:2: Rule needs a head relation and a nonempty body'
            ):
                load_rules(os.path.join(temp_dir.path, 'rules.jsonl'), toy_kg())

    def test_unknown_relations_all_listed(self):
        with TempDirectory() as temp_dir:
            temp_dir.write(
                'rules.jsonl',
                b'{"head": "livesIn", "body": ["bornIn"]}\n'
                b'{"head": "bornIn", "body": ["inv:worksAt"]}\n'
            )

            with self.assertRaises(VocabularyError) as context:
                load_rules(os.path.join(temp_dir.path, 'rules.jsonl'), toy_kg())

        self.assertEqual(context.exception.unknown, ['livesIn', 'worksAt'])

    def test_bad_confidence(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('rules.jsonl', b'{"head": "bornIn", "body": ["studyIn"], "confidence": 2}\n')

            with self.assertRaisesRegex(KGRuleAttackException, r'rules.jsonl:1: Rule confidence'):
                load_rules(os.path.join(temp_dir.path, 'rules.jsonl'), toy_kg())


class TestSaveRules(BaseTestCase):
    def test_save_grouped_by_head(self):
        kg = toy_kg()
        ruleset = RuleSet([
            Rule(2, [(0, True)], 0.25),
            Rule(0, [(0, False), (1, False)], 0.5)
        ])

        with TempDirectory() as temp_dir:
            path = save_rules(ruleset, kg.relations, os.path.join(temp_dir.path, 'out', 'rules.jsonl'))

            self.assertEqual(
                temp_dir.read('out/rules.jsonl', encoding='utf-8'),
                '{"body": ["bornIn", "locatedIn"], "confidence": 0.5, "head": "bornIn"}\n'
                '{"body": ["inv:bornIn"], "confidence": 0.25, "head": "studyIn"}\n'
            )
            reloaded = load_rules(path, kg)

        self.assertEqual(set(reloaded), set(ruleset))
