# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

from kg_rule_attack.exceptions import VocabularyError
from kg_rule_attack.kg.vocabulary import Vocabulary

from tests.helpers.base_test_case import BaseTestCase


class TestVocabulary(BaseTestCase):
    def test_intern_assigns_contiguous_ids_in_order(self):
        vocabulary = Vocabulary(['a', 'b', 'a', 'c'], kind='entity')

        self.assertEqual(vocabulary.symbols, ('a', 'b', 'c'))
        self.assertEqual(vocabulary.id_of('c'), 2)
        self.assertEqual(vocabulary.lookup(1), 'b')
        self.assertEqual(len(vocabulary), 3)
        self.assertIn('a', vocabulary)
        self.assertNotIn('z', vocabulary)

    def test_intern_existing_symbol_returns_its_id(self):
        vocabulary = Vocabulary(['a', 'b'])

        self.assertEqual(vocabulary.intern('b'), 1)
        self.assertEqual(len(vocabulary), 2)

    def test_frozen_vocabulary_rejects_new_symbols(self):
        vocabulary = Vocabulary(['a'], kind='relation').freeze()

        self.assertTrue(vocabulary.frozen)
        self.assertEqual(vocabulary.intern('a'), 0)
        with self.assertRaisesRegex(VocabularyError, r"Unknown relation: \['z'\]"):
            vocabulary.intern('z')

    def test_id_of_unknown_symbol(self):
        with self.assertRaisesRegex(VocabularyError, r"Unknown entity: \['z'\]") as context:
            Vocabulary(['a'], kind='entity').id_of('z')

        self.assertEqual(context.exception.unknown, ['z'])

    def test_lookup_out_of_range(self):
        vocabulary = Vocabulary(['a'], kind='entity')

        with self.assertRaisesRegex(VocabularyError, r"Unknown entity id: \['1'\]"):
            vocabulary.lookup(1)
        with self.assertRaises(VocabularyError):
            vocabulary.lookup(-1)

    def test_unknown_lists_missing_symbols_sorted(self):
        vocabulary = Vocabulary(['a', 'b'])

        self.assertEqual(vocabulary.unknown(['z', 'a', 'y', 'z']), ['y', 'z'])

    def test_fingerprint_depends_on_order(self):
        self.assertEqual(
            Vocabulary(['a', 'b']).fingerprint(),
            Vocabulary(['a', 'b']).fingerprint()
        )
        self.assertNotEqual(
            Vocabulary(['a', 'b']).fingerprint(),
            Vocabulary(['b', 'a']).fingerprint()
        )
        self.assertEqual(len(Vocabulary(['a']).fingerprint()), 64)

    def test_equality(self):
        self.assertEqual(Vocabulary(['a', 'b']), Vocabulary(['a', 'b'], kind='entity'))
        self.assertNotEqual(Vocabulary(['a', 'b']), Vocabulary(['a']))
        self.assertEqual(list(Vocabulary(['x', 'y'])), ['x', 'y'])
        self.assertEqual(repr(Vocabulary(['x'], kind='entity')), 'Vocabulary(kind=entity, size=1)')
