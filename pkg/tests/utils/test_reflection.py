# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

from kg_rule_attack.step_implementers.mine import PathSampling
from kg_rule_attack.utils.reflection import import_and_get_class

from tests.helpers.base_test_case import BaseTestCase


class TestImportAndGetClass(BaseTestCase):
    def test_found(self):
        self.assertIs(
            import_and_get_class('kg_rule_attack.step_implementers.mine', 'PathSampling'),
            PathSampling
        )

    def test_missing_class(self):
        self.assertIsNone(import_and_get_class('kg_rule_attack.step_implementers.mine', 'Nope'))

    def test_missing_module(self):
        self.assertIsNone(import_and_get_class('kg_rule_attack.nowhere', 'PathSampling'))
