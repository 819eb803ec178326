# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import os

from testfixtures import TempDirectory

from kg_rule_attack.exceptions import KGRuleAttackException, PlanViolationError
from kg_rule_attack.kg.perturbation import PerturbationPlan, budget_for_ratio, load_plan

from tests.helpers.base_test_case import BaseTestCase
from tests.helpers.kg_fixtures import random_kg, toy_kg


class TestBudgetForRatio(BaseTestCase):
    def test_rounds_down(self):
        self.assertEqual(budget_for_ratio(toy_kg(), 0.3), 2)
        self.assertEqual(budget_for_ratio(toy_kg(), 0.1), 0)

    def test_absorbs_representation_error(self):
        kg = random_kg(0, num_triples=70)

        self.assertEqual(budget_for_ratio(kg, 0.1), 7)

    def test_ratio_out_of_range(self):
        for ratio in (0, 1, -0.1, 1.5):
            with self.subTest(ratio=ratio):
                with self.assertRaisesRegex(ValueError, r'must be in \(0, 1\)'):
                    budget_for_ratio(toy_kg(), ratio)


class TestPerturbationPlan(BaseTestCase):
    def test_defaults(self):
        kg = toy_kg()
        plan = PerturbationPlan('delete', kg.sorted_triples()[:2], ratio=0.3)

        self.assertEqual(plan.budget, 2)
        self.assertEqual(len(plan), 2)
        self.assertEqual(plan.provenance, ('', ''))
        self.assertEqual(plan.scores, (0.0, 0.0))
        self.assertEqual(plan.ratio, 0.3)
        self.assertEqual(plan.fill_count, 0)
        self.assertEqual(plan.fill_fraction, 0.0)
        self.assertEqual(list(plan), kg.sorted_triples()[:2])

    def test_empty_plan_fill_fraction(self):
        self.assertEqual(PerturbationPlan('add', []).fill_fraction, 0.0)

    def test_fill_fraction(self):
        kg = toy_kg()
        plan = PerturbationPlan('delete', kg.sorted_triples()[:4], fill_count=1)

        self.assertEqual(plan.fill_fraction, 0.25)

    def test_bad_mode(self):
        with self.assertRaisesRegex(KGRuleAttackException, r'Plan mode \(replace\) must be one of'):
            PerturbationPlan('replace', [])

    def test_length_mismatch(self):
        kg = toy_kg()
        with self.assertRaisesRegex(KGRuleAttackException, 'must have the same length'):
            PerturbationPlan('delete', kg.sorted_triples()[:2], provenance=['random'])

    def test_duplicates(self):
        triple = toy_kg().sorted_triples()[0]
        with self.assertRaisesRegex(KGRuleAttackException, 'Plan contains duplicate triples'):
            PerturbationPlan('delete', [triple, triple])

    def test_reverse(self):
        kg = toy_kg()
        plan = PerturbationPlan(
            'delete', kg.sorted_triples()[:1], provenance=['random'], scores=[0.5], ratio=0.1
        )

        reverse = plan.reverse()

        self.assertEqual(reverse.mode, 'add')
        self.assertEqual(reverse.triples, plan.triples)
        self.assertEqual(reverse.scores, (0.5,))
        self.assertEqual(reverse.reverse(), plan)

    def test_validate(self):
        kg = toy_kg()
        PerturbationPlan('delete', kg.sorted_triples()).validate(kg)

        with self.assertRaises(PlanViolationError):
            PerturbationPlan('add', kg.sorted_triples()[:1]).validate(kg)

    def test_provenance_counts(self):
        kg = toy_kg()
        plan = PerturbationPlan(
            'delete',
            kg.sorted_triples()[:5],
            provenance=[
                'bornIn <= bornIn ^ locatedIn',
                'bornIn <= bornIn ^ locatedIn;bornIn <= studyIn ^ locatedIn',
                'random-fill',
                'random-fill',
                ''
            ]
        )

        self.assertEqual(plan.provenance_counts(), {'rule': 2, 'random-fill': 2, '': 1})

    def test_equality(self):
        kg = toy_kg()
        triples = kg.sorted_triples()[:2]

        self.assertEqual(PerturbationPlan('delete', triples), PerturbationPlan('delete', triples))
        self.assertNotEqual(PerturbationPlan('delete', triples), PerturbationPlan('add', triples))
        self.assertNotEqual(PerturbationPlan('delete', triples), triples)


class TestPlanFiles(BaseTestCase):
    def test_save(self):
        kg = toy_kg()
        plan = PerturbationPlan(
            'delete',
            [kg.triple('a', 'bornIn', 'usa')],
            provenance=['bornIn <= bornIn ^ locatedIn'],
            scores=[0.5]
        )

        with TempDirectory() as temp_dir:
            path = os.path.join(temp_dir.path, 'plans', 'plan.tsv')
            plan.save(kg, path)

            self.assertEqual(
                temp_dir.read('plans/plan.tsv', encoding='utf-8'),
                'delete\ta\tbornIn\tusa\t0.5\tbornIn <= bornIn ^ locatedIn\n'
            )

    def test_save_and_load(self):
        kg = toy_kg()
        plan = PerturbationPlan(
            'add',
            [kg.triple('b', 'bornIn', 'usa'), kg.triple('a', 'studyIn', 'nyc')],
            provenance=['bornIn <= bornIn ^ locatedIn', 'random-fill'],
            scores=[0.5, 0.0],
            fill_count=1
        )

        with TempDirectory() as temp_dir:
            path = os.path.join(temp_dir.path, 'plan.tsv')
            plan.save(kg, path)

            loaded = load_plan(path, kg, ratio=0.3)

        self.assertEqual(loaded, plan)
        self.assertEqual(loaded.fill_count, 1)
        self.assertEqual(loaded.ratio, 0.3)

    def test_load_empty_plan(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('plan.tsv', b'')

            plan = load_plan(os.path.join(temp_dir.path, 'plan.tsv'), toy_kg())

        self.assertEqual(plan.mode, 'delete')
        self.assertEqual(len(plan), 0)

    def test_load_wrong_field_count(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('plan.tsv', b'delete\ta\tbornIn\tusa\n')

            with self.assertRaisesRegex(PlanViolationError, 'Expected 6 TAB separated fields'):
                load_plan(os.path.join(temp_dir.path, 'plan.tsv'), toy_kg())

    def test_load_mixed_modes(self):
        with TempDirectory() as temp_dir:
            temp_dir.write(
                'plan.tsv',
                b'delete\ta\tbornIn\tusa\t0.0\trandom\nadd\tb\tbornIn\tusa\t0.0\trandom\n'
            )

            with self.assertRaisesRegex(PlanViolationError, 'Plan mixes add and delete'):
                load_plan(os.path.join(temp_dir.path, 'plan.tsv'), toy_kg())

    def test_load_unknown_symbol(self):
        with TempDirectory() as temp_dir:
            temp_dir.write('plan.tsv', b'delete\ta\tbornIn\tparis\t0.0\trandom\n')

            with self.assertRaisesRegex(PlanViolationError, 'paris'):
                load_plan(os.path.join(temp_dir.path, 'plan.tsv'), toy_kg())
