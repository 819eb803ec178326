# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kge.models import (ComplEx, DistMult, TransE, init_model, model_class,
                                       score_triple)

from tests.helpers.base_test_case import BaseTestCase
from tests.helpers.kg_fixtures import toy_kg


class TestScores(BaseTestCase):
    def test_transe(self):
        entities = np.array([[0.0, 0.0], [3.0, 4.0]])
        relations = np.array([[0.0, 0.0]])

        self.assertEqual(score_triple(TransE(entities, relations, 2), (0, 0, 1)), -5.0)
        self.assertEqual(score_triple(TransE(entities, relations, 2, norm='L1'), (0, 0, 1)), -7.0)

    def test_distmult(self):
        model = DistMult(np.array([[1.0, 2.0], [3.0, 4.0]]), np.array([[2.0, 0.5]]), 2)

        self.assertEqual(model.score_triple((0, 0, 1)), 1 * 2 * 3 + 2 * 0.5 * 4)
        self.assertEqual(model.score_triple((0, 0, 1)), model.score_triple((1, 0, 0)))

    def test_complex(self):
        # h = 1 + 2i, r = 3 - i, t = 2 + i: Re(h * r * conj(t)) = Re((5 + 5i)(2 - i)) = 15
        model = ComplEx(np.array([[1.0, 2.0], [2.0, 1.0]]), np.array([[3.0, -1.0]]), 1)

        self.assertAlmostEqual(model.score_triple((0, 0, 1)), 15.0)
        self.assertEqual(model.entity_embeddings.shape[1], ComplEx.width_for(1))

    def test_one_to_all_scores_match_triple_scores(self):
        kg = toy_kg()
        for kind in ('transe', 'distmult', 'complex'):
            model = init_model(kg, kind, 5, seed=3)
            with self.subTest(kind=kind):
                tails = model.score_tails(0, 1)
                heads = model.score_heads(2, 4)
                for entity in range(kg.num_entities):
                    self.assertAlmostEqual(tails[entity], model.score_triple((0, 1, entity)))
                    self.assertAlmostEqual(heads[entity], model.score_triple((entity, 2, 4)))

    def test_score_gradients_match_finite_differences(self):
        rng = np.random.default_rng(0)
        heads, relations, tails = (rng.normal(size=(3, 8)) for _ in range(3))
        for cls in (TransE, DistMult, ComplEx):
            dim = 4 if cls is ComplEx else 8
            model = cls(rng.normal(size=(1, 8)), rng.normal(size=(1, 8)), dim)
            gradients = model.score_gradients(heads, relations, tails)
            for position, gradient in enumerate(gradients):
                with self.subTest(model=cls.__name__, position=position):
                    arguments = [heads, relations, tails]
                    numeric = np.zeros_like(gradient)
                    for column in range(8):
                        shift = np.zeros(8)
                        shift[column] = 1e-6
                        plus = list(arguments)
                        minus = list(arguments)
                        plus[position] = arguments[position] + shift
                        minus[position] = arguments[position] - shift
                        numeric[:, column] = (model.score(*plus) - model.score(*minus)) / 2e-6
                    np.testing.assert_allclose(gradient, numeric, atol=1e-5)


class TestModelValidation(BaseTestCase):
    def test_shape_mismatch(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'does not match width 4'):
            ComplEx(np.zeros((2, 2)), np.zeros((1, 4)), 2)

    def test_non_finite(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'relation table has non finite'):
            DistMult(np.zeros((2, 2)), np.array([[np.nan, 0.0]]), 2)

    def test_bad_norm(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'TransE norm'):
            TransE(np.zeros((2, 2)), np.zeros((1, 2)), 2, norm='L3')

    def test_model_class(self):
        self.assertIs(model_class('TransE'), TransE)
        self.assertIs(model_class('complex'), ComplEx)
        with self.assertRaisesRegex(KGRuleAttackException, r'Model kind \(rescal\)'):
            model_class('rescal')


class TestInitModel(BaseTestCase):
    def test_shapes_and_bounds(self):
        kg = toy_kg()

        model = init_model(kg, 'complex', 4, seed=1)

        self.assertEqual(model.kind, 'complex')
        self.assertEqual(model.dim, 4)
        self.assertEqual(model.entity_embeddings.shape, (5, 8))
        self.assertEqual(model.relation_embeddings.shape, (3, 8))
        self.assertTrue(np.all(np.abs(model.entity_embeddings) <= 0.5))
        self.assertEqual((model.num_entities, model.num_relations), (5, 3))

    def test_transe_entities_normalized(self):
        model = init_model(toy_kg(), 'transe', 6, seed=2, norm='L1')

        np.testing.assert_allclose(np.linalg.norm(model.entity_embeddings, axis=1), 1.0)
        self.assertEqual(model.parameters(), {'norm': 'L1'})

    def test_seeded(self):
        first = init_model(toy_kg(), 'distmult', 3, seed=5)
        second = init_model(toy_kg(), 'distmult', 3, seed=5)

        np.testing.assert_array_equal(first.entity_embeddings, second.entity_embeddings)
        self.assertEqual(first.parameters(), {})

    def test_bad_dim(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'at least 1'):
            init_model(toy_kg(), 'distmult', 0)
