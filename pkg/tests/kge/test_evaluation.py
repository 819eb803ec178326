# pylint: disable=missing-module-docstring
# pylint: disable=missing-class-docstring
# pylint: disable=missing-function-docstring

import numpy as np

from kg_rule_attack.exceptions import KGRuleAttackException
from kg_rule_attack.kge.evaluation import (EvalReport, FilterIndex, evaluate, query_ranks,
                                           rank_from_scores, rank_query, select_highly_ranked)
from kg_rule_attack.kge.models import DistMult, init_model
from kg_rule_attack.kg.knowledge_graph import KnowledgeGraph

from tests.helpers.base_test_case import BaseTestCase
from tests.helpers.kg_fixtures import (TOY_TEST_TRIPLES, brute_force_rank, random_kg,
                                       toy_kg)


class TestRankFromScores(BaseTestCase):
    def test_examples(self):
        scores = np.array([0.9, 0.5, 0.5, 0.5, 0.1])

        self.assertEqual(rank_from_scores(scores, 0), 1)
        self.assertEqual(rank_from_scores(scores, 1), 3)
        self.assertEqual(rank_from_scores(scores, 4), 5)
        self.assertEqual(rank_from_scores(scores, 1, excluded=[0, 2]), 2)
        self.assertEqual(rank_from_scores(scores, 1, excluded=[1]), 3)

    def test_matches_sorting(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            scores = rng.integers(4, size=9).astype(float)
            truth = int(rng.integers(9))
            excluded = [int(e) for e in rng.choice(9, size=3, replace=False)]

            self.assertEqual(
                rank_from_scores(scores, truth, excluded),
                brute_force_rank(scores, truth, excluded)
            )


class TestRankQuery(BaseTestCase):
    def setUp(self):
        super().setUp()
        self.kg = toy_kg()
        self.model = init_model(self.kg, 'distmult', 4, seed=3)

    def test_tail_query_raw(self):
        scores = [self.model.score_triple((0, 0, e)) for e in range(5)]

        self.assertEqual(
            rank_query(self.model, (0, 0, None), 2), brute_force_rank(scores, 2)
        )

    def test_head_query_filtered(self):
        nyc = self.kg.entities.id_of('nyc')
        scores = [self.model.score_triple((e, 0, nyc)) for e in range(5)]
        known = FilterIndex.of(self.kg)

        self.assertEqual(
            rank_query(self.model, (None, 0, nyc), 0, known),
            brute_force_rank(scores, 0, known.heads(0, nyc))
        )
        self.assertEqual(
            rank_query(self.model, (None, 0, nyc), 0, self.kg.triples),
            rank_query(self.model, (None, 0, nyc), 0, known)
        )

    def test_no_open_slot(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'must leave the head or the tail open'):
            rank_query(self.model, (0, 0, 1), 1)

    def test_filter_index(self):
        known = FilterIndex.of(self.kg, [(3, 0, 2)])

        self.assertEqual(known.tails(0, 0), {1, 2})
        self.assertEqual(known.heads(0, 2), {0, 3, 4})
        self.assertEqual(known.tails(2, 2), set())


class TestEvaluate(BaseTestCase):
    def setUp(self):
        super().setUp()
        self.kg = toy_kg()
        self.test = KnowledgeGraph.from_surface_triples(TOY_TEST_TRIPLES, like=self.kg)
        self.model = init_model(self.kg, 'complex', 4, seed=2)

    def test_metrics_from_ranks(self):
        known = FilterIndex.of(self.kg, self.test)

        report = evaluate(self.model, self.test.sorted_triples(), known, relations=self.kg.relations)

        ranks = query_ranks(self.model, self.test.sorted_triples(), known).ravel()
        self.assertAlmostEqual(report.mrr, np.mean(1.0 / ranks))
        self.assertEqual(report.hits[1], np.mean(ranks <= 1))
        self.assertEqual(report.hits[10], 1.0)
        self.assertEqual(report.n_queries, 4)
        self.assertEqual(report.setting, 'filtered')
        self.assertEqual(sorted(report.per_relation), ['bornIn', 'studyIn'])
        self.assertEqual(report.per_relation['bornIn']['n_queries'], 2)

    def test_filtered_never_worse_than_raw(self):
        kg = random_kg(3)
        model = init_model(kg, 'distmult', 4, seed=0)
        test = kg.sorted_triples()[:10]

        filtered = query_ranks(model, test, FilterIndex.of(kg))
        raw = query_ranks(model, test)

        self.assertTrue(np.all(filtered <= raw))
        self.assertLessEqual(
            evaluate(model, test, setting='raw').mrr,
            evaluate(model, test, FilterIndex.of(kg)).mrr
        )

    def test_workers_do_not_change_ranks(self):
        test = self.test.sorted_triples()

        np.testing.assert_array_equal(
            query_ranks(self.model, test, FilterIndex.of(self.kg), workers=3),
            query_ranks(self.model, test, FilterIndex.of(self.kg))
        )

    def test_invalid(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'empty test set'):
            evaluate(self.model, [])
        with self.assertRaisesRegex(KGRuleAttackException, 'Evaluation setting'):
            evaluate(self.model, self.test, setting='both')

    def test_select_highly_ranked(self):
        test = self.test.sorted_triples()

        self.assertEqual(select_highly_ranked(self.model, test, max_rank=5), test)
        self.assertEqual(select_highly_ranked(self.model, test, max_rank=0), [])

    def test_perfect_model(self):
        entities = np.eye(3)
        model = DistMult(entities, np.ones((1, 3)), 3)

        report = evaluate(model, [(0, 0, 0), (1, 0, 1)], hits_at=(1,), setting='raw')

        self.assertEqual(report.mrr, 1.0)
        self.assertEqual(report.hits, {1: 1.0})


class TestEvalReport(BaseTestCase):
    def test_relative_drops(self):
        clean = EvalReport(0.5, {1: 0.2, 10: 0.0}, 'filtered', 100)
        attacked = EvalReport(0.4, {1: 0.1, 10: 0.0}, 'filtered', 100)

        drops = clean.relative_drops(attacked)

        self.assertAlmostEqual(drops['mrr'], 0.2)
        self.assertAlmostEqual(drops['hits@1'], 0.5)
        self.assertIsNone(drops['hits@10'])

    def test_mixed_settings(self):
        with self.assertRaisesRegex(KGRuleAttackException, 'Can not compare'):
            EvalReport(0.5, {}, 'filtered', 1).relative_drops(EvalReport(0.5, {}, 'raw', 1))

    def test_dict_form(self):
        report = EvalReport(
            0.25, {3: 0.5, 1: 0.25}, 'raw', 8,
            {'bornIn': {'mrr': 0.25, 'hits': {1: 0.25}, 'n_queries': 8}}
        )

        data = report.to_dict()

        self.assertEqual(data['hits'], {'1': 0.25, '3': 0.5})
        self.assertEqual(data['n-queries'], 8)
        self.assertEqual(data['per-relation']['bornIn']['n-queries'], 8)
        self.assertEqual(EvalReport.from_dict(data), report)
