from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.django import TestCase

from shifts.engine.exceptions import (
    CapExceeded, EmptySetError, EmptyShiftError, InvalidParameter, NotInLanguage, WordLengthError,
)
from shifts.engine.metrics import (
    FinitePseudometricSet, best_trace, eps_tracing_probe, hausdorff, lang_hausdorff_hamming,
)
from shifts.engine.sofic import LabeledGraph, prune
from shifts.engine.words import hamming_count

from .oracles import brute_trace_cost, cycle_graph, full_shift, golden_mean, path_language, small_graphs, words


def distance(a, b):
    return Fraction(abs(a - b))


class HausdorffTestCase(SimpleTestCase):

    def test_asymmetric_sets(self):
        self.assertEqual(hausdorff([0], [1, 2], distance), 2)
        self.assertEqual(hausdorff([0, 2], [0, 2], distance), 0)

    def test_empty_set(self):
        with self.assertRaises(EmptySetError):
            hausdorff([], [1], distance)

    def test_finite_pseudometric_set(self):
        points = FinitePseudometricSet([0, 3, 5], distance)
        self.assertEqual(len(points), 3)
        self.assertEqual(points.distance(0, 2), 5)
        self.assertEqual(points.distance(2, 0), 5)
        self.assertEqual(points.hausdorff([0], [1, 2]), 5)


class BestTraceTestCase(SimpleTestCase):
    """Minimum Hamming tracing by dynamic programming"""

    def test_golden_mean_against_all_ones(self):
        g = golden_mean()
        for n in range(1, 15):
            target = (1,) * n
            trace = best_trace(g, target)
            self.assertEqual(trace.cost, Fraction(n // 2, n))
            self.assertEqual(trace.cost, brute_trace_cost(g, target))
            self.assertTrue(g.reads(trace.witness))

    def test_witness_is_lexicographically_least(self):
        self.assertEqual(best_trace(golden_mean(), (1, 1)).witness, (0, 1))

    def test_word_of_the_shift_costs_nothing(self):
        trace = best_trace(golden_mean(), (1, 0, 0, 1, 0))
        self.assertEqual(trace.cost, 0)
        self.assertEqual(trace.witness, (1, 0, 0, 1, 0))

    def test_empty_target(self):
        with self.assertRaises(WordLengthError):
            best_trace(golden_mean(), ())

    def test_no_long_path(self):
        with self.assertRaises(EmptyShiftError):
            best_trace(LabeledGraph(2, ((0, 1, 0),)), (0, 0))

    def test_cell_cap(self):
        with self.assertRaises(CapExceeded):
            best_trace(cycle_graph(10), (0,) * 20, max_cells=50)


class TracingProbeTestCase(SimpleTestCase):

    def test_segments_that_glue(self):
        self.assertEqual(eps_tracing_probe(golden_mean(), [(1, 0), (1, 0)], 4), 0)

    def test_segments_that_clash(self):
        self.assertEqual(eps_tracing_probe(golden_mean(), [(0, 1), (1, 0)], 4), Fraction(1, 4))
        self.assertEqual(eps_tracing_probe(golden_mean(), [(0, 1), (1, 0)], 2), 0)

    def test_segment_outside_the_language(self):
        with self.assertRaises(NotInLanguage) as raised:
            eps_tracing_probe(golden_mean(), [(1, 0), (1, 1)], 4)
        self.assertEqual(raised.exception.index, 1)

    def test_horizon_range(self):
        with self.assertRaises(WordLengthError):
            eps_tracing_probe(golden_mean(), [(1, 0)], 3)


class LanguageDistanceTestCase(SimpleTestCase):

    def test_exact_full_shift_against_golden_mean(self):
        distance = lang_hausdorff_hamming(full_shift(), golden_mean(), 4)
        self.assertEqual(distance.value, Fraction(1, 2))
        self.assertEqual(distance.x_side, Fraction(1, 2))
        self.assertEqual(distance.y_side, 0)
        self.assertEqual(distance.witness, (1, 1, 1, 1))

    def test_identical_languages(self):
        self.assertEqual(lang_hausdorff_hamming(golden_mean(), golden_mean(), 5).value, 0)

    def test_sampled_mode_is_a_lower_bound(self):
        exact = lang_hausdorff_hamming(full_shift(), golden_mean(), 6).value
        first = lang_hausdorff_hamming(full_shift(), golden_mean(), 6, mode='sampled', samples=50, seed=3)
        second = lang_hausdorff_hamming(full_shift(), golden_mean(), 6, mode='sampled', samples=50, seed=3)
        self.assertIsNone(first.value)
        self.assertLessEqual(first.lower_bound, exact)
        self.assertEqual(first.lower_bound, second.lower_bound)
        self.assertEqual(first.witness, second.witness)

    def test_unknown_mode(self):
        with self.assertRaises(InvalidParameter):
            lang_hausdorff_hamming(full_shift(), golden_mean(), 3, mode='fast')


class TracingPropertiesTestCase(TestCase):

    @settings(deadline=None, max_examples=200)
    @given(small_graphs(), words(min_size=1, max_size=7))
    def test_best_trace_matches_exhaustive_search(self, g, target):
        try:
            trace = best_trace(g, target)
        except EmptyShiftError:
            self.assertEqual(path_language(g, len(target)), set())
            return
        self.assertEqual(trace.cost, brute_trace_cost(g, target))
        self.assertTrue(g.reads(trace.witness))
        self.assertEqual(Fraction(hamming_count(trace.witness, target), len(target)), trace.cost)

    @settings(deadline=None, max_examples=150)
    @given(small_graphs(), small_graphs(), words(min_size=1, max_size=6))
    def test_extra_edges_never_raise_the_cost(self, g, extra, target):
        vertices = max(g.vertex_count, extra.vertex_count)
        larger = LabeledGraph(vertices, g.edges + extra.edges, g.alphabet)
        try:
            before = best_trace(g, target).cost
        except EmptyShiftError:
            return
        self.assertLessEqual(best_trace(larger, target).cost, before)

    @settings(deadline=None, max_examples=100)
    @given(st.data())
    def test_subshift_side_is_zero(self, data):
        g = data.draw(small_graphs())
        kept = data.draw(st.lists(st.sampled_from(g.edges), min_size=1, unique=True))
        try:
            sub = prune(LabeledGraph(g.vertex_count, tuple(kept), g.alphabet))
        except EmptyShiftError:
            return
        for n in range(1, 5):
            self.assertEqual(lang_hausdorff_hamming(sub, g, n).x_side, 0)
