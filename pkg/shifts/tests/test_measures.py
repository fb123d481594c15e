from fractions import Fraction
from itertools import product
from math import lcm

from django.test import SimpleTestCase
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.django import TestCase

from shifts.engine.exceptions import CapExceeded, InvalidParameter, LevelUnavailable
from shifts.engine.measures import (
    BlockDistribution, alpha_good_joining, cycle_measures, dstar_n, from_periodic, from_word, hausdorff_dbar_n,
    marginalize, periodic_label_words, point_mass, transport_dbar_n,
)

from .oracles import assignment_dbar, full_shift, golden_mean, scanned_dstar, words


class BlockDistributionTestCase(SimpleTestCase):

    def test_from_periodic(self):
        mu = from_periodic((0, 0, 1), 2)
        third = Fraction(1, 3)
        self.assertEqual(mu.probs, {(0, 0): third, (0, 1): third, (1, 0): third})
        self.assertTrue(mu.is_consistent())

    def test_from_word_wraps_around(self):
        mu = from_word((0, 1, 1, 0), 2)
        quarter = Fraction(1, 4)
        self.assertEqual(mu.probs, {(0, 1): quarter, (1, 1): quarter, (1, 0): quarter, (0, 0): quarter})
        self.assertTrue(mu.is_consistent())

    def test_marginal_and_prob(self):
        mu = from_periodic((0, 0, 1), 2)
        self.assertEqual(mu.marginal(1).probs, {(0,): Fraction(2, 3), (1,): Fraction(1, 3)})
        self.assertEqual(mu.prob((0,)), Fraction(2, 3))
        self.assertEqual(mu.prob(()), 1)
        self.assertEqual(mu.prob((1, 1)), 0)
        with self.assertRaises(LevelUnavailable):
            mu.prob((0, 0, 1))

    def test_probabilities_must_sum_to_one(self):
        with self.assertRaises(InvalidParameter):
            BlockDistribution(1, (((0,), Fraction(1, 2)),))

    def test_zero_entries_are_dropped(self):
        mu = BlockDistribution.from_mapping({(0,): 1, (1,): 0})
        self.assertEqual(mu.support(), [(0,)])

    def test_inconsistent_table(self):
        self.assertFalse(BlockDistribution.from_mapping({(0, 1): 1}).is_consistent())


class TransportTestCase(SimpleTestCase):
    """Exact n-block transport"""

    def test_opposite_point_masses(self):
        for n in range(1, 5):
            self.assertEqual(transport_dbar_n(point_mass(0, n), point_mass(1, n), n).value, 1)

    def test_alternating_against_constant(self):
        per01, per0 = from_periodic((0, 1), 6), from_periodic((0,), 6)
        for n in range(1, 7):
            result = transport_dbar_n(per01, per0, n)
            self.assertEqual(result.value, Fraction(1, 2))
            self.assertTrue(result.witness.satisfies_marginals(per01.marginal(n), per0.marginal(n)))
            self.assertEqual(result.witness.cost(), result.value)
            if n <= 3:
                self.assertEqual(result.value, assignment_dbar((0, 1), (0,), n))

    def test_level_unavailable(self):
        with self.assertRaises(LevelUnavailable):
            transport_dbar_n(from_periodic((0, 1), 2), from_periodic((0,), 4), 3)

    def test_cell_cap(self):
        with self.assertRaises(CapExceeded):
            transport_dbar_n(from_periodic((0, 1), 1), point_mass(0, 1), 1, max_cells=1)


class DstarTestCase(SimpleTestCase):

    def setUp(self):
        self.per01 = from_periodic((0, 1), 2)
        self.per0 = from_periodic((0,), 2)

    def test_dstar(self):
        self.assertEqual(dstar_n(self.per01, self.per0, 2), Fraction(1, 2))
        self.assertEqual(dstar_n(self.per01, self.per01, 2), 0)

    def test_alpha_good_joining(self):
        good = alpha_good_joining(self.per01, self.per0, 2, Fraction(1, 2))
        self.assertTrue(good.feasible)
        self.assertEqual(good.off_mass, 0)
        self.assertEqual(good.witness.mass_within(Fraction(1, 2)), 1)
        bad = alpha_good_joining(self.per01, self.per0, 2, Fraction(1, 4))
        self.assertFalse(bad.feasible)
        self.assertEqual(bad.off_mass, 1)
        self.assertIsNone(bad.witness)

    def test_alpha_range(self):
        with self.assertRaises(InvalidParameter):
            alpha_good_joining(self.per01, self.per0, 2, 2)


class CycleMeasuresTestCase(SimpleTestCase):

    def test_cycle_words(self):
        self.assertEqual(periodic_label_words(full_shift(), 2), [(0,), (1,), (0, 1)])
        self.assertEqual(set(periodic_label_words(golden_mean(), 2)), {(0,), (0, 1)})

    def test_hausdorff_between_cycle_measures(self):
        full = cycle_measures(full_shift(), 2, level=2)
        golden = cycle_measures(golden_mean(), 2, level=2)
        self.assertEqual(len(full), 3)
        self.assertEqual(hausdorff_dbar_n(full, golden, 2), Fraction(1, 2))
        self.assertEqual(hausdorff_dbar_n(golden, golden, 2), 0)


periods = words(min_size=1, max_size=3)


class TransportPropertiesTestCase(TestCase):

    @settings(deadline=None, max_examples=60)
    @given(periods, periods, st.integers(1, 3))
    def test_matches_exhaustive_assignment(self, V, U, n):
        assume(lcm(len(V), len(U)) <= 6)
        value = transport_dbar_n(from_periodic(V, n), from_periodic(U, n), n).value
        self.assertEqual(value, assignment_dbar(V, U, n))

    @settings(deadline=None, max_examples=100)
    @given(periods, periods, periods, st.integers(1, 4))
    def test_pseudometric(self, V, U, W, n):
        mu, nu, rho = (from_periodic(p, n) for p in (V, U, W))

        def d(a, b):
            return transport_dbar_n(a, b, n).value

        self.assertEqual(d(mu, mu), 0)
        self.assertEqual(d(mu, nu), d(nu, mu))
        self.assertLessEqual(d(mu, rho), d(mu, nu) + d(nu, rho))
        self.assertLessEqual(dstar_n(mu, nu, n), 1)

    @settings(deadline=None, max_examples=60)
    @given(periods, periods, st.sampled_from([(1, 2), (1, 3), (1, 4), (2, 4)]))
    def test_distance_grows_with_the_level(self, V, U, levels):
        j, n = levels
        mu, nu = from_periodic(V, n), from_periodic(U, n)
        self.assertEqual(marginalize(marginalize(mu, n), j), marginalize(mu, j))
        coarse = transport_dbar_n(marginalize(mu, j), marginalize(nu, j), j).value
        self.assertLessEqual(coarse, transport_dbar_n(mu, nu, n).value)

    @settings(deadline=None, max_examples=60)
    @given(periods, periods, st.integers(1, 3))
    def test_alpha_good_joining_against_transport(self, V, U, n):
        mu, nu = from_periodic(V, n), from_periodic(U, n)
        value = transport_dbar_n(mu, nu, n).value
        for i in range(1, 13):
            alpha = Fraction(i, 12)
            good = alpha_good_joining(mu, nu, n, alpha)
            if value <= alpha * alpha:
                self.assertTrue(good.feasible, msg=f'alpha={alpha}')
            if good.feasible:
                self.assertLessEqual(value, 2 * alpha, msg=f'alpha={alpha}')

    @settings(deadline=None, max_examples=60)
    @given(periods, periods, st.integers(1, 3))
    def test_dstar_matches_a_grid_scan(self, V, U, n):
        mu, nu = from_periodic(V, n), from_periodic(U, n)
        self.assertEqual(dstar_n(mu, nu, n), scanned_dstar(mu, nu, n, lcm(n, len(V), len(U))))


class PeriodicConsistencyTestCase(SimpleTestCase):

    def test_every_short_binary_period(self):
        for length in range(1, 11):
            for V in product((0, 1), repeat=length):
                for k in range(1, 5):
                    mu = from_periodic(V, k)
                    self.assertTrue(mu.is_consistent(), msg=f'V={V}, k={k}')
                    self.assertEqual(sum(mu.probs.values()), 1)
