from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.django import TestCase

from shifts.constructions.checks import first_failure
from shifts.constructions.oxtoby import (
    OxtobyScale, brute_window_count, oxtoby_levels, oxtoby_prefix, oxtoby_verify,
    oxtoby_window_counts,
)
from shifts.engine.exceptions import CapExceeded, ConstructionError, InvalidParameter


class OxtobyScaleTestCase(SimpleTestCase):

    def test_invalid_scales(self):
        for p in [(1, 2, 4), (1, 3, 10), (2, 6, 18), (1,)]:
            with self.subTest(p=p), self.assertRaises(ConstructionError):
                OxtobyScale(p)

    def test_geometric(self):
        scale = OxtobyScale.geometric(100, 4)
        self.assertEqual(scale.p, (1, 100, 10 ** 4, 10 ** 6))
        self.assertEqual(scale.top, 3)
        self.assertEqual(scale.scale_sum(), Fraction(3, 50))


class OxtobySequenceTestCase(SimpleTestCase):

    def test_small_prefix(self):
        # M_1 = [-3, 3) + 9N covers 0, 1, 2 and 6, 7, 8
        self.assertEqual(oxtoby_prefix(OxtobyScale((1, 3, 9)), 9), (1, 1, 1, 0, 0, 0, 1, 1, 1))

    def test_levels(self):
        levels = oxtoby_levels(OxtobyScale((1, 3, 9, 27)), 27)
        self.assertEqual(int(levels[0]), 1)
        self.assertEqual(int(levels[3]), 2)
        self.assertEqual(int(levels[13]), 3)

    def test_prefix_beyond_the_scale(self):
        with self.assertRaises(ConstructionError):
            oxtoby_prefix(OxtobyScale((1, 3, 9)), 10)

    def test_prefix_cap(self):
        with self.assertRaises(CapExceeded):
            oxtoby_prefix(OxtobyScale((1, 3, 9)), 9, max_prefix=5)


class OxtobyVerifyTestCase(SimpleTestCase):

    def test_hundredfold_scale(self):
        report = oxtoby_verify(OxtobyScale.geometric(100, 4), Fraction(1, 10), 2)
        self.assertTrue(report.ok, first_failure(report.checks))
        first, second = report.levels
        self.assertEqual(first['majority_symbol'], 0)
        self.assertEqual(first['majority_frequency'], Fraction(98, 100))
        self.assertEqual(second['majority_symbol'], 1)
        self.assertEqual(second['majority_frequency'], Fraction(9804, 10000))
        self.assertEqual(second['certified_lower_bound'], Fraction(96, 100))

    def test_scale_condition_fails(self):
        report = oxtoby_verify(OxtobyScale((1, 4, 16, 64)), Fraction(1, 10), 1)
        self.assertFalse(report.ok)
        failure = first_failure(report.checks)
        self.assertEqual(failure.name, 'scale_condition')
        self.assertEqual(failure.lhs, Fraction(3, 2))

    def test_level_range(self):
        with self.assertRaises(InvalidParameter):
            oxtoby_verify(OxtobyScale.geometric(100, 4), Fraction(1, 10), 3)


class WindowCountPropertiesTestCase(TestCase):

    @settings(deadline=None, max_examples=50)
    @given(st.integers(3, 6), st.integers(3, 5), st.data())
    def test_closed_form_matches_brute_force(self, ratio, terms, data):
        scale = OxtobyScale.geometric(ratio, terms)
        k = data.draw(st.integers(1, scale.top - 1))
        ell = data.draw(st.integers(1, k))
        self.assertEqual(oxtoby_window_counts(scale, ell, k), brute_window_count(scale, ell, k))
