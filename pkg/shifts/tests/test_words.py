from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.django import TestCase

from shifts.engine.exceptions import AlphabetError, LevelUnavailable, WordLengthError
from shifts.engine.measures import from_periodic, point_mass
from shifts.engine.words import (
    Alphabet, UPPoint, count_occurrences, dbar_up, dstar_block, freq, hamming_count,
    hamming_normalized, minimal_rotation, primitive_root,
)

from .oracles import naive_count, words

points = st.builds(UPPoint, words(max_size=4), words(min_size=1, max_size=4))


class WordBasicsTestCase(SimpleTestCase):
    """Alphabets, Hamming distances and frequencies"""

    def test_alphabet_needs_two_symbols(self):
        with self.assertRaises(AlphabetError):
            Alphabet(1)

    def test_alphabet_rejects_foreign_symbol(self):
        with self.assertRaises(AlphabetError):
            Alphabet(2).check((0, 1, 2))

    def test_hamming(self):
        self.assertEqual(hamming_count((0, 1, 1), (1, 1, 0)), 2)
        self.assertEqual(hamming_normalized((0, 1, 1), (1, 1, 0)), Fraction(2, 3))

    def test_hamming_unequal_lengths(self):
        with self.assertRaises(WordLengthError):
            hamming_count((0, 1), (0,))
        with self.assertRaises(WordLengthError):
            hamming_normalized((), ())

    def test_freq(self):
        self.assertEqual(freq((1,), (0, 1, 1)), Fraction(2, 3))
        self.assertEqual(freq((1, 1), (1, 1, 1)), Fraction(2, 3))
        self.assertEqual(freq((), (0, 1)), 1)
        self.assertEqual(freq((0, 0, 0), (0, 0)), 0)
        self.assertEqual(freq((0,), ()), 0)

    def test_primitive_root_and_rotation(self):
        self.assertEqual(primitive_root((0, 1, 0, 1)), (0, 1))
        self.assertEqual(primitive_root((0, 1, 0)), (0, 1, 0))
        self.assertEqual(minimal_rotation((1, 0, 0)), (0, 0, 1))

    def test_overlapping_occurrences(self):
        self.assertEqual(count_occurrences((1, 1), (1, 1, 1, 1)), 3)
        self.assertEqual(count_occurrences((0, 1, 0), (0, 1, 0, 1, 0)), 2)


class UPPointTestCase(SimpleTestCase):
    """Canonical ultimately periodic points and their distance"""

    def test_canonical_form(self):
        self.assertEqual(UPPoint((0, 1), (0, 1)), UPPoint((), (0, 1)))
        self.assertEqual(UPPoint((), (0, 1, 0, 1)).period, (0, 1))
        self.assertEqual(UPPoint((1, 0), (0,)).preperiod, (1,))

    def test_empty_period(self):
        with self.assertRaises(WordLengthError):
            UPPoint((0,), ())

    def test_shift(self):
        x = UPPoint((1,), (0, 1))
        self.assertEqual(x.shift(), UPPoint((), (0, 1)))
        self.assertEqual(x.shift(2), UPPoint((), (1, 0)))
        self.assertEqual(x.prefix(5), (1, 0, 1, 0, 1))

    def test_dbar_examples(self):
        self.assertEqual(dbar_up(UPPoint((), (0, 1)), UPPoint((), (0,))), Fraction(1, 2))
        self.assertEqual(dbar_up(UPPoint((), (0,)), UPPoint((), (1,))), 1)
        self.assertEqual(dbar_up(UPPoint((), (0, 0, 1)), UPPoint((), (0, 1))), Fraction(1, 2))

    def test_zero_distance_between_distinct_points(self):
        x, y = UPPoint((1,), (0,)), UPPoint((), (0,))
        self.assertNotEqual(x, y)
        self.assertEqual(dbar_up(x, y), 0)

    def test_alphabet_check(self):
        with self.assertRaises(AlphabetError):
            dbar_up(UPPoint((), (2,)), UPPoint((), (0,)), Alphabet(2))


class DstarBlockTestCase(SimpleTestCase):

    def test_constant_block_against_point_mass(self):
        value, tail = dstar_block((0,) * 8, point_mass(0, 3), 3)
        self.assertEqual(value, Fraction(1, 16))
        self.assertEqual(tail, Fraction(1, 4))

    def test_level_one_exact(self):
        value, _ = dstar_block((0, 1), from_periodic((0, 1), 1), 1)
        self.assertEqual(value, 0)

    def test_level_unavailable(self):
        with self.assertRaises(LevelUnavailable):
            dstar_block((0, 1), from_periodic((0, 1), 2), 3)


class WordPropertiesTestCase(TestCase):
    """Pseudometric axioms of dbar_up and the occurrence scanner against a naive count"""

    @settings(deadline=None, max_examples=300)
    @given(words(max_size=4), words(max_size=16))
    def test_count_matches_naive(self, pattern, text):
        expected = naive_count(pattern, text) if pattern else 0
        self.assertEqual(count_occurrences(pattern, text), expected)

    @settings(deadline=None, max_examples=300)
    @given(points, points, points)
    def test_pseudometric(self, x, y, z):
        self.assertEqual(dbar_up(x, y), dbar_up(y, x))
        self.assertEqual(dbar_up(x, x), 0)
        self.assertLessEqual(dbar_up(x, z), dbar_up(x, y) + dbar_up(y, z))
        self.assertTrue(0 <= dbar_up(x, y) <= 1)

    @settings(deadline=None, max_examples=300)
    @given(points, points, st.integers(0, 6))
    def test_shift_invariance(self, x, y, steps):
        self.assertEqual(dbar_up(x.shift(steps), y.shift(steps)), dbar_up(x, y))

    @settings(deadline=None, max_examples=200)
    @given(points, st.integers(0, 12))
    def test_canonical_points_agree_symbolwise(self, x, i):
        rebuilt = UPPoint(x.preperiod + x.period, x.period * 2)
        self.assertEqual(rebuilt, x)
        self.assertEqual(rebuilt.symbol(i), x.symbol(i))
