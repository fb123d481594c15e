from dataclasses import replace
from fractions import Fraction

from django.test import SimpleTestCase

from shifts.constructions.checks import first_failure
from shifts.constructions.tower import TowerParams, canonical_words, tower_build, tower_verify
from shifts.engine.exceptions import ConstructionError


class TowerParamsTestCase(SimpleTestCase):

    def test_canonical_enumeration(self):
        params = TowerParams.canonical(3)
        self.assertEqual(params.W, ((0,), (1,), (0, 0), (0, 1)))
        self.assertEqual(params.deltas, (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)))
        self.assertEqual(params.delta(2), Fraction(1, 16))

    def test_words_are_length_first(self):
        words = canonical_words()
        self.assertEqual([next(words) for _ in range(7)],
                         [(0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1), (0, 0, 0)])

    def test_invalid_parameters(self):
        with self.assertRaises(ConstructionError):
            TowerParams(((0,), (1,)), (Fraction(1, 2),))
        with self.assertRaises(ConstructionError):
            TowerParams(((0,),), (Fraction(1, 4),))
        with self.assertRaises(ConstructionError):
            TowerParams(((0,), ()), (Fraction(1, 4),))


class TowerBuildTestCase(SimpleTestCase):

    def setUp(self):
        self.tower = tower_build(TowerParams.canonical(3), 3)

    def test_lengths(self):
        self.assertEqual([len(level.V) for level in self.tower.levels], [1, 5, 85, 5525])
        self.assertEqual([level.a for level in self.tower.levels[1:]], [4, 16, 64])
        self.assertEqual([level.b for level in self.tower.levels[1:]], [0, 3, 83])
        self.assertEqual(self.tower.levels[1].V, (0, 0, 0, 0, 1))
        self.assertFalse(self.tower.truncated)

    def test_all_checks_pass(self):
        checks = tower_verify(self.tower)
        self.assertIsNone(first_failure(checks))
        self.assertIn('cauchy[0,2]', {c.name for c in checks})

    def test_flipped_level_is_caught(self):
        levels = list(self.tower.levels)
        V2 = levels[2].V
        levels[2] = replace(levels[2], V=(1 - V2[0],) + V2[1:])
        broken = replace(self.tower, levels=levels)
        checks = {c.name: c for c in tower_verify(broken)}
        self.assertFalse(checks['structure[2]'].ok)
        self.assertFalse(checks['dbar_step[2]'].ok)
        self.assertEqual(checks['dbar_step[2]'].lhs, Fraction(130, 5525))

    def test_truncation_at_the_prefix_cap(self):
        truncated = tower_build(TowerParams.canonical(3), 3, max_prefix=100)
        self.assertTrue(truncated.truncated)
        self.assertEqual(truncated.depth, 2)
        self.assertIsNone(first_failure(tower_verify(truncated)))

    def test_depth_beyond_deltas(self):
        with self.assertRaises(ConstructionError):
            tower_build(TowerParams.canonical(2), 3)
