"""
Oxtoby sequences: ``x_i = k(i) mod 2`` where ``k(i)`` is the least ``k >= 1`` with
``i`` in ``M_k = ([-p_k, p_k) + p_{k+1} N) ∩ N``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..conf import cap
from ..engine.exceptions import CapExceeded, ConstructionError, InvalidParameter
from ..engine.measures import from_word, hausdorff_dbar_n, point_mass, transport_dbar_n
from .checks import Check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OxtobyScale:
    p: tuple

    def __post_init__(self):
        p = tuple(int(v) for v in self.p)
        if len(p) < 2 or p[0] != 1:
            raise ConstructionError("A scale starts with p_0 = 1 and has at least two terms")
        for a, b in zip(p, p[1:]):
            if b % a:
                raise ConstructionError(f"Scale terms must divide each other, {a} does not divide {b}")
            if b < 3 * a:
                raise ConstructionError(f"Consecutive scale ratio must be at least 3, got {b}/{a}")
        object.__setattr__(self, 'p', p)

    @classmethod
    def geometric(cls, ratio, terms):
        return cls(tuple(ratio ** k for k in range(terms)))

    @property
    def top(self):
        return len(self.p) - 1

    def scale_sum(self):
        """``Σ 2 p_k / p_{k+1}`` over the supplied terms, starting at ``k = 0``"""
        return sum((Fraction(2 * a, b) for a, b in zip(self.p, self.p[1:])), Fraction(0))


def in_window(positions, p, k):
    """Vectorized ``i ∈ M_k``: ``i mod p_{k+1}`` lies in ``[0, p_k) ∪ [p_{k+1} - p_k, p_{k+1})``"""
    residue = positions % p[k + 1]
    return (residue < p[k]) | (residue >= p[k + 1] - p[k])


def oxtoby_levels(scale, N, max_prefix=None):
    """``k(i)`` for ``i < N``; positions below ``p_top`` not caught earlier sit in ``M_top``"""
    limit = cap('SHIFTS_MAX_PREFIX', max_prefix)
    if N > limit:
        raise CapExceeded('max_prefix', limit, lower_bound=N, detail='Oxtoby prefix')
    p = scale.p
    if N > p[-1]:
        raise ConstructionError(f"The scale only determines the first {p[-1]} symbols, {N} requested")
    positions = np.arange(N, dtype=np.int64)
    levels = np.zeros(N, dtype=np.int64)
    for k in range(1, scale.top):
        fresh = (levels == 0) & in_window(positions, p, k)
        levels[fresh] = k
    levels[levels == 0] = scale.top
    return levels


def oxtoby_array(scale, N, max_prefix=None):
    return (oxtoby_levels(scale, N, max_prefix) % 2).astype(np.int8)


def oxtoby_prefix(scale, N, max_prefix=None):
    return tuple(int(s) for s in oxtoby_array(scale, N, max_prefix))


def oxtoby_window_counts(scale, ell, k):
    """``|M_ell ∩ [0, p_{k+1})| = 2 p_ell p_{k+1} / p_{ell+1}``"""
    p = scale.p
    if not 1 <= ell <= k or k + 1 > scale.top:
        raise InvalidParameter(f"Need 1 <= ell <= k < {scale.top}, got ell={ell}, k={k}")
    return 2 * p[ell] * p[k + 1] // p[ell + 1]


def brute_window_count(scale, ell, k):
    positions = np.arange(scale.p[k + 1], dtype=np.int64)
    return int(in_window(positions, scale.p, ell).sum())


@dataclass
class OxtobyReport:
    scale: tuple
    delta: Fraction
    levels: list
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def oxtoby_verify(scale, delta, k, max_prefix=None):
    """
    Finite-horizon counting checks behind the two-fixed-point distance estimate.

    For each level ``j = 1..k`` the horizon is ``p_{j+1}``; the majority symbol there is
    ``(j+1) mod 2`` and its frequency must exceed ``1 - δ``. The level-1 empirical
    distribution must be within ``δ`` of the matching fixed-point mass.
    """
    delta = Fraction(delta)
    p = scale.p
    if not 1 <= k <= scale.top - 1:
        raise InvalidParameter(f"k must lie in 1..{scale.top - 1} for this scale")
    checks = [Check.less('scale_condition', scale.scale_sum(), delta)]
    horizon = p[k + 1]
    x = oxtoby_array(scale, horizon, max_prefix)
    levels, empirical = [], []
    previous_majority = None
    for j in range(1, k + 1):
        H = p[j + 1]
        window = x[:H]
        majority = (j + 1) % 2
        count = int((window == majority).sum())
        frequency = Fraction(count, H)
        counted = [oxtoby_window_counts(scale, ell, j) for ell in range(1, j + 1)]
        for ell, closed in zip(range(1, j + 1), counted):
            checks.append(Check.equal(f'window_count[{ell},{j}]', brute_window_count(scale, ell, j), closed))
        bound = 1 - Fraction(sum(counted), H)
        checks.append(Check.at_least(f'majority_bound[{j}]', frequency, bound))
        checks.append(Check.greater(f'mismatch_density[{j}]', frequency, 1 - delta))
        if previous_majority is not None:
            checks.append(Check.truth(f'parity_alternates[{j}]', majority != previous_majority))
        previous_majority = majority

        mu = from_word(tuple(int(s) for s in window), 1)
        empirical.append(mu)
        distance = transport_dbar_n(mu, point_mass(majority, 1), 1).value
        checks.append(Check.less(f'fixed_point_transport[{j}]', distance, delta))
        levels.append({
            'level': j, 'horizon': H, 'majority_symbol': majority, 'majority_frequency': frequency,
            'certified_lower_bound': bound, 'transport_to_fixed_point': distance,
        })
        logger.debug("Oxtoby level %d: majority %d frequency %s", j, majority, frequency)

    fixed = [point_mass(0, 1), point_mass(1, 1)]
    spread = hausdorff_dbar_n(empirical, fixed, 1) if len(empirical) > 1 else None
    if spread is not None:
        checks.append(Check.less('empirical_vs_fixed_points', spread, delta))
    return OxtobyReport(scale=p, delta=delta, levels=levels, checks=checks)
