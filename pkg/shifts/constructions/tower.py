"""
Periodic tower ``V_{k+1} = V_k^{a_{k+1}} W_{k+1} 1^{b_{k+1}}``.

``W_0, W_1, ...`` enumerates words (length first, then lexicographic). ``b`` pads
``|W_{k+1}| + b`` to a multiple of ``|V_k|`` and ``a`` is the least power keeping the
appended part below a ``δ_{k+1}`` share of ``V_{k+1}``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import count, islice, product
from math import floor

from ..conf import cap
from ..engine.exceptions import ConstructionError
from ..engine.measures import from_periodic
from ..engine.words import UPPoint, dbar_up, hamming_normalized
from .checks import Check

logger = logging.getLogger(__name__)


def canonical_words(alphabet_size=2):
    """0, 1, 00, 01, 10, 11, 000, ..."""
    for length in count(1):
        yield from product(range(alphabet_size), repeat=length)


@dataclass(frozen=True)
class TowerParams:
    W: tuple
    deltas: tuple

    def __post_init__(self):
        W = tuple(tuple(w) for w in self.W)
        deltas = tuple(Fraction(d) for d in self.deltas)
        if any(not w for w in W):
            raise ConstructionError("Tower words must be nonempty")
        if any(d <= 0 for d in deltas):
            raise ConstructionError("Tower deltas must be positive")
        if sum(deltas, Fraction(0)) >= Fraction(1, 2):
            raise ConstructionError("The deltas must sum to less than 1/2")
        if len(W) < len(deltas) + 1:
            raise ConstructionError("Need one word per level plus W_0")
        object.__setattr__(self, 'W', W)
        object.__setattr__(self, 'deltas', deltas)

    @classmethod
    def canonical(cls, depth, ratio=Fraction(1, 4), alphabet_size=2):
        """Canonical enumeration with ``δ_k = ratio^k``"""
        ratio = Fraction(ratio)
        return cls(tuple(islice(canonical_words(alphabet_size), depth + 1)),
                   tuple(ratio ** k for k in range(1, depth + 1)))

    def delta(self, k):
        """``δ_k`` for ``k >= 1``"""
        return self.deltas[k - 1]


@dataclass(frozen=True)
class TowerLevel:
    k: int
    V: tuple
    a: int
    b: int


@dataclass
class Tower:
    params: TowerParams
    levels: list
    truncated: bool = False

    @property
    def depth(self):
        return len(self.levels) - 1


def tower_build(params, K, max_prefix=None):
    """Build ``V_0 .. V_K``; stops early (``truncated``) when ``|V_k|`` would pass the cap"""
    if K > len(params.deltas):
        raise ConstructionError(f"Only {len(params.deltas)} deltas supplied for depth {K}")
    limit = cap('SHIFTS_MAX_PREFIX', max_prefix)
    V = params.W[0]
    levels = [TowerLevel(0, V, 0, 0)]
    for k in range(K):
        W = params.W[k + 1]
        delta = params.delta(k + 1)
        b = (-len(W)) % len(V)
        tail = len(W) + b
        # least a >= 1 with tail / (a |V| + tail) < delta
        a = max(1, floor((tail / delta - tail) / len(V)) + 1)
        length = a * len(V) + tail
        if length > limit:
            logger.warning("Tower stopped at depth %d: |V_%d| = %d exceeds the cap", k, k + 1, length)
            return Tower(params, levels, truncated=True)
        V = V * a + W + (1,) * b
        levels.append(TowerLevel(k + 1, V, a, b))
    return Tower(params, levels)


def tower_verify(tower):
    """
    Exact checks on a built tower:

    * structure: ``V_{k+1} = V_k^a W_{k+1} 1^b`` with ``|V_k|`` dividing ``|V_{k+1}|``;
    * the appended share is below ``δ_{k+1}``;
    * ``dbar(V_k^∞, V_{k+1}^∞) <= δ_{k+1}``;
    * ``μ_n[W_k] >= (1/|V_k|) Π_{j=k+1..n} (1 - δ_j)`` for ``k <= n``;
    * partial sums: ``dbar(V_k^∞, V_n^∞) <= Σ_{j=k+1..n} δ_j`` and ``Σ δ_j < 1/2``.
    """
    params, levels = tower.params, tower.levels
    checks = []
    for k in range(tower.depth):
        V, nxt = levels[k].V, levels[k + 1]
        W = params.W[k + 1]
        delta = params.delta(k + 1)
        checks.append(Check.truth(f'structure[{k + 1}]', nxt.V == V * nxt.a + W + (1,) * nxt.b))
        checks.append(Check.equal(f'divisible[{k}]', len(nxt.V) % len(V), 0))
        checks.append(Check.less(f'appended_share[{k + 1}]', Fraction(len(W) + nxt.b, len(nxt.V)), delta))
        if len(nxt.V) % len(V) == 0:
            c = len(nxt.V) // len(V)
            hamming = hamming_normalized(V * c, nxt.V)
            distance = dbar_up(UPPoint((), V), UPPoint((), nxt.V))
            checks.append(Check.equal(f'dbar_matches_hamming[{k}]', distance, hamming))
            checks.append(Check.at_most(f'dbar_step[{k}]', distance, delta))

    for n in range(tower.depth + 1):
        V_n = levels[n].V
        product_bound = Fraction(1)
        for k in range(n, -1, -1):
            if k < n:
                product_bound *= 1 - params.delta(k + 1)
            W_k = params.W[k]
            mass = from_periodic(V_n, len(W_k)).prob(W_k)
            bound = product_bound / len(levels[k].V)
            checks.append(Check.at_least(f'cylinder_mass[{k},{n}]', mass, bound))

    partial = Fraction(0)
    for n in range(1, tower.depth + 1):
        partial += params.delta(n)
        checks.append(Check.less(f'delta_partial_sum[{n}]', partial, Fraction(1, 2)))
        for k in range(n - 1):
            distance = dbar_up(UPPoint((), levels[k].V), UPPoint((), levels[n].V))
            tail = sum((params.delta(j) for j in range(k + 1, n + 1)), Fraction(0))
            checks.append(Check.at_most(f'cauchy[{k},{n}]', distance, tail))
    return checks
