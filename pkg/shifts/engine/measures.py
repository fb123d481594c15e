"""
Block distributions and n-block transport distances.

A :class:`BlockDistribution` is the level-k cylinder table of an invariant measure.
Transport problems are solved exactly: probabilities are scaled to integers by the
least common denominator and handed to networkx's network simplex, whose integer
optimum converts back to exact fractions.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import networkx as nx

from ..conf import cap
from .exceptions import CapExceeded, InvalidParameter, LevelUnavailable, ShiftError, WordLengthError
from .metrics import hausdorff
from .sofic import as_graph
from .words import hamming_count, minimal_rotation, primitive_root

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockDistribution:
    """Probabilities of the words of length ``level``; zero entries are dropped"""

    level: int
    entries: tuple
    alphabet_size: int = 2

    def __post_init__(self):
        if self.level < 1:
            raise WordLengthError("Block distributions have level >= 1")
        cleaned = {}
        for word, p in self.entries:
            word, p = tuple(word), Fraction(p)
            if len(word) != self.level:
                raise WordLengthError(f"Word {word} does not have length {self.level}")
            if p < 0:
                raise InvalidParameter(f"Negative probability {p} for {word}")
            if p:
                cleaned[word] = cleaned.get(word, Fraction(0)) + p
        if sum(cleaned.values(), Fraction(0)) != 1:
            raise InvalidParameter("Block probabilities must sum to 1")
        object.__setattr__(self, 'entries', tuple(sorted(cleaned.items())))

    @classmethod
    def from_mapping(cls, probs, alphabet_size=2):
        probs = dict(probs)
        level = len(next(iter(probs)))
        return cls(level, tuple(probs.items()), alphabet_size)

    @cached_property
    def probs(self):
        return dict(self.entries)

    def support(self):
        return [w for w, _ in self.entries]

    def prob(self, word):
        word = tuple(word)
        if len(word) > self.level:
            raise LevelUnavailable(len(word), self.level)
        if len(word) < self.level:
            return self.marginal(len(word)).prob(word) if word else Fraction(1)
        return self.probs.get(word, Fraction(0))

    def marginal(self, j):
        return marginalize(self, j)

    def is_consistent(self):
        """Stationarity: prefix and suffix marginals of every (k-1)-word agree"""
        if self.level == 1:
            return True
        prefix, suffix = Counter(), Counter()
        for word, p in self.entries:
            prefix[word[:-1]] += p
            suffix[word[1:]] += p
        keys = set(prefix) | set(suffix)
        return all(prefix[w] == suffix[w] for w in keys)


def from_periodic(V, k, alphabet_size=None):
    """Cylinders of the periodic orbit of ``V^∞``: cyclic occurrence counts over ``|V|``"""
    V = tuple(V)
    if not V:
        raise WordLengthError("The period must be nonempty")
    if k < 1:
        raise WordLengthError("Level must be positive")
    n = len(V)
    counts = Counter(tuple(V[(i + j) % n] for j in range(k)) for i in range(n))
    size = alphabet_size or max(2, max(V) + 1)
    return BlockDistribution(k, tuple((w, Fraction(c, n)) for w, c in counts.items()), size)


def from_word(B, k, alphabet_size=None):
    """Cyclic empirical distribution of a finite word (stationary by construction)"""
    return from_periodic(B, k, alphabet_size)


def point_mass(symbol, k, alphabet_size=2):
    return from_periodic((symbol,), k, alphabet_size)


def marginalize(mu, j):
    if not 1 <= j <= mu.level:
        raise LevelUnavailable(j, mu.level)
    if j == mu.level:
        return mu
    totals = Counter()
    for word, p in mu.entries:
        totals[word[:j]] += p
    return BlockDistribution(j, tuple(totals.items()), mu.alphabet_size)


def at_level(mu, n):
    if mu.level < n:
        raise LevelUnavailable(n, mu.level)
    return marginalize(mu, n)


@dataclass(frozen=True)
class Joining:
    """Transport plan between two level-n distributions: ``mass[(u, w)]``"""

    level: int
    mass: dict

    def row_marginal(self):
        totals = Counter()
        for (u, _), p in self.mass.items():
            totals[u] += p
        return dict(totals)

    def column_marginal(self):
        totals = Counter()
        for (_, w), p in self.mass.items():
            totals[w] += p
        return dict(totals)

    def satisfies_marginals(self, mu, nu):
        return self.row_marginal() == mu.probs and self.column_marginal() == nu.probs

    def cost(self):
        return sum((p * Fraction(hamming_count(u, w), self.level) for (u, w), p in self.mass.items()),
                   Fraction(0))

    def mass_within(self, alpha):
        """``λ(Δ_n(α))``: mass on pairs at normalized Hamming distance at most ``alpha``"""
        return sum((p for (u, w), p in self.mass.items()
                    if Fraction(hamming_count(u, w), self.level) <= alpha), Fraction(0))


def _solve_transport(mu, nu, weight, max_cells):
    rows, cols = mu.entries, nu.entries
    cells = len(rows) * len(cols)
    if cells > max_cells:
        raise CapExceeded('max_joining_cells', max_cells, lower_bound=cells, detail='transport problem')
    scale = math.lcm(*(p.denominator for _, p in rows + cols))
    network = nx.DiGraph()
    for i, (_, p) in enumerate(rows):
        network.add_node(('u', i), demand=-int(p * scale))
    for j, (_, q) in enumerate(cols):
        network.add_node(('w', j), demand=int(q * scale))
    for i, (u, _) in enumerate(rows):
        for j, (w, _) in enumerate(cols):
            network.add_edge(('u', i), ('w', j), weight=weight(u, w))
    cost, flow = nx.network_simplex(network)
    mass = {}
    for i, (u, _) in enumerate(rows):
        for (_, j), amount in flow[('u', i)].items():
            if amount:
                mass[(u, cols[j][0])] = Fraction(amount, scale)
    return Fraction(cost, scale), Joining(len(rows[0][0]), mass)


@dataclass(frozen=True)
class TransportResult:
    level: int
    value: Fraction
    witness: Joining


def transport_dbar_n(mu, nu, n, max_cells=None):
    """
    Minimum expected normalized Hamming distance over joinings of the level-n marginals.
    """
    mu, nu = at_level(mu, n), at_level(nu, n)
    total, joining = _solve_transport(mu, nu, hamming_count, cap('SHIFTS_MAX_JOINING_CELLS', max_cells))
    return TransportResult(level=n, value=total / n, witness=joining)


@dataclass(frozen=True)
class AlphaCheck:
    level: int
    alpha: Fraction
    feasible: bool
    off_mass: Fraction
    witness: Joining = None


def min_off_delta_mass(mu, nu, n, alpha, max_cells=None):
    """Least joining mass outside ``Δ_n(α)`` (0/1-cost transport) and an optimal joining"""
    alpha = Fraction(alpha)
    mu, nu = at_level(mu, n), at_level(nu, n)
    return _solve_transport(
        mu, nu, lambda u, w: int(Fraction(hamming_count(u, w), n) > alpha),
        cap('SHIFTS_MAX_JOINING_CELLS', max_cells),
    )


def alpha_good_joining(mu, nu, n, alpha, max_cells=None):
    """Is there a joining with ``λ(Δ_n(α)) >= 1 - α``?"""
    alpha = Fraction(alpha)
    if not 0 <= alpha <= 1:
        raise InvalidParameter(f"alpha must lie in [0, 1], got {alpha}")
    off_mass, joining = min_off_delta_mass(mu, nu, n, alpha, max_cells)
    feasible = off_mass <= alpha
    return AlphaCheck(level=n, alpha=alpha, feasible=feasible, off_mass=off_mass,
                      witness=joining if feasible else None)


def dstar_n(mu, nu, n, max_cells=None):
    """
    Least α admitting an α-good joining.

    ``Δ_n(α)`` only changes at the grid points ``j/n``, so on ``[j/n, (j+1)/n)`` the least
    feasible α is ``max(j/n, m_j)`` with ``m_j`` the least off-Δ mass there, provided it
    stays below ``(j+1)/n``.
    """
    for j in range(n + 1):
        grid = Fraction(j, n)
        off_mass, _ = min_off_delta_mass(mu, nu, n, grid, max_cells)
        candidate = max(grid, off_mass)
        if j == n or candidate < Fraction(j + 1, n):
            return min(candidate, Fraction(1))
    return Fraction(1)


def hausdorff_dbar_n(ms1, ms2, n, max_cells=None):
    """Hausdorff distance between two finite sets of distributions under ``transport_dbar_n``"""
    memo = {}

    def dist(a, b):
        key = (a, b)
        if key not in memo:
            memo[key] = transport_dbar_n(a, b, n, max_cells).value
        return memo[key]

    return hausdorff(list(ms1), list(ms2), dist)


def periodic_label_words(g, max_len, max_words=None):
    """
    Primitive words ``c`` (up to rotation, length <= ``max_len``) such that ``c^∞`` is read
    along a closed walk of length at most ``max_len``.
    """
    g = as_graph(g)
    limit = cap('SHIFTS_MAX_WORDS', max_words)
    found = set()
    total = 0
    for v in range(g.vertex_count):
        layer = [((), 1 << v)]
        for _ in range(max_len):
            following = []
            for word, mask in layer:
                for label in g.alphabet.symbols:
                    reached = g.step(mask, label)
                    if reached:
                        longer = word + (label,)
                        following.append((longer, reached))
                        if reached >> v & 1:
                            found.add(minimal_rotation(primitive_root(longer)))
            total += len(following)
            if total > limit:
                raise CapExceeded('max_words', limit, lower_bound=total, detail='cycle enumeration')
            layer = following
    return sorted(found, key=lambda w: (len(w), w))


def cycle_measures(g, max_len, level=None, max_words=None):
    """Periodic-orbit distributions of the closed walks of length <= ``max_len``"""
    g = as_graph(g)
    level = level or max_len
    if level < 1:
        raise ShiftError("Level must be positive")
    return [from_periodic(word, level, g.alphabet.size)
            for word in periodic_label_words(g, max_len, max_words)]
