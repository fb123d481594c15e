"""
Hausdorff pseudometrics and minimum-Hamming tracing in labeled graphs.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ..conf import cap, default_seed
from .exceptions import CapExceeded, EmptySetError, EmptyShiftError, InvalidParameter, NotInLanguage, WordLengthError
from .sofic import as_graph, language

logger = logging.getLogger(__name__)


class FinitePseudometricSet:
    """Finitely many elements with a symmetric, zero-diagonal distance (memoized)"""

    def __init__(self, elements, dist):
        self.elements = list(elements)
        self.dist = dist
        self._memo = {}

    def __len__(self):
        return len(self.elements)

    def distance(self, i, j):
        if i == j:
            return Fraction(0)
        key = (min(i, j), max(i, j))
        if key not in self._memo:
            self._memo[key] = Fraction(self.dist(self.elements[key[0]], self.elements[key[1]]))
        return self._memo[key]

    def hausdorff(self, left, right):
        """Hausdorff distance between two index subsets"""
        return hausdorff(list(left), list(right), self.distance)


def one_sided_distance(A, B, dist):
    """``sup_{a in A} inf_{b in B} dist(a, b)``"""
    return max(min(dist(a, b) for b in B) for a in A)


def hausdorff(A, B, dist):
    A, B = list(A), list(B)
    if not A or not B:
        raise EmptySetError("The Hausdorff distance needs two nonempty sets")
    return max(one_sided_distance(A, B, dist), one_sided_distance(B, A, dist))


class Trace(NamedTuple):
    cost: Fraction
    witness: tuple


def _cost_layers(g, target, max_cells):
    n = len(target)
    cells = (n + 1) * g.vertex_count
    if cells > max_cells:
        raise CapExceeded('max_trace_cells', max_cells, lower_bound=cells, detail='tracing table')
    src, dst, labels = g.src, g.dst, g.labels
    infinity = n + 1
    layers = np.empty((n + 1, g.vertex_count), dtype=np.int64)
    layers[n] = 0
    for i in range(n - 1, -1, -1):
        edge_cost = (labels != target[i]).astype(np.int64) + layers[i + 1][dst]
        current = np.full(g.vertex_count, infinity, dtype=np.int64)
        np.minimum.at(current, src, edge_cost)
        layers[i] = np.minimum(current, infinity)
    return layers


def best_trace(g, target, max_cells=None):
    """
    Path label closest to ``target`` in normalized Hamming distance.

    Backward dynamic programming over (position, vertex), then a forward pass that
    keeps the set of vertices still achieving the optimum and always takes the smallest
    label, so the witness is the lexicographically least optimal word.
    """
    g = as_graph(g)
    target = tuple(target)
    n = len(target)
    if n == 0:
        raise WordLengthError("Tracing needs a nonempty target")
    layers = _cost_layers(g, target, cap('SHIFTS_MAX_TRACE_CELLS', max_cells))
    best = int(layers[0].min())
    if best > n:
        raise EmptyShiftError(f"The graph has no path of length {n}")

    src, dst, labels = g.src, g.dst, g.labels
    active = layers[0] == best
    remaining = best
    witness = []
    for i in range(n):
        mismatch = (labels != target[i]).astype(np.int64)
        ok = active[src] & (mismatch + layers[i + 1][dst] == remaining)
        label = int(labels[ok].min())
        chosen = ok & (labels == label)
        witness.append(label)
        remaining -= int(label != target[i])
        active = np.zeros(g.vertex_count, dtype=bool)
        active[dst[chosen]] = True
    return Trace(Fraction(best, n), tuple(witness))


def eps_tracing_probe(g, segments, horizon, max_cells=None):
    """
    Tracing cost of the length-``horizon`` prefix of the concatenated segments.

    Every segment must be a word of the shift; the result bounds from above the best
    tracing error achievable at that horizon.
    """
    g = as_graph(g)
    for index, segment in enumerate(segments):
        if not g.reads(segment):
            raise NotInLanguage(f"Segment {index} is not a word of the shift", index=index)
    joined = tuple(s for segment in segments for s in segment)
    if not 1 <= horizon <= len(joined):
        raise WordLengthError(f"Horizon must lie in 1..{len(joined)}, got {horizon}")
    return best_trace(g, joined[:horizon], max_cells).cost


@dataclass(frozen=True)
class LanguageDistance:
    horizon: int
    mode: str
    value: Fraction = None
    witness: tuple = None
    x_side: Fraction = None
    y_side: Fraction = None
    lower_bound: Fraction = None
    samples: int = 0
    seed: int = None


def _farthest(words, other, max_cells):
    best_value, best_word = Fraction(-1), None
    for word in words:
        value = best_trace(other, word, max_cells).cost
        if value > best_value:
            best_value, best_word = value, word
    return best_value, best_word


def random_path_words(g, n, count, rng):
    """``count`` words read along uniformly random walks of length ``n``"""
    g = as_graph(g)
    adjacency = g.out_edges
    words = []
    for _ in range(count):
        v = int(rng.integers(g.vertex_count))
        while not adjacency[v]:
            v = int(rng.integers(g.vertex_count))
        word = []
        for _ in range(n):
            label, v = adjacency[v][int(rng.integers(len(adjacency[v])))]
            word.append(label)
        words.append(tuple(word))
    return words


def lang_hausdorff_hamming(X, Y, n, mode='exact', samples=200, seed=None, max_words=None, max_cells=None):
    """
    Hausdorff distance between ``L_n(X)`` and ``L_n(Y)`` under normalized Hamming distance.

    Inner minima always come from :func:`best_trace`. In ``exact`` mode the outer sups run
    over the enumerated languages; in ``sampled`` mode over seeded random-walk samples, which
    gives a certified lower bound.
    """
    gx, gy = as_graph(X), as_graph(Y)
    if n < 1:
        raise WordLengthError("Horizon must be positive")
    if mode == 'exact':
        x_side, x_word = _farthest(language(gx, n, max_words), gy, max_cells)
        y_side, y_word = _farthest(language(gy, n, max_words), gx, max_cells)
        value, witness = (x_side, x_word) if x_side >= y_side else (y_side, y_word)
        return LanguageDistance(horizon=n, mode=mode, value=value, witness=witness,
                                x_side=x_side, y_side=y_side, lower_bound=value)
    if mode != 'sampled':
        raise InvalidParameter(f"Unknown mode {mode!r}")
    seed = default_seed(seed)
    rng = np.random.default_rng(seed)
    x_side, x_word = _farthest(sorted(set(random_path_words(gx, n, samples, rng))), gy, max_cells)
    y_side, y_word = _farthest(sorted(set(random_path_words(gy, n, samples, rng))), gx, max_cells)
    lower, witness = (x_side, x_word) if x_side >= y_side else (y_side, y_word)
    logger.info("Sampled language distance at horizon %d: lower bound %s (seed %d)", n, lower, seed)
    return LanguageDistance(horizon=n, mode=mode, witness=witness, x_side=x_side, y_side=y_side,
                            lower_bound=lower, samples=samples, seed=seed)
