"""
Rauzy graphs and finite-type (Markov) approximations of shifts given by language oracles.
"""

import logging
import threading
from dataclasses import dataclass
from itertools import product

from ..conf import cap
from .exceptions import CapExceeded, NotInLanguage, ShiftError
from .sofic import LabeledGraph, SoficShift, as_graph, component_periods, language, prune
from .words import Alphabet

logger = logging.getLogger(__name__)


class LanguageOracle:
    """
    ``n -> L_n(X)`` as a sorted list of words, cached per length.

    Subclasses implement :meth:`_compute`. The cache is guarded by a lock so probes may
    share one oracle across threads.
    """

    max_length = None

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self._cache = {}
        self._lock = threading.Lock()

    def words(self, n):
        if n < 0:
            raise ShiftError("Word length must be non-negative")
        if self.max_length is not None and n > self.max_length:
            raise NotInLanguage(
                f"Oracle is only trusted up to length {self.max_length}, length {n} was requested"
            )
        with self._lock:
            if n not in self._cache:
                self._cache[n] = sorted(self._compute(n))
            return self._cache[n]

    def contains(self, word):
        return tuple(word) in set(self.words(len(word)))

    def _compute(self, n):
        raise NotImplementedError


class GraphOracle(LanguageOracle):
    """Language of a sofic presentation"""

    def __init__(self, graph, max_words=None):
        graph = as_graph(graph)
        super().__init__(graph.alphabet)
        self.graph = graph
        self.max_words = max_words

    def _compute(self, n):
        return language(self.graph, n, self.max_words)

    def contains(self, word):
        return self.graph.reads(word)


def forbidden_word_graph(forbidden, alphabet):
    """
    Presentation of the one-sided shift avoiding ``forbidden``.

    Vertices are the allowed words of length ``m`` (one less than the longest forbidden
    word, at least 1); the edge for an allowed ``(m+1)``-word leaves its prefix, enters
    its suffix and carries its first symbol. Sinks are pruned, sources kept.
    """
    forbidden = [tuple(w) for w in forbidden]
    if any(not w for w in forbidden):
        raise ShiftError("The empty word cannot be forbidden")
    order = max([len(w) for w in forbidden] + [2]) - 1

    def allowed(word):
        return not any(
            word[i:i + len(f)] == f for f in forbidden for i in range(len(word) - len(f) + 1)
        )

    vertices = [w for w in product(alphabet.symbols, repeat=order) if allowed(w)]
    index = {w: i for i, w in enumerate(vertices)}
    if not vertices:
        raise ShiftError("Every word of the approximation order is forbidden")
    edges = []
    for w in vertices:
        for a in alphabet.symbols:
            longer = w + (a,)
            if allowed(longer) and longer[1:] in index:
                edges.append((index[w], index[longer[1:]], w[0]))
    return prune(LabeledGraph(len(vertices), tuple(edges), alphabet), keep_sources=True)


class SFTOracle(GraphOracle):
    """Shift of finite type given by forbidden words"""

    def __init__(self, forbidden, alphabet=None, max_words=None):
        alphabet = alphabet or Alphabet(2)
        self.forbidden = tuple(tuple(w) for w in forbidden)
        super().__init__(forbidden_word_graph(self.forbidden, alphabet), max_words)


class PrefixOracle(LanguageOracle):
    """
    Factors of finitely many long words (e.g. generated prefixes).

    Only lengths up to ``max_length`` are trusted; longer queries raise.
    """

    def __init__(self, words, max_length, alphabet=None):
        super().__init__(alphabet or Alphabet(2))
        self.sources = [tuple(w) for w in words]
        self.max_length = max_length

    def _compute(self, n):
        factors = set()
        for w in self.sources:
            for i in range(len(w) - n + 1):
                factors.add(w[i:i + n])
        return factors


def rauzy_graph(oracle, n, max_vertices=None):
    """Vertices ``L_n`` in sorted order; one edge per ``w`` in ``L_{n+1}`` labeled ``w_0``"""
    if n < 1:
        raise ShiftError("Rauzy graphs are defined for n >= 1")
    vertices = oracle.words(n)
    limit = cap('SHIFTS_MAX_VERTICES', max_vertices)
    if len(vertices) > limit:
        raise CapExceeded('max_vertices', limit, lower_bound=len(vertices), detail=f'Rauzy graph of order {n}')
    if not vertices:
        raise ShiftError(f"The oracle has no words of length {n}")
    index = {w: i for i, w in enumerate(vertices)}
    edges = []
    for w in oracle.words(n + 1):
        source, target = w[:n], w[1:]
        if source not in index or target not in index:
            raise NotInLanguage(f"Oracle is not factorial: a factor of {w} is missing at length {n}")
        edges.append((index[source], index[target], w[0]))
    return LabeledGraph(len(vertices), tuple(edges), oracle.alphabet)


def markov_approximation(oracle, n, max_vertices=None):
    """
    The order-``n`` finite-type approximation, presented by the Rauzy graph.

    Only sinks are pruned: a one-sided shift may contain words that cannot be extended
    to the left, and removing sources would lose them.
    """
    return SoficShift(prune(rauzy_graph(oracle, n, max_vertices), keep_sources=True))


@dataclass(frozen=True)
class ProbeLevel:
    n: int
    vertices: int
    edges: int
    strongly_connected: bool
    period: int
    component_periods: dict

    @property
    def mixing(self):
        return self.strongly_connected and self.period == 1


def chain_mixing_probe(oracle, n_max, max_vertices=None):
    """
    Connectivity and period of the recurrent part of every Rauzy graph up to ``n_max``.

    Returns ``(levels, mixing_from)`` where ``mixing_from`` is the least ``n0`` such that
    every level ``n0..n_max`` is mixing, or ``None``.
    """
    levels = []
    for n in range(1, n_max + 1):
        core = SoficShift(prune(rauzy_graph(oracle, n, max_vertices)))
        g = core.presentation
        levels.append(ProbeLevel(
            n=n, vertices=g.vertex_count, edges=len(g.edges),
            strongly_connected=core.strongly_connected, period=core.period,
            component_periods=component_periods(g),
        ))
        logger.debug("Rauzy order %d: %d vertices, period %d", n, g.vertex_count, core.period)
    mixing_from = None
    for level in reversed(levels):
        if not level.mixing:
            break
        mixing_from = level.n
    return levels, mixing_from
