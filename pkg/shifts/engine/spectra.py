"""
Occurrence counts and maximal frequencies of a word in a sofic shift.

The graph is multiplied by the single-pattern matching automaton of ``w``; an edge of
the product has weight 1 when it completes an occurrence. ``Gamma`` is then a
longest-path problem on the unrolled product and ``Lambda`` its maximum mean cycle.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
import numpy as np

from ..conf import cap
from .exceptions import CapExceeded, EmptyShiftError, NotInLanguage, WordLengthError
from .metrics import best_trace
from .sofic import LabeledGraph, SoficShift, as_graph, prune
from .words import border_table, count_occurrences, hamming_count

logger = logging.getLogger(__name__)

NEG = np.iinfo(np.int64).min // 4


class OccurrenceAutomaton:
    """
    States are the proper prefixes of ``w`` (by length). Reading a symbol that completes
    ``w`` emits weight 1 and falls back to the longest proper border, so overlapping
    occurrences are all counted.
    """

    def __init__(self, w, alphabet_size):
        w = tuple(w)
        if not w:
            raise WordLengthError("The pattern must be nonempty")
        self.pattern = w
        m = len(w)
        table = border_table(w)
        self.next_state = np.zeros((m, alphabet_size), dtype=np.int64)
        self.weight = np.zeros((m, alphabet_size), dtype=np.int64)
        for q in range(m):
            for a in range(alphabet_size):
                k = q
                while k > 0 and w[k] != a:
                    k = table[k]
                if w[k] == a:
                    k += 1
                if k == m:
                    self.weight[q, a] = 1
                    k = table[m]
                self.next_state[q, a] = k

    @property
    def state_count(self):
        return len(self.pattern)

    def count(self, u):
        q, total = 0, 0
        for a in u:
            total += int(self.weight[q, a])
            q = int(self.next_state[q, a])
        return total


def gamma(w, u):
    """Overlapping occurrences of ``w`` in ``u``"""
    return count_occurrences(tuple(w), tuple(u))


@dataclass
class WeightedProduct:
    """Graph x automaton; vertex ``(v, q)`` has id ``v * |w| + q``"""

    graph: LabeledGraph
    automaton: OccurrenceAutomaton
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    label: np.ndarray

    @classmethod
    def build(cls, graph, w, max_vertices=None):
        graph = as_graph(graph)
        automaton = OccurrenceAutomaton(w, graph.alphabet.size)
        m = automaton.state_count
        size = graph.vertex_count * m
        limit = cap('SHIFTS_MAX_PRODUCT_VERTICES', max_vertices)
        if size > limit:
            raise CapExceeded('max_product_vertices', limit, lower_bound=size, detail='occurrence product')
        states = np.arange(m)
        gs, gd, ga = graph.src[:, None], graph.dst[:, None], graph.labels[:, None]
        src = (gs * m + states[None, :]).ravel()
        dst = (gd * m + automaton.next_state[states[None, :], ga]).ravel()
        weight = automaton.weight[states[None, :], ga].ravel()
        label = np.broadcast_to(ga, (len(graph.edges), m)).ravel()
        return cls(graph, automaton, src, dst, weight, label)

    @property
    def vertex_count(self):
        return self.graph.vertex_count * self.automaton.state_count

    def start_states(self):
        return np.arange(self.graph.vertex_count) * self.automaton.state_count


def Gamma(X, w, n, max_vertices=None):
    """Most occurrences of ``w`` in a word of ``L_n(X)``, by DP over the unrolled product"""
    product = WeightedProduct.build(X, w, max_vertices)
    best = np.full(product.vertex_count, NEG, dtype=np.int64)
    best[product.start_states()] = 0
    for _ in range(n):
        following = np.full(product.vertex_count, NEG, dtype=np.int64)
        np.maximum.at(following, product.dst, best[product.src] + product.weight)
        best = np.where(following < NEG // 2, NEG, following)
    top = int(best.max())
    if top < 0:
        raise EmptyShiftError(f"No word of length {n} is readable")
    return top


@dataclass(frozen=True)
class MaxFrequency:
    word: tuple
    value: Fraction
    witness_cycle: tuple


def _karp(product):
    """Karp's maximum mean cycle with D_0 = 0 on every vertex; returns (value, cycle label word)"""
    N = product.vertex_count
    D = np.full((N + 1, N), NEG, dtype=np.int64)
    pred = np.full((N + 1, N), -1, dtype=np.int64)
    D[0] = 0
    order = np.arange(len(product.src))
    for k in range(1, N + 1):
        candidate = D[k - 1][product.src] + product.weight
        candidate = np.where(D[k - 1][product.src] <= NEG // 2, NEG, candidate)
        np.maximum.at(D[k], product.dst, candidate)
        # stored predecessor: the first edge (in edge order) achieving the maximum
        hits = (candidate == D[k][product.dst]) & (candidate > NEG // 2)
        chosen = np.full(N, len(order), dtype=np.int64)
        np.minimum.at(chosen, product.dst[hits], order[hits])
        pred[k] = np.where(chosen < len(order), chosen, -1)

    final = D[N]
    valid_final = final > NEG // 2
    if not valid_final.any():
        raise EmptyShiftError("The product has no cycle")
    # per vertex, the least (D_N - D_k) / (N - k); ratios are compared by cross-multiplication
    finite = D[:N] > NEG // 2
    best_num = np.zeros(N, dtype=np.int64)
    best_den = np.zeros(N, dtype=np.int64)
    for k in range(N):
        usable = finite[k] & valid_final
        num = np.where(usable, final - D[k], 0)
        den = N - k
        better = usable & ((best_den == 0) | (num * best_den < best_num * den))
        best_num = np.where(better, num, best_num)
        best_den = np.where(better, den, best_den)
    v, value = None, None
    for u in np.flatnonzero(valid_final):
        ratio = Fraction(int(best_num[u]), int(best_den[u]))
        if value is None or ratio > value:
            v, value = int(u), ratio

    # walk back along the critical walk and cut out its first closed cycle
    walk = [v]
    edges = []
    current = v
    for level in range(N, 0, -1):
        e = int(pred[level, current])
        edges.append(e)
        current = int(product.src[e])
        walk.append(current)
    seen = {}
    for position, vertex in enumerate(walk):
        if vertex in seen:
            start = seen[vertex]
            cycle_edges = edges[start:position]
            labels = tuple(int(product.label[e]) for e in reversed(cycle_edges))
            return value, labels
        seen[vertex] = position
    return value, ()


def Lambda(X, w, max_vertices=None):
    """
    Maximum limiting frequency of ``w``: the maximum mean cycle weight of the product.

    The witness is the label word of a cycle on Karp's critical walk; every such cycle
    has mean weight exactly equal to the maximum.
    """
    product = WeightedProduct.build(X, w, max_vertices)
    value, cycle = _karp(product)
    logger.debug("Lambda(%s) = %s on a %d-vertex product", w, value, product.vertex_count)
    return MaxFrequency(word=tuple(w), value=value, witness_cycle=cycle)


def measure_center(X):
    """Restriction to edges inside nontrivial strongly connected components, pruned"""
    g = as_graph(X)
    graph = g.to_networkx()
    component = {}
    for index, members in enumerate(nx.strongly_connected_components(graph)):
        for v in members:
            component[v] = index
    kept = tuple(e for e in g.edges if component[e[0]] == component[e[1]])
    if not kept:
        raise EmptyShiftError("The presentation has no cycle")
    return SoficShift(prune(LabeledGraph(g.vertex_count, kept, g.alphabet)))


@dataclass(frozen=True)
class Projection:
    words: tuple
    block_length: int
    filler: tuple
    replaced_fraction: Fraction
    changed_fraction: Fraction


def default_filler(center, m):
    """Lexicographically least word of length ``m`` in a pruned center"""
    g = as_graph(center)
    mask, word = g.full_mask, []
    for _ in range(m):
        label = next(a for a in g.alphabet.symbols if g.step(mask, a))
        mask = g.step(mask, label)
        word.append(label)
    return tuple(word)


def project_to_center(ws, X, m=1, filler=None, center=None):
    """
    Replace the m-blocks of each word that are not words of the measure center.

    Every word is cut into blocks of length ``m`` (the last one absorbs the remainder, so its
    length lies in ``[m, 2m)``). Inner blocks outside the center become ``filler``; a final
    block outside it becomes the closest center word of its own length.
    """
    g = as_graph(X)
    center = as_graph(center or measure_center(X))
    if m < 1:
        raise WordLengthError("Block length must be positive")
    filler = tuple(filler) if filler is not None else default_filler(center, m)
    if len(filler) != m or not center.reads(filler):
        raise NotInLanguage("The filler must be a length-m word of the measure center")

    projected, replaced, changed, total = [], 0, 0, 0
    for index, w in enumerate(ws):
        w = tuple(w)
        if len(w) < m:
            raise WordLengthError(f"Word {index} is shorter than the block length {m}")
        if not g.reads(w):
            raise NotInLanguage(f"Word {index} is not a word of the shift", index=index)
        count = len(w) // m
        out = []
        for b in range(count):
            block = w[b * m:(b + 1) * m] if b < count - 1 else w[b * m:]
            if center.reads(block):
                out.append(block)
                continue
            replacement = filler if b < count - 1 else best_trace(center, block).witness
            out.append(replacement)
            replaced += len(block)
            changed += hamming_count(block, replacement)
        projected.append(tuple(s for block in out for s in block))
        total += len(w)
    return Projection(words=tuple(projected), block_length=m, filler=filler,
                      replaced_fraction=Fraction(replaced, total) if total else Fraction(0),
                      changed_fraction=Fraction(changed, total) if total else Fraction(0))
