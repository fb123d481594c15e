"""
Labeled multigraphs presenting sofic shifts.

A :class:`LabeledGraph` is immutable. Its edges are deduplicated ``(src, dst, label)``
triples kept sorted by ``(src, label, dst)`` so every traversal is reproducible.
Structural questions (strong connectivity, components, cycles) go through networkx;
the word-level work (reading, language enumeration) uses integer bitsets of vertices.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce

import networkx as nx
import numpy as np

from ..conf import cap
from .exceptions import AlphabetError, CapExceeded, EmptyShiftError, NotStronglyConnected, ShiftError
from .words import Alphabet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledGraph:
    vertex_count: int
    edges: tuple = ()
    alphabet: Alphabet = field(default_factory=Alphabet)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise EmptyShiftError("A labeled graph needs at least one vertex")
        triples = set()
        for edge in self.edges:
            src, dst, label = (int(x) for x in edge)
            if not (0 <= src < self.vertex_count and 0 <= dst < self.vertex_count):
                raise ShiftError(f"Edge {edge} refers to a vertex outside 0..{self.vertex_count - 1}")
            if not 0 <= label < self.alphabet.size:
                raise AlphabetError(f"Edge {edge} has label outside the alphabet of size {self.alphabet.size}")
            triples.add((src, dst, label))
        object.__setattr__(self, 'edges', tuple(sorted(triples, key=lambda e: (e[0], e[2], e[1]))))

    @classmethod
    def from_arrays(cls, vertex_count, src, dst, label, alphabet):
        """Build from parallel numpy arrays, skipping per-edge validation of huge products"""
        keys = np.stack([np.asarray(src), np.asarray(label), np.asarray(dst)], axis=1)
        keys = np.unique(keys, axis=0)
        graph = object.__new__(cls)
        object.__setattr__(graph, 'vertex_count', int(vertex_count))
        object.__setattr__(graph, 'alphabet', alphabet)
        object.__setattr__(graph, 'edges', tuple((int(s), int(d), int(a)) for s, a, d in keys))
        return graph

    # -- array and adjacency views ------------------------------------------------

    @cached_property
    def edge_array(self):
        """``E x 3`` int64 array of ``(src, dst, label)``"""
        if not self.edges:
            return np.zeros((0, 3), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    @property
    def src(self):
        return self.edge_array[:, 0]

    @property
    def dst(self):
        return self.edge_array[:, 1]

    @property
    def labels(self):
        return self.edge_array[:, 2]

    @cached_property
    def out_edges(self):
        adjacency = [[] for _ in range(self.vertex_count)]
        for src, dst, label in self.edges:
            adjacency[src].append((label, dst))
        return adjacency

    def to_networkx(self):
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((s, d, {'label': a}) for s, d, a in self.edges)
        return graph

    def adjacency_matrix(self):
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=np.float64)
        np.add.at(matrix, (self.src, self.dst), 1.0)
        return matrix

    # -- bit-parallel reading ---------------------------------------------------

    @property
    def full_mask(self):
        return (1 << self.vertex_count) - 1

    @cached_property
    def _shift_groups(self):
        """Per label: list of ``(offset, source_mask)`` with ``dst = src + offset mod |V|``"""
        n = self.vertex_count
        groups = [dict() for _ in range(self.alphabet.size)]
        for src, dst, label in self.edges:
            offset = (dst - src) % n
            groups[label][offset] = groups[label].get(offset, 0) | (1 << src)
        return [sorted(g.items()) for g in groups]

    def step(self, mask, label):
        """Vertices reachable from ``mask`` by one edge labeled ``label``"""
        n = self.vertex_count
        full = self.full_mask
        result = 0
        for offset, sources in self._shift_groups[label]:
            moving = mask & sources
            if moving:
                if offset:
                    moving = ((moving << offset) | (moving >> (n - offset))) & full
                result |= moving
        return result

    def run(self, word, start_mask=None):
        """Set of end vertices of paths labeled ``word`` from ``start_mask`` (all vertices by default)"""
        mask = self.full_mask if start_mask is None else start_mask
        for symbol in word:
            if not 0 <= symbol < self.alphabet.size:
                return 0
            mask = self.step(mask, symbol)
            if not mask:
                return 0
        return mask

    def reads(self, word, start_mask=None):
        """True iff some path is labeled ``word``"""
        return bool(self.run(word, start_mask))

    def first_unreadable(self, word, start_mask=None):
        """Index of the first symbol at which reading fails, or ``None``"""
        mask = self.full_mask if start_mask is None else start_mask
        for index, symbol in enumerate(word):
            mask = self.step(mask, symbol) if 0 <= symbol < self.alphabet.size else 0
            if not mask:
                return index
        return None


@dataclass(frozen=True)
class SoficShift:
    """A shift together with its presentation; flags are derived lazily"""

    presentation: LabeledGraph

    @cached_property
    def strongly_connected(self):
        return is_strongly_connected(self.presentation)

    @cached_property
    def period(self):
        """Period of the presentation, 0 when it is not strongly connected"""
        if not self.strongly_connected:
            return 0
        return period(self.presentation)

    @cached_property
    def safe_symbols(self):
        return safe_symbols(self.presentation)

    @property
    def mixing(self):
        return self.strongly_connected and self.period == 1

    @property
    def alphabet(self):
        return self.presentation.alphabet

    def reads(self, word):
        return self.presentation.reads(word)


def as_graph(shift_or_graph):
    if isinstance(shift_or_graph, SoficShift):
        return shift_or_graph.presentation
    return shift_or_graph


def prune_with_map(g, keep_sources=False):
    """Prune and also return the surviving original vertex ids (in new-id order)"""
    out_degree = [0] * g.vertex_count
    in_degree = [0] * g.vertex_count
    incoming = [[] for _ in range(g.vertex_count)]
    outgoing = [[] for _ in range(g.vertex_count)]
    for src, dst, _ in g.edges:
        out_degree[src] += 1
        in_degree[dst] += 1
        incoming[dst].append(src)
        outgoing[src].append(dst)

    removed = [False] * g.vertex_count
    queue = deque(
        v for v in range(g.vertex_count)
        if out_degree[v] == 0 or (not keep_sources and in_degree[v] == 0)
    )
    while queue:
        v = queue.popleft()
        if removed[v]:
            continue
        removed[v] = True
        for u in incoming[v]:
            if not removed[u]:
                out_degree[u] -= 1
                if out_degree[u] == 0:
                    queue.append(u)
        if not keep_sources:
            for w in outgoing[v]:
                if not removed[w]:
                    in_degree[w] -= 1
                    if in_degree[w] == 0:
                        queue.append(w)

    kept = [v for v in range(g.vertex_count) if not removed[v]]
    if not kept:
        raise EmptyShiftError("The graph presents the empty shift (pruning removed every vertex)")
    if len(kept) == g.vertex_count:
        return g, kept
    new_id = {v: i for i, v in enumerate(kept)}
    edges = [
        (new_id[s], new_id[d], a) for s, d, a in g.edges
        if not removed[s] and not removed[d]
    ]
    logger.debug("Pruned %d of %d vertices", g.vertex_count - len(kept), g.vertex_count)
    return LabeledGraph(len(kept), tuple(edges), g.alphabet), kept


def prune(g, keep_sources=False):
    """
    Iteratively drop vertices without outgoing (and, unless ``keep_sources``, incoming)
    edges. Raises :class:`EmptyShiftError` when nothing survives.
    """
    return prune_with_map(g, keep_sources)[0]


def is_strongly_connected(g):
    return nx.is_strongly_connected(g.to_networkx())


def _period_of(vertex_count, adjacency):
    level = [-1] * vertex_count
    level[0] = 0
    queue = deque([0])
    divisor = 0
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
            else:
                divisor = math.gcd(divisor, level[u] + 1 - level[v])
    return divisor


def period(g):
    """Gcd of all cycle lengths, from BFS level differences"""
    if not is_strongly_connected(g):
        raise NotStronglyConnected("The period is only defined for strongly connected graphs")
    adjacency = [[d for _, d in g.out_edges[u]] for u in range(g.vertex_count)]
    return _period_of(g.vertex_count, adjacency)


def component_periods(g):
    """Period of every nontrivial strongly connected component, keyed by its smallest vertex"""
    graph = g.to_networkx()
    result = {}
    for component in nx.strongly_connected_components(graph):
        members = sorted(component)
        index = {v: i for i, v in enumerate(members)}
        adjacency = [[] for _ in members]
        has_edge = False
        for s, d, _ in g.edges:
            if s in index and d in index:
                adjacency[index[s]].append(index[d])
                has_edge = True
        if has_edge:
            result[members[0]] = _period_of(len(members), adjacency)
    return dict(sorted(result.items()))


def safe_symbols(g):
    """Labels ``b`` such that every edge has a parallel edge labeled ``b``"""
    by_pair = {}
    for src, dst, label in g.edges:
        by_pair.setdefault((src, dst), set()).add(label)
    symbols = set(g.alphabet.symbols)
    for labels in by_pair.values():
        symbols &= labels
    return frozenset(symbols)


def is_mixing_presentation(g):
    """Presentation-level verdict: strongly connected and aperiodic"""
    g = as_graph(g)
    return is_strongly_connected(g) and period(g) == 1


def _couple_pair(g1, g2, max_vertices):
    size = g1.vertex_count * g2.vertex_count
    if size > max_vertices:
        raise CapExceeded('max_vertices', max_vertices, lower_bound=size, detail='coupling product')
    srcs, dsts, labels = [], [], []
    for label in range(g1.alphabet.size):
        e1 = g1.edge_array[g1.labels == label]
        e2 = g2.edge_array[g2.labels == label]
        if not len(e1) or not len(e2):
            continue
        srcs.append((e1[:, 0][:, None] * g2.vertex_count + e2[:, 0][None, :]).ravel())
        dsts.append((e1[:, 1][:, None] * g2.vertex_count + e2[:, 1][None, :]).ravel())
        labels.append(np.full(len(e1) * len(e2), label, dtype=np.int64))
    if not srcs:
        raise EmptyShiftError("The coupled graphs share no label, the intersection is empty")
    product = LabeledGraph.from_arrays(size, np.concatenate(srcs), np.concatenate(dsts),
                                       np.concatenate(labels), g1.alphabet)
    return prune(product)


def couple(graphs, max_vertices=None):
    """
    Labeled product of the graphs, pruned. Presents the intersection of the shifts.

    The product is built pairwise and pruned after every factor.
    """
    graphs = [as_graph(g) for g in graphs]
    if not graphs:
        raise ShiftError("Coupling needs at least one graph")
    alphabet = graphs[0].alphabet
    for g in graphs[1:]:
        if g.alphabet != alphabet:
            raise AlphabetError("Coupled graphs must share one alphabet")
    limit = cap('SHIFTS_MAX_VERTICES', max_vertices)
    result = reduce(lambda a, b: _couple_pair(a, b, limit), graphs[1:], prune(graphs[0]))
    logger.debug("Coupled %d graphs into %d vertices", len(graphs), result.vertex_count)
    return result


def language(g, n, max_words=None):
    """
    Sorted list of the words of length ``n`` read along paths of ``g``.

    Raises :class:`CapExceeded` with a lower bound on ``|L_n|`` when the cap is hit.
    """
    g = as_graph(g)
    limit = cap('SHIFTS_MAX_WORDS', max_words)
    layer = [((), g.full_mask)]
    for length in range(n):
        following = []
        for word, mask in layer:
            for label in g.alphabet.symbols:
                reached = g.step(mask, label)
                if reached:
                    following.append((word + (label,), reached))
                    if len(following) > limit:
                        raise CapExceeded('max_words', limit, lower_bound=len(following),
                                          detail=f'language of length {length + 1}')
        layer = following
    return [word for word, _ in layer]


def separating_word(g, h, max_len, max_states=None):
    """Shortest (then lexicographically least) word of ``L(g) \\ L(h)`` up to ``max_len``, or ``None``"""
    g, h = as_graph(g), as_graph(h)
    limit = cap('SHIFTS_MAX_WORDS', max_states)
    frontier = [((), g.full_mask, h.full_mask)]
    seen = {(g.full_mask, h.full_mask)}
    for _ in range(max_len):
        following = []
        for word, gmask, hmask in frontier:
            for label in g.alphabet.symbols:
                gnext = g.step(gmask, label)
                if not gnext:
                    continue
                hnext = h.step(hmask, label) if label < h.alphabet.size else 0
                if not hnext:
                    return word + (label,)
                if (gnext, hnext) not in seen:
                    seen.add((gnext, hnext))
                    following.append((word + (label,), gnext, hnext))
            if len(seen) > limit:
                raise CapExceeded('max_words', limit, detail='separating word search states')
        frontier = following
        if not frontier:
            return None
    return None


@dataclass(frozen=True)
class EntropyBounds:
    lower: float
    upper: float
    spectral: float
    n: int
    cycle_length: int
    word_count: int = 1
    lower_count: int = 1
    lower_length: int = 1

    def certificate(self):
        """``lower <= upper`` in integers: ``N_v(c)^n`` against ``|L_n|^c``"""
        return self.lower_count ** self.n, self.word_count ** self.lower_length


def closed_walk_word_counts(g, max_len, max_words=None):
    """For each vertex, the number of distinct labels of closed walks of each length"""
    limit = cap('SHIFTS_MAX_WORDS', max_words)
    counts = {}
    total = 0
    for v in range(g.vertex_count):
        layer = [1 << v]
        for length in range(1, max_len + 1):
            following = []
            for mask in layer:
                for label in g.alphabet.symbols:
                    reached = g.step(mask, label)
                    if reached:
                        following.append(reached)
            total += len(following)
            if total > limit:
                raise CapExceeded('max_words', limit, lower_bound=total, detail='closed walk enumeration')
            closing = sum(1 for mask in following if mask >> v & 1)
            counts[(v, length)] = closing
            layer = following
    return counts


def entropy_bounds(g, n, cycle_length=None, max_words=None):
    """
    Bounds on the entropy of the presented shift.

    ``upper = log|L_n| / n``. ``lower`` is the best ``log N_v(c) / c`` where ``N_v(c)``
    counts distinct labels of closed walks of length ``c`` at ``v``: those labels
    concatenate freely, so the shift has at least ``N_v(c)^m`` words of length ``mc``.
    ``spectral`` is the log of the adjacency spectral radius, another upper bound.
    """
    g = as_graph(g)
    if n < 1:
        raise ShiftError("Entropy bounds need n >= 1")
    size = len(language(g, n, max_words))
    upper = math.log(size) / n if size else 0.0
    c_max = cycle_length or min(n, 10)
    # largest count ** (1 / length), compared exactly
    best_count, best_length = 1, 1
    for (v, length), count in closed_walk_word_counts(g, c_max, max_words).items():
        if count ** best_length > best_count ** length:
            best_count, best_length = count, length
    lower = math.log(best_count) / best_length
    radius = float(np.max(np.abs(np.linalg.eigvals(g.adjacency_matrix())))) if g.edges else 0.0
    spectral = math.log(radius) if radius > 1.0 else 0.0
    return EntropyBounds(lower=lower, upper=upper, spectral=spectral, n=n, cycle_length=c_max,
                         word_count=size, lower_count=best_count, lower_length=best_length)
