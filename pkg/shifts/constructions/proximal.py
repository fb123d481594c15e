"""
Hereditary proximal family ``Z_n`` and the zeroing shadow between ``Y_n`` and ``Y_{n+1}``.

``G_n`` has ``b^n`` vertices on a 0-labeled cycle. Vertices ``1 .. b^n - g(n)`` also carry a
1-labeled edge to their successor, and ``v_{b^n-g(n)}`` has a 0-labeled skip edge two steps
ahead, which closes a second cycle of coprime length.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..conf import cap, default_seed
from ..engine.exceptions import CapExceeded, ConstructionError, InvalidParameter, NotInLanguage
from ..engine.sofic import LabeledGraph, SoficShift, couple
from ..engine.words import Alphabet
from .checks import Check

logger = logging.getLogger(__name__)

BINARY = Alphabet(2)


@dataclass(frozen=True)
class ProximalParams:
    base: int = 10
    gaps: tuple = ()
    depth: int = 3

    def __post_init__(self):
        if self.base < 3:
            raise ConstructionError(f"The base must be at least 3, got {self.base}")
        object.__setattr__(self, 'gaps', tuple(int(g) for g in self.gaps))
        for n in range(1, self.depth + 2):
            g = self.gap(n)
            if not 1 <= g < self.base ** n:
                raise ConstructionError(f"g({n}) = {g} must lie in [1, {self.base ** n})")

    def gap(self, n):
        """``g(n)``: supplied value, or ``2^n``"""
        if n < 1:
            raise InvalidParameter(f"Levels start at 1, got {n}")
        if n <= len(self.gaps):
            return self.gaps[n - 1]
        return 2 ** n

    def size(self, n):
        return self.base ** n


def proximal_graph(params, n, max_vertices=None):
    V, g = params.size(n), params.gap(n)
    limit = cap('SHIFTS_MAX_VERTICES', max_vertices)
    if V > limit:
        raise CapExceeded('max_vertices', limit, lower_bound=V, detail=f'G_{n}')
    edges = [(k, (k + 1) % V, 0) for k in range(V)]
    # g(n) = 1 puts a 1-edge on v_{b^n-1} -> v_0
    edges += [(k, (k + 1) % V, 1) for k in range(1, V - g + 1)]
    edges.append((V - g, (V - g + 2) % V, 0))
    return LabeledGraph(V, tuple(edges), BINARY)


def proximal_intersection(params, n, max_vertices=None):
    """``Y_n = Z_1 ∩ ... ∩ Z_n`` as the pruned coupling of ``G_1 .. G_n``"""
    graphs = [proximal_graph(params, k, max_vertices) for k in range(1, n + 1)]
    shift = SoficShift(couple(graphs, max_vertices))
    logger.info("Y_%d has %d vertices, mixing=%s", n, shift.presentation.vertex_count, shift.mixing)
    return shift


def in_family_language(params, word, n, graphs=None):
    """
    Membership in ``L(Y_n)``, read factor by factor.

    Every ``G_k`` has a 0-edge into and out of each vertex, so no vertex of their product is
    pruned and a word is read in the coupling iff it is read in every factor.
    """
    graphs = graphs or [proximal_graph(params, k) for k in range(1, n + 1)]
    for k, g in enumerate(graphs, start=1):
        index = g.first_unreadable(word)
        if index is not None:
            return False, k, index
    return True, None, None


def proximal_random_word(params, n, length, seed=None, max_vertices=None, max_prefix=None):
    """Seeded random walk on the presentation of ``Y_n``"""
    limit = cap('SHIFTS_MAX_PREFIX', max_prefix)
    if length > limit:
        raise CapExceeded('max_prefix', limit, lower_bound=length, detail='random word')
    g = proximal_intersection(params, n, max_vertices).presentation
    rng = np.random.default_rng(default_seed(seed))
    draws = rng.random(length + 1)
    vertex = int(draws[0] * g.vertex_count)
    out = g.out_edges
    word = []
    for u in draws[1:]:
        label, vertex = out[vertex][int(u * len(out[vertex]))]
        word.append(label)
    return tuple(word)


def zeroing_windows(params, n, length, offset=0):
    """Boolean mask of positions ``j`` with ``(j + offset) mod b^(n+1)`` in the last ``g(n+1)`` residues"""
    P, g = params.size(n + 1), params.gap(n + 1)
    residue = (np.arange(length, dtype=np.int64) + offset) % P
    return residue >= P - g


@dataclass
class ZeroingShadow:
    n: int
    offset: int
    word: tuple
    changed: int
    window_positions: int
    density: Fraction
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def proximal_zeroing_shadow(params, x_prefix, n, offset=0):
    """
    Zero ``x`` on the windows of level ``n+1``; the result must be a word of ``Y_{n+1}``.

    ``x`` is first verified to be a word of ``Y_n``. The changed density is compared with
    ``g(n+1) / b^(n+1)``, which it cannot exceed on whole periods.
    """
    x = np.asarray(x_prefix, dtype=np.int8)
    if x.size == 0:
        raise InvalidParameter("The prefix must be nonempty")
    if np.any((x < 0) | (x > 1)):
        raise NotInLanguage("Proximal words are binary")
    x_word = tuple(int(s) for s in x)
    ok, level, index = in_family_language(params, x_word, n)
    if not ok:
        raise NotInLanguage(f"x is not a word of Y_{n}: G_{level} fails at position {index}", index=index)

    windows = zeroing_windows(params, n, x.size, offset)
    y = np.where(windows, 0, x).astype(np.int8)
    y_word = tuple(int(s) for s in y)
    changed = int((y != x).sum())
    in_windows = int(windows.sum())
    density = Fraction(changed, x.size)
    P, g = params.size(n + 1), params.gap(n + 1)

    ok, level, index = in_family_language(params, y_word, n + 1)
    checks = [
        Check.truth(f'shadow_in_Y[{n + 1}]', ok,
                    detail='' if ok else f'G_{level} fails at position {index}'),
        Check.equal('outside_windows_unchanged', int((y[~windows] != x[~windows]).sum()), 0),
        Check.at_most('changed_within_windows', changed, in_windows),
    ]
    if x.size % P == 0:
        checks.append(Check.at_most('density_bound', density, Fraction(g, P)))
    else:
        # partial period: bound by the window share actually present
        checks.append(Check.at_most('density_bound', density, Fraction(in_windows, x.size)))
    if not ok:
        logger.warning("Zeroing shadow left Y_%d at position %s", n + 1, index)
    return ZeroingShadow(n=n, offset=offset, word=y_word, changed=changed,
                         window_positions=in_windows, density=density, checks=checks)


def proximal_separation_witnesses(params, n):
    """
    Words showing ``Z_{n+1} ⊄ Z_n`` and ``Z_n ⊄ Z_{n+1}``:
    a 1-run one longer than ``G_n`` allows, and one period of ``(1^(b^n-g) 0^g)``
    repeated ``b`` times, which ``G_{n+1}`` cannot read.
    """
    V, g = params.size(n), params.gap(n)
    longer_run = (1,) * (V - g + 1)
    periodic = ((1,) * (V - g) + (0,) * g) * params.base
    G_n, G_next = proximal_graph(params, n), proximal_graph(params, n + 1)
    checks = [
        Check.truth(f'run_in_Z[{n + 1}]', G_next.reads(longer_run)),
        Check.truth(f'run_not_in_Z[{n}]', not G_n.reads(longer_run)),
        Check.truth(f'periodic_in_Z[{n}]', G_n.reads(periodic)),
        Check.truth(f'periodic_not_in_Z[{n + 1}]', not G_next.reads(periodic)),
    ]
    return {'in_next_only': longer_run, 'in_current_only': periodic}, checks


def hereditary_at_edges(g):
    """Every 1-labeled edge has a parallel 0-labeled edge"""
    zero_pairs = {(s, d) for s, d, a in g.edges if a == 0}
    return all((s, d) in zero_pairs for s, d, a in g.edges if a == 1)
