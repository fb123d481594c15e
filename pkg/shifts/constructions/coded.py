"""
Minimal coded system ``X = ∩ X_n`` generated by the codes ``B_n``.

``B_{n+1}`` is every concatenation of ``t(n)`` words of ``B_n`` followed by ``τ(n)``, the
concatenation of all of ``B_n`` in enumeration order. Level statistics are exact integers
at any depth; explicit words exist only while ``k(n)`` is under ``SHIFTS_MAX_CODE_WORDS``.
Past that, levels are handled lazily: exact-length construction, sampling and parsing
only need ``τ`` of the level below.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, product

import numpy as np

from ..conf import cap
from ..engine.exceptions import CapExceeded, ConstructionError, InvalidParameter, NotInLanguage
from ..engine.sofic import LabeledGraph, SoficShift
from ..engine.words import Alphabet, count_occurrences
from .checks import Check

logger = logging.getLogger(__name__)

DEFAULT_B1 = ((0,), (1, 1))

INEQUALITIES = ('two_thirds', 'shadow_density', 'mixing_ratio', 'mixing_length')
MODES = {
    'structural': ('two_thirds',),
    'cauchy': ('two_thirds', 'shadow_density'),
    'mixing': ('two_thirds', 'mixing_ratio', 'mixing_length'),
    'both': INEQUALITIES,
}


@dataclass(frozen=True)
class CodedParams:
    B1: tuple = DEFAULT_B1
    t: tuple = ()
    epsilon: Fraction = None
    mode: str = 'both'

    def __post_init__(self):
        B1 = tuple(tuple(int(s) for s in w) for w in self.B1)
        if not B1 or any(not w for w in B1):
            raise ConstructionError("B_1 must be a nonempty set of nonempty words")
        if len(set(B1)) != len(B1):
            raise ConstructionError("B_1 lists a word twice")
        t = tuple(int(v) for v in self.t)
        if any(v < 2 for v in t):
            raise ConstructionError(f"Every t(n) must be at least 2, got {t}")
        if not t and self.epsilon is None:
            raise ConstructionError("Supply t(1), t(2), ... or a target epsilon")
        if self.epsilon is not None and not Fraction(self.epsilon) > 0:
            raise InvalidParameter("epsilon must be positive")
        if self.mode not in MODES:
            raise InvalidParameter(f"Unknown t-selection mode {self.mode!r}")
        object.__setattr__(self, 'B1', B1)
        object.__setattr__(self, 't', t)
        if self.epsilon is not None:
            object.__setattr__(self, 'epsilon', Fraction(self.epsilon))


@dataclass(frozen=True)
class CodedLevelStats:
    n: int
    k: int
    s: int
    ell: int
    tau: int

    def successor(self, t):
        return CodedLevelStats(
            n=self.n + 1,
            k=self.k ** t,
            s=t * self.s + self.tau,
            ell=t * self.ell + self.tau,
            tau=self.tau * self.k ** (t - 1) * (self.k + t),
        )


def join(words):
    return tuple(chain.from_iterable(words))


def _least_above(x):
    """Least integer strictly greater than ``x``"""
    return math.floor(x) + 1


def _least_at_least(x):
    return math.ceil(x)


def min_t_table(stats, epsilon=None):
    """Least admissible ``t`` for each inequality (``None`` where it cannot be evaluated)"""
    s, ell, tau, n = stats.s, stats.ell, stats.tau, stats.n
    table = {}
    if 2 * ell - 3 * s <= 0:
        table['two_thirds'] = None
    else:
        table['two_thirds'] = _least_above(Fraction(tau, 2 * ell - 3 * s))
    if epsilon is not None:
        table['shadow_density'] = _least_above(Fraction(tau + 3 * ell) / (s * Fraction(epsilon) / 2 ** n))
    if ell > s:
        table['mixing_ratio'] = _least_at_least(Fraction(ell, ell - s))
    else:
        table['mixing_ratio'] = None
    table['mixing_length'] = _least_at_least(Fraction(2 * s + 2 * ell + 3 * tau, ell))
    return table


def coded_min_t(stats, mode='structural', epsilon=None):
    """
    Least integer ``t >= 2`` meeting every inequality of ``mode``:

    * ``two_thirds``: ``t > |τ| / (2ℓ - 3s)``
    * ``shadow_density``: ``t > (|τ| + 3ℓ) / (s ε 2^-n)``
    * ``mixing_ratio``: ``t >= ℓ / (ℓ - s)``
    * ``mixing_length``: ``t >= (2s + 2ℓ + 3|τ|) / ℓ``
    """
    if mode not in MODES:
        raise InvalidParameter(f"Unknown mode {mode!r}")
    needed = MODES[mode]
    if 'shadow_density' in needed and epsilon is None:
        raise InvalidParameter(f"Mode {mode!r} needs epsilon")
    table = min_t_table(stats, epsilon)
    best = 2
    for name in needed:
        value = table[name]
        if value is None:
            raise ConstructionError(f"{name} cannot be satisfied at level {stats.n} "
                                    f"(s={stats.s}, ell={stats.ell})")
        best = max(best, value)
    return best


class CodedSystem:
    """Lazy view of ``B_1, B_2, ...`` for one parameter set"""

    def __init__(self, params, max_code_words=None, max_prefix=None):
        self.params = params
        self.max_code_words = cap('SHIFTS_MAX_CODE_WORDS', max_code_words)
        self.max_prefix = cap('SHIFTS_MAX_PREFIX', max_prefix)
        B1 = params.B1
        lengths = [len(w) for w in B1]
        self._stats = [CodedLevelStats(1, len(B1), min(lengths), max(lengths), sum(lengths))]
        self._t = list(params.t)
        self._words = {1: list(B1)}
        self._tau = {}
        self._members = {1: set(B1)}

    # -- arithmetic ---------------------------------------------------------

    def t(self, n):
        while len(self._t) < n:
            if self.params.epsilon is None:
                raise ConstructionError(f"t({len(self._t) + 1}) was not supplied")
            level = self.stats(len(self._t) + 1)
            self._t.append(coded_min_t(level, self.params.mode, self.params.epsilon))
        return self._t[n - 1]

    def stats(self, n):
        if n < 1:
            raise InvalidParameter(f"Levels start at 1, got {n}")
        while len(self._stats) < n:
            last = self._stats[-1]
            self._stats.append(last.successor(self.t(last.n)))
        return self._stats[n - 1]

    # -- explicit words -----------------------------------------------------

    def enumerable(self, n):
        return self.stats(n).k <= self.max_code_words

    def words(self, n):
        """``B_n`` in enumeration order; :class:`CapExceeded` past the word cap"""
        if n in self._words:
            return self._words[n]
        stats = self.stats(n)
        if stats.k > self.max_code_words:
            raise CapExceeded('max_code_words', self.max_code_words, lower_bound=stats.k,
                              detail=f'B_{n}')
        tau = self.tau(n - 1)
        words = [join(combo) + tau for combo in product(self.words(n - 1), repeat=self.t(n - 1))]
        self._words[n] = words
        logger.debug("Enumerated B_%d: %d words", n, len(words))
        return words

    def tau(self, n):
        if n not in self._tau:
            stats = self.stats(n)
            if stats.tau > self.max_prefix:
                raise CapExceeded('max_prefix', self.max_prefix, lower_bound=stats.tau,
                                  detail=f'tau({n})')
            self._tau[n] = join(self.words(n))
        return self._tau[n]

    def tau_available(self, n):
        return self.enumerable(n) and self.stats(n).tau <= self.max_prefix

    # -- membership ---------------------------------------------------------

    def contains(self, n, word):
        """Parse ``word`` as a member of ``B_n``"""
        word = tuple(word)
        if n == 1:
            return word in self._members[1]
        stats = self.stats(n)
        if not stats.s <= len(word) <= stats.ell:
            return False
        tau = self.tau(n - 1)
        if word[len(word) - len(tau):] != tau:
            return False
        return self._parses(n - 1, word[:len(word) - len(tau)], self.t(n - 1))

    def _parses(self, n, text, count):
        """Can ``text`` be cut into exactly ``count`` words of ``B_n``?"""
        below = self.stats(n)
        memo = {}

        def fits(position, remaining):
            left = len(text) - position
            if remaining == 0:
                return left == 0
            if not remaining * below.s <= left <= remaining * below.ell:
                return False
            key = (position, remaining)
            if key not in memo:
                memo[key] = any(
                    self.contains(n, text[position:position + size]) and fits(position + size, remaining - 1)
                    for size in range(below.s, min(below.ell, left) + 1)
                )
            return memo[key]

        return fits(0, count)

    # -- construction -------------------------------------------------------

    def word_of_length(self, n, L, rng=None):
        """A member of ``B_n`` of length exactly ``L``"""
        stats = self.stats(n)
        if not stats.s <= L <= stats.ell:
            raise InvalidParameter(f"B_{n} lengths lie in [{stats.s}, {stats.ell}], got {L}")
        if n == 1:
            candidates = [w for w in self.params.B1 if len(w) == L]
            if not candidates:
                raise ConstructionError(f"B_1 has no word of length {L}")
            return candidates[int(rng.integers(len(candidates)))] if rng is not None else candidates[0]
        tau = self.tau(n - 1)
        return self.concatenation(n - 1, self.t(n - 1), L - len(tau), rng) + tau

    def concatenation(self, n, count, total, rng=None):
        """``count`` words of ``B_n`` with total length ``total``, lengths chosen by greedy clamping"""
        return join(self.blocks_of_total(n, count, total, rng))

    def blocks_of_total(self, n, count, total, rng=None):
        stats = self.stats(n)
        if not count * stats.s <= total <= count * stats.ell:
            raise ConstructionError(f"{count} words of B_{n} cannot have total length {total}")
        blocks = []
        remaining = total
        for slots in range(count, 0, -1):
            low = max(stats.s, remaining - (slots - 1) * stats.ell)
            high = min(stats.ell, remaining - (slots - 1) * stats.s)
            size = low if rng is None else int(rng.integers(low, high + 1))
            blocks.append(self.word_of_length(n, size, rng))
            remaining -= size
        return blocks

    def sample(self, n, rng):
        """Uniform random member of ``B_n`` (index-uniform at every level)"""
        if n == 1:
            return self.params.B1[int(rng.integers(len(self.params.B1)))]
        tau = self.tau(n - 1)
        return join(self.sample(n - 1, rng) for _ in range(self.t(n - 1))) + tau

    def filler(self, n):
        return self.word_of_length(n, self.stats(n).s)


def coded_levels(params, N, max_code_words=None, max_prefix=None):
    """Stats of levels ``1..N`` with the explicit words where the cap allows"""
    system = CodedSystem(params, max_code_words, max_prefix)
    levels = []
    for n in range(1, N + 1):
        stats = system.stats(n)
        words = system.words(n) if system.enumerable(n) else None
        tau = system.tau(n) if words is not None and system.tau_available(n) else None
        levels.append({'stats': stats, 'words': words, 'tau': tau, 'truncated': words is None})
    return system, levels


def coded_level_checks(system, N):
    checks = []
    params = system.params
    for n in range(1, N + 1):
        here, nxt = system.stats(n), system.stats(n + 1)
        checks.append(Check.less(f'ell_below_tau[{n}]', here.ell, here.tau))
        checks.append(Check.less(f'tau_below_next_s[{n}]', here.tau, nxt.s))
        ratio, next_ratio = Fraction(here.s, here.ell), Fraction(nxt.s, nxt.ell)
        checks.append(Check.at_most(f'ratio_nondecreasing[{n}]', ratio, next_ratio))
        table = min_t_table(here, params.epsilon)
        if table['two_thirds'] is not None and system.t(n) >= table['two_thirds']:
            checks.append(Check.less(f'ratio_below_two_thirds[{n + 1}]', next_ratio, Fraction(2, 3)))
        if system.enumerable(n):
            lengths = sorted({len(w) for w in system.words(n)})
            checks.append(Check.equal(f'length_interval[{n}]', lengths,
                                      list(range(here.s, here.ell + 1))))
        if system.enumerable(n + 1):
            below, above = system.words(n), system.words(n + 1)
            everywhere = all(count_occurrences(u, v) for u in below for v in above)
            checks.append(Check.truth(f'factor_of_every_next_word[{n}]', everywhere))
            checks.append(Check.equal(f'k_recurrence[{n + 1}]', len(above), nxt.k))
    return checks


def coded_word_of_length(system, n, L, rng=None):
    return system.word_of_length(n, L, rng)


def coded_graph(system, n):
    """One hub vertex; each word of ``B_n`` is a cycle through it"""
    words = system.words(n)
    vertex_count = 1 + sum(len(w) - 1 for w in words)
    limit = cap('SHIFTS_MAX_VERTICES')
    if vertex_count > limit:
        raise CapExceeded('max_vertices', limit, lower_bound=vertex_count, detail=f'graph of X_{n}')
    size = max(2, max(s for w in words for s in w) + 1)
    edges, fresh = [], 1
    for w in words:
        current = 0
        for i, symbol in enumerate(w):
            target = 0 if i == len(w) - 1 else fresh
            edges.append((current, target, symbol))
            if target:
                current, fresh = fresh, fresh + 1
    return SoficShift(LabeledGraph(vertex_count, tuple(edges), Alphabet(size)))


def coded_sample(system, n, count, seed):
    rng = np.random.default_rng(seed)
    return [system.sample(n, rng) for _ in range(count)]


# -- shadowing ---------------------------------------------------------------

@dataclass
class CodedShadow:
    n: int
    z_blocks: list
    rounds: int
    z_length: int
    mismatches: int
    density: Fraction
    bound: Fraction
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)


def _split_tail(system, n, total):
    """Two words of ``B_n`` when ``2s <= total <= 2ℓ``, otherwise three"""
    stats = system.stats(n)
    if 2 * stats.s <= total <= 2 * stats.ell:
        return system.blocks_of_total(n, 2, total)
    if 3 * stats.s <= total <= 3 * stats.ell:
        return system.blocks_of_total(n, 3, total)
    raise ConstructionError(f"A tail of length {total} splits into neither 2 nor 3 words of B_{n}")


def coded_shadow_next(system, blocks, n, progress=None):
    """
    Shadow the concatenation ``y`` of ``blocks`` (words of ``B_n``) by a concatenation ``z``
    of words of ``B_{n+1}``.

    Each round emits ``w = b_1 .. b_t τ(n)``, cuts ``y`` at ``|w|`` (inside block ``b_{j+1}``,
    leaving a suffix ``a``) and respells ``a b_{j+2} b_{j+3}`` as two or three words of the
    same total length. ``y`` and ``z`` then differ only on the ``τ(n)`` part and on the
    respelled words. Rounds stop when fewer blocks remain than one round can consume.
    """
    blocks = [tuple(b) for b in blocks]
    for index, b in enumerate(blocks):
        if not system.contains(n, b):
            raise NotInLanguage(f"Block {index} is not a word of B_{n}", index=index)
    t = system.t(n)
    tau = system.tau(n)
    stats = system.stats(n)
    if len(blocks) < t + 3:
        raise ConstructionError(f"A round needs at least t(n)+3 = {t + 3} blocks, got {len(blocks)}")

    y = np.fromiter((s for b in blocks for s in b), dtype=np.int8)
    stream = list(blocks)
    z_blocks = []
    while True:
        w = join(stream[:t]) + tau
        covered, j = 0, 0
        while j < len(stream) and covered + len(stream[j]) <= len(w):
            covered += len(stream[j])
            j += 1
        if j + 2 >= len(stream):
            break
        a = stream[j][len(w) - covered:]
        tail = len(a) + len(stream[j + 1]) + len(stream[j + 2])
        stream = _split_tail(system, n, tail) + stream[j + 3:]
        z_blocks.append(w)
        if progress is not None:
            progress.update(1)
    if not z_blocks:
        raise ConstructionError("The stream is too short for a single round")

    z = np.fromiter((s for w in z_blocks for s in w), dtype=np.int8)
    mismatches = int((z != y[:len(z)]).sum())
    density = Fraction(mismatches, len(z))
    bound = Fraction(stats.tau + 3 * stats.ell, stats.tau + stats.s * t)
    checks = [Check.at_most(f'shadow_density[{n}]', density, bound)]
    if system.params.epsilon is not None:
        checks.append(Check.less(f'shadow_bound_below_epsilon[{n}]', bound,
                                 system.params.epsilon / 2 ** n))
    logger.info("Shadowed %d blocks of B_%d by %d words of B_%d, density %s",
                len(blocks), n, len(z_blocks), n + 1, density)
    return CodedShadow(n=n, z_blocks=z_blocks, rounds=len(z_blocks), z_length=len(z),
                       mismatches=mismatches, density=density, bound=bound, checks=checks)


def verify_coded_shadow(system, blocks, shadow):
    """Independent recount: re-parse every emitted word and redo the mismatch count"""
    n = shadow.n
    checks = []
    for index, w in enumerate(shadow.z_blocks):
        if not system.contains(n + 1, w):
            checks.append(Check.truth(f'z_block_in_B[{index}]', False,
                                      detail=f'length {len(w)} is not a parse into B_{n + 1}'))
            return checks
    y = [s for b in blocks for s in b]
    z = [s for w in shadow.z_blocks for s in w]
    checks.append(Check.at_most('z_within_y', len(z), len(y)))
    if len(z) <= len(y):
        recount = sum(1 for a, b in zip(z, y) if a != b)
        checks.append(Check.equal('mismatch_recount', recount, shadow.mismatches))
        checks.append(Check.at_most('recounted_density', Fraction(recount, len(z)), shadow.bound))
    return checks


# -- minimality and mixing witnesses -----------------------------------------

def coded_minimality_witness(system, n, u, samples=100, seed=None):
    """
    Does ``u`` occur in every member of ``B_{n+2}``? Exhaustive when the level is
    enumerable, otherwise over seeded samples.
    """
    u = tuple(u)
    stats = system.stats(n)
    if not system.contains(n, u):
        if len(u) >= stats.s:
            raise InvalidParameter(f"u must be a word of B_{n} or shorter than s({n}) = {stats.s}")
        if not coded_graph(system, n).reads(u):
            raise NotInLanguage(f"u is not a word of X_{n}")
    if system.enumerable(n + 2):
        members = system.words(n + 2)
        exhaustive = True
    else:
        members = coded_sample(system, n + 2, samples, seed)
        exhaustive = False
    missing = next((i for i, w in enumerate(members) if not count_occurrences(u, w)), None)
    return {
        'holds': missing is None,
        'exhaustive': exhaustive,
        'checked': len(members),
        'first_missing': missing,
    }


@dataclass
class Connection:
    w: tuple
    case: int
    level: int
    certificate: list
    certificate_level: int


def _case_two(system, n, m):
    t, tau = system.t(n), system.tau(n)
    stats = system.stats(n)
    rest = m - len(tau)
    for total in range(2, 2 * t - 1):
        if not total * stats.s <= rest <= total * stats.ell:
            continue
        j = max(1, total - t + 1)
        return j, total - j, rest
    return None


def coded_connect(system, u, v, m, n):
    """
    A word ``w`` with ``|w| = m`` and ``u w v`` in the language of ``X``, for ``u, v`` in ``B_n``.

    Case 1 fills with ``j`` words of ``B_n``; case 2 puts ``τ(n)`` between two runs of
    words; case 3 prefixes ``τ(n)`` and recurses one level up with ``u, v`` embedded in
    words of ``B_{n+1}``. The certificate is a list of words of ``B_{certificate_level}``
    whose concatenation contains ``u w v``.
    """
    u, v = tuple(u), tuple(v)
    for name, word in (('u', u), ('v', v)):
        if not system.contains(n, word):
            raise NotInLanguage(f"{name} is not a word of B_{n}")
    stats = system.stats(n)
    if m < 2 * stats.s:
        raise InvalidParameter(f"m must be at least 2 s({n}) = {2 * stats.s}, got {m}")
    t, tau = system.t(n), system.tau(n)
    fill = system.filler(n)

    if m <= (t - 2) * stats.ell:
        j = next((j for j in range(2, t - 1) if j * stats.s <= m <= j * stats.ell), None)
        if j is None:
            raise ConstructionError(f"No run of words of B_{n} has length {m}; s({n})/ell({n}) is not below 2/3")
        w = system.concatenation(n, j, m)
        certificate = [u + w + v + fill * (t - j - 2) + tau]
        return Connection(w=w, case=1, level=n, certificate=certificate, certificate_level=n + 1)

    if m <= (2 * t - 2) * stats.ell + len(tau):
        found = _case_two(system, n, m)
        if found is None:
            raise ConstructionError(f"No split of m={m} around tau({n}); the mixing inequalities fail at level {n}")
        j, k, rest = found
        blocks = system.blocks_of_total(n, j + k, rest)
        first, second = join(blocks[:j]), join(blocks[j:])
        w = first + tau + second
        c1 = fill * (t - 1 - j) + u + first + tau
        c2 = second + v + fill * (t - k - 1) + tau
        return Connection(w=w, case=2, level=n, certificate=[c1, c2], certificate_level=n + 1)

    following = system.stats(n + 1)
    reduced = m - len(tau)
    if reduced < 2 * following.s:
        raise ConstructionError(f"m - |tau({n})| = {reduced} is below 2 s({n + 1}) = {2 * following.s}")
    u_up = fill * (t - 1) + u + tau
    v_up = v + fill * (t - 1) + tau
    inner = coded_connect(system, u_up, v_up, reduced, n + 1)
    return Connection(w=tau + inner.w, case=3, level=inner.level,
                      certificate=inner.certificate, certificate_level=inner.certificate_level)


def verify_connection(system, u, v, m, connection):
    word = tuple(u) + connection.w + tuple(v)
    joined = join(connection.certificate)
    checks = [Check.equal('connector_length', len(connection.w), m)]
    for index, c in enumerate(connection.certificate):
        checks.append(Check.truth(f'certificate_in_B[{index}]',
                                  system.contains(connection.certificate_level, c)))
    checks.append(Check.truth('uwv_is_a_factor', count_occurrences(word, joined) > 0))
    return checks
