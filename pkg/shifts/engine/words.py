"""
Alphabets, finite words and ultimately periodic points.

Words are plain tuples of non-negative ints. Every distance is returned as an exact
``Fraction``; floats only show up when a report is rendered as text.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .exceptions import AlphabetError, LevelUnavailable, WordLengthError

logger = logging.getLogger(__name__)

Word = tuple


@dataclass(frozen=True)
class Alphabet:
    """The symbols ``0 .. size-1``"""

    size: int = 2

    def __post_init__(self):
        if self.size < 2:
            raise AlphabetError(f"An alphabet needs at least two symbols, got {self.size}")

    @property
    def symbols(self):
        return range(self.size)

    def check(self, word):
        for index, symbol in enumerate(word):
            if not 0 <= symbol < self.size:
                raise AlphabetError(
                    f"Symbol {symbol} at position {index} is outside the alphabet of size {self.size}"
                )
        return tuple(word)


def as_word(symbols):
    return tuple(int(s) for s in symbols)


def border_table(pattern):
    """Classic failure function: ``table[i]`` is the longest proper border of ``pattern[:i]``"""
    table = [0] * (len(pattern) + 1)
    if not pattern:
        return table
    table[0] = -1
    k = -1
    for i, symbol in enumerate(pattern):
        while k >= 0 and pattern[k] != symbol:
            k = table[k]
        k += 1
        table[i + 1] = k
    table[0] = 0
    return table


def count_occurrences(pattern, text):
    """Overlapping occurrences of ``pattern`` in ``text`` (Knuth-Morris-Pratt scan)"""
    m = len(pattern)
    if m == 0 or m > len(text):
        return 0
    table = border_table(pattern)
    count = 0
    q = 0
    for symbol in text:
        while q > 0 and pattern[q] != symbol:
            q = table[q]
        if pattern[q] == symbol:
            q += 1
        if q == m:
            count += 1
            q = table[m]
    return count


def primitive_root(word):
    """Shortest ``r`` with ``word == r * k``"""
    n = len(word)
    if n == 0:
        return tuple(word)
    p = n - border_table(word)[n]
    if n % p == 0:
        return tuple(word[:p])
    return tuple(word)


def minimal_rotation(word):
    word = tuple(word)
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


@dataclass(frozen=True)
class UPPoint:
    """
    The one-sided point ``preperiod · period^∞``.

    The representation is canonical after construction: the period is primitive and the
    preperiod as short as possible, so two points are equal iff their fields are equal.
    """

    preperiod: tuple = ()
    period: tuple = (0,)

    def __post_init__(self):
        pre = as_word(self.preperiod)
        per = as_word(self.period)
        if not per:
            raise WordLengthError("The period of an ultimately periodic point must be nonempty")
        per = primitive_root(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        object.__setattr__(self, 'preperiod', pre)
        object.__setattr__(self, 'period', per)

    def symbol(self, i):
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def window(self, start, length):
        return tuple(self.symbol(i) for i in range(start, start + length))

    def prefix(self, length):
        return self.window(0, length)

    def shift(self, steps=1):
        point = self
        for _ in range(steps):
            if point.preperiod:
                point = UPPoint(point.preperiod[1:], point.period)
            else:
                point = UPPoint((), point.period[1:] + point.period[:1])
        return point

    def check_alphabet(self, alphabet):
        alphabet.check(self.preperiod)
        alphabet.check(self.period)
        return self


def hamming_count(u, w):
    if len(u) != len(w):
        raise WordLengthError(f"Hamming distance needs equal lengths, got {len(u)} and {len(w)}")
    return sum(1 for a, b in zip(u, w) if a != b)


def hamming_normalized(u, w):
    """Fraction of positions where ``u`` and ``w`` differ"""
    if len(u) != len(w) or not u:
        raise WordLengthError(
            f"Normalized Hamming distance needs equal positive lengths, got {len(u)} and {len(w)}"
        )
    return Fraction(hamming_count(u, w), len(u))


def dbar_up(x, y, alphabet=None):
    """
    Upper density of disagreements between two ultimately periodic points.

    Preperiods have density zero, so the value is the mismatch density of the two
    periodic tails over one common period, read after both preperiods.
    """
    if alphabet is not None:
        x.check_alphabet(alphabet)
        y.check_alphabet(alphabet)
    start = max(len(x.preperiod), len(y.preperiod))
    window = lcm(len(x.period), len(y.period))
    mismatches = sum(1 for i in range(start, start + window) if x.symbol(i) != y.symbol(i))
    return Fraction(mismatches, window)


def freq(w, block):
    """
    Occurrences of ``w`` in ``block`` divided by ``|block|`` (0 when ``|w| > |block|``).

    The empty pattern has frequency 1 in any nonempty block.
    """
    if not block:
        return Fraction(0)
    if not w:
        return Fraction(1)
    if len(w) > len(block):
        return Fraction(0)
    return Fraction(count_occurrences(w, block), len(block))


def block_counts(block, k):
    """Non-cyclic counts of every k-block of ``block``"""
    counts = {}
    for i in range(len(block) - k + 1):
        piece = tuple(block[i:i + k])
        counts[piece] = counts.get(piece, 0) + 1
    return counts


def dstar_block(block, mu, K):
    """
    Truncated frequency distance between a finite block and a block distribution.

    Returns ``(value, tail_bound)``: the sum over levels ``1..K`` of
    ``2^-k · Σ_w |freq(w, block) - μ[w]|``, and ``2^(1-K)``, which bounds what the
    untruncated series adds.
    """
    if K < 1:
        raise WordLengthError(f"Truncation level must be positive, got {K}")
    if K > mu.level:
        raise LevelUnavailable(K, mu.level)
    n = len(block)
    value = Fraction(0)
    for k in range(1, K + 1):
        marginal = mu.marginal(k)
        counts = block_counts(block, k) if n >= k else {}
        support = set(counts) | set(marginal.support())
        level_sum = sum(
            (abs(Fraction(counts.get(w, 0), n if n else 1) - marginal.prob(w)) for w in support),
            Fraction(0),
        )
        value += level_sum / 2 ** k
    return value, Fraction(1, 2 ** (K - 1))
