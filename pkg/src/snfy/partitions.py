"""Integer partitions, rising strings and the string order on partitions of n.

Partitions are plain tuples of positive integers in weakly decreasing order;
the empty tuple is the unique partition of 0.
"""
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "FullString",
    "ShapeLambdaN",
    "StringDecomposition",
    "conjugate_of",
    "dominance_gt",
    "enumerate_partitions",
    "full_string_of",
    "is_initial",
    "is_partition",
    "is_terminal",
    "lex_key",
    "m_k",
    "minus_op",
    "partition_count",
    "plus_op",
    "shape_lambda_n",
    "string_decomposition",
    "string_order",
]


def is_partition(parts):
    parts = tuple(parts)
    if any(not isinstance(p, int) or p < 1 for p in parts):
        return False
    return all(a >= b for a, b in zip(parts, parts[1:]))


@lru_cache(maxsize=None)
def partition_count(n):
    """p(n) by Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    table = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > m:
                break
            sign = 1 if j % 2 else -1
            total += sign * table[m - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= m:
                total += sign * table[m - g2]
            j += 1
        table[m] = total
    return table[n]


@lru_cache(maxsize=None)
def enumerate_partitions(n):
    """All partitions of ``n`` in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(out)


def m_k(lam, k):
    """Number of parts of ``lam`` equal to ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    return sum(1 for part in lam if part == k)


def conjugate_of(lam):
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def lex_key(lam, length):
    # missing parts compare as 0
    return tuple(lam) + (0,) * (length - len(lam))


def dominance_gt(mu, lam):
    """True iff ``mu`` strictly dominates ``lam`` (same size, mu != lam)."""
    if sum(mu) != sum(lam):
        raise ValueError(f"partitions of different sizes: {mu} vs {lam}")
    if tuple(mu) == tuple(lam):
        return False
    length = max(len(mu), len(lam))
    a = b = 0
    for x, y in zip(lex_key(mu, length), lex_key(lam, length)):
        a += x
        b += y
        if a < b:
            return False
    return True


def is_terminal(lam):
    lam = tuple(lam)
    return lam == (1,) or m_k(lam, 1) == 0


def is_initial(lam):
    lam = tuple(lam)
    if len(lam) == 0 or lam == (1,):
        return True
    if len(lam) == 1:
        return False
    return lam[0] == lam[1]


def plus_op(lam):
    """Remove one trailing 1 and add it to the first part."""
    lam = tuple(lam)
    if lam == (1,):
        raise ValueError("plus_op is undefined on (1)")
    if m_k(lam, 1) == 0:
        raise ValueError(f"terminal: {lam} has no part equal to 1")
    body = lam[:-1]
    return (body[0] + 1,) + body[1:]


def minus_op(lam):
    """Inverse of :func:`plus_op`; defined when ``lam`` is not initial."""
    lam = tuple(lam)
    if is_initial(lam):
        raise ValueError(f"initial: {lam} has no predecessor")
    return (lam[0] - 1,) + lam[1:] + (1,)


@dataclass(frozen=True)
class FullString:
    """A maximal rising string, listed from its terminal element down."""

    elements: tuple

    @property
    def terminal(self):
        return self.elements[0]

    @property
    def initial(self):
        return self.elements[-1]

    @property
    def cardinality(self):
        return len(self.elements)


def _string_from_terminal(tau):
    elements = [tau]
    while not is_initial(elements[-1]):
        elements.append(minus_op(elements[-1]))
    return FullString(tuple(elements))


def full_string_of(lam):
    lam = tuple(lam)
    if not lam:
        raise ValueError("the empty partition lies in no string")
    top = lam
    while not is_terminal(top):
        top = plus_op(top)
    return _string_from_terminal(top)


@dataclass(frozen=True)
class StringDecomposition:
    n: int
    strings: tuple

    @property
    def t(self):
        return len(self.strings)

    @property
    def cardinalities(self):
        return tuple(s.cardinality for s in self.strings)

    @property
    def order(self):
        """All partitions of n, string by string, each string terminal first."""
        return tuple(lam for s in self.strings for lam in s.elements)

    @property
    def offsets(self):
        out, pos = [], 0
        for s in self.strings:
            out.append(pos)
            pos += s.cardinality
        return tuple(out)

    def to_json(self):
        return [[list(lam) for lam in s.elements] for s in self.strings]


@lru_cache(maxsize=None)
def string_decomposition(n):
    if n < 1:
        raise ValueError("n must be positive")
    terminals = [lam for lam in enumerate_partitions(n) if is_terminal(lam)]
    # enumerate_partitions is already descending lexicographic
    return StringDecomposition(n, tuple(_string_from_terminal(t) for t in terminals))


@lru_cache(maxsize=None)
def string_order(n):
    """(order, index) for the total string order, largest partition first."""
    order = string_decomposition(n).order
    return order, {lam: i for i, lam in enumerate(order)}


@dataclass(frozen=True)
class ShapeLambdaN:
    shape: tuple
    conjugate: tuple


def shape_lambda_n(n):
    """The partition (p(n)-p(n-1), ..., p(2)-p(1), p(1)) of p(n) and its conjugate."""
    if n < 1:
        raise ValueError("n must be positive")
    shape = tuple(partition_count(m) - partition_count(m - 1) for m in range(n, 1, -1))
    shape += (partition_count(1),)
    return ShapeLambdaN(shape, conjugate_of(shape))
