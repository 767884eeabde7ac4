"""Matrices of k d/dp_k p_k on degree-n symmetric functions.

Columns hold images: column lambda is the expansion of the operator applied
to the basis element indexed by lambda.
"""
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .partitions import enumerate_partitions, m_k, string_decomposition, string_order
from .polymat import PolyMatrix
from .polyzx import ONE, PolyZx

__all__ = [
    "HBasisIndex",
    "OperatorMatrixSpec",
    "build_A_h_basis",
    "build_M_k_h_basis",
    "build_M_schur",
    "char_poly_formula",
    "default_fs",
    "p_in_h",
    "substitute_diagonal",
]


@dataclass(frozen=True)
class HBasisIndex:
    order: tuple
    block_boundaries: tuple
    cardinalities: tuple

    @classmethod
    def for_n(cls, n):
        sd = string_decomposition(n)
        return cls(sd.order, sd.offsets, sd.cardinalities)

    @property
    def t(self):
        return len(self.cardinalities)

    def blocks(self):
        """(offset, size) for every string block."""
        return tuple(zip(self.block_boundaries, self.cardinalities))


def _merge(a, b):
    return tuple(sorted(a + b, reverse=True))


@lru_cache(maxsize=None)
def p_in_h(k):
    """Power sum p_k in the complete homogeneous basis, as {partition: coeff}.

    Newton: p_k = k h_k - sum_{i=1}^{k-1} h_{k-i} p_i.
    """
    if k < 1:
        raise ValueError("k must be positive")
    out = Counter({(k,): k})
    for i in range(1, k):
        for nu, c in p_in_h(i).items():
            out[_merge((k - i,), nu)] -= c
    return {nu: c for nu, c in out.items() if c}


def _columns_to_matrix(columns, order):
    index = {lam: i for i, lam in enumerate(order)}
    dim = len(order)
    rows = [[0] * dim for _ in range(dim)]
    for lam, col in columns.items():
        j = index[lam]
        for mu, c in col.items():
            rows[index[mu]][j] += c
    return PolyMatrix.from_ints(rows, order, order)


def build_A_h_basis(n):
    """d/dp_1 p_1 on {h_lambda}, rows and columns in string order."""
    order, _ = string_order(n)
    columns = {}
    for lam in order:
        col = Counter()
        col[lam] += m_k(lam, 1) + 1
        big = [p for p in lam if p >= 2]
        ones = len(lam) - len(big)
        for r in range(len(big)):
            lowered = big[:r] + [big[r] - 1] + big[r + 1:]
            mu = tuple(sorted(lowered, reverse=True)) + (1,) * (ones + 1)
            col[mu] += 1
        columns[lam] = col
    return _columns_to_matrix(columns, order)


def build_M_k_h_basis(n, k):
    """k d/dp_k p_k on {h_lambda} in string order.

    Uses k dh_m/dp_k = h_{m-k} and the Newton expansion of p_k.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    order, _ = string_order(n)
    pk = p_in_h(k)
    columns = {}
    for lam in order:
        col = Counter({lam: k})
        for r, part in enumerate(lam):
            if part < k:
                continue
            rest = lam[:r] + ((part - k,) if part > k else ()) + lam[r + 1:]
            for nu, c in pk.items():
                col[_merge(rest, nu)] += c
        columns[lam] = col
    return _columns_to_matrix(columns, order)


def _addable(lam):
    out = []
    for r in range(len(lam) + 1):
        above = lam[r - 1] if r else None
        cur = lam[r] if r < len(lam) else 0
        if above is None or above > cur:
            out.append(lam[:r] + (cur + 1,) + lam[r + 1:])
    return out


def _removable(nu):
    out = []
    for r, part in enumerate(nu):
        below = nu[r + 1] if r + 1 < len(nu) else 0
        if part > below:
            lowered = nu[:r] + ((part - 1,) if part > 1 else ()) + nu[r + 1:]
            out.append(lowered)
    return out


def build_M_schur(n):
    """DU on level n of Young's lattice, descending lexicographic order."""
    order = enumerate_partitions(n)
    columns = {}
    for lam in order:
        col = Counter()
        for nu in _addable(lam):
            for mu in _removable(nu):
                col[mu] += 1
        columns[lam] = col
    return _columns_to_matrix(columns, order)


def default_fs(n):
    """f_i = i + x for i < n and f_n = n + 1 + x; these turn A into A + xI."""
    return tuple(PolyZx((i + 1 if i == n else i, 1)) for i in range(1, n + 1))


def substitute_diagonal(a, fs, index=None):
    """Replace the r-th diagonal entry of every string block by fs[r]."""
    fs = tuple(PolyZx.coerce(f) for f in fs)
    if index is None:
        n = sum(a.row_labels[0]) if a.row_labels else None
        if n is None or len(fs) != n:
            raise ValueError(f"need one f per string position (n={n}, got {len(fs)})")
        index = HBasisIndex.for_n(n)
    if sum(index.cardinalities) != a.dim:
        raise ValueError("block structure does not match matrix dimension")
    if max(index.cardinalities) > len(fs):
        raise ValueError("not enough fs for the longest string")
    entries = [list(row) for row in a.entries]
    for offset, size in index.blocks():
        for r in range(size):
            entries[offset + r][offset + r] = fs[r]
    return PolyMatrix(tuple(map(tuple, entries)), a.row_labels, a.col_labels)


def char_poly_formula(n, k):
    """prod over partitions of n of (x + k (m_k(lambda) + 1))."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    out = ONE
    for lam in enumerate_partitions(n):
        out = out * PolyZx((k * (m_k(lam, k) + 1), 1))
    return out


@dataclass(frozen=True)
class OperatorMatrixSpec:
    n: int
    k: int = 1
    basis: str = "h"
    substituted_fs: tuple = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.basis not in ("h", "schur"):
            raise ValueError(f"unknown basis {self.basis!r}")
        if self.substituted_fs is not None and self.basis != "h":
            raise ValueError("diagonal substitution needs the h basis")
        if self.basis == "schur" and self.k != 1:
            raise ValueError("the Schur basis matrix is built for k = 1 only")

    def build(self):
        if self.basis == "schur":
            return build_M_schur(self.n)
        m = build_A_h_basis(self.n) if self.k == 1 else build_M_k_h_basis(self.n, self.k)
        if self.substituted_fs is not None:
            m = substitute_diagonal(m, self.substituted_fs)
        return m

    def to_json(self):
        out = {"n": self.n, "k": self.k, "basis": self.basis}
        if self.substituted_fs is not None:
            out["fs"] = [f.to_json() for f in self.substituted_fs]
        return out

