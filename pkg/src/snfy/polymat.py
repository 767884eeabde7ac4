"""Square matrices over Z[x], det-1 elementary operations and exact determinants."""
from dataclasses import dataclass, field
from math import factorial

import numpy as np

from .polyzx import ONE, ZERO, PolyZx, kronecker_bits, l1, pack, unpack

__all__ = [
    "ElementaryOp",
    "PolyMatrix",
    "SparseRows",
    "Transcript",
    "apply_op",
    "compile_inverse",
    "compile_transcript",
    "determinant",
    "int_det",
    "interpolate",
    "mat_add_xI",
    "mat_mul",
    "minor",
]

ROW_KINDS = ("add_row", "swap_rows", "negate_rows")
COL_KINDS = ("add_col", "swap_cols", "negate_cols")


@dataclass(frozen=True)
class ElementaryOp:
    """One determinant-1 transformation.

    ``add_row``: row i += multiplier * row j.  ``swap_rows``: row i takes
    row j and row j takes -row i.  ``negate_rows``: rows i and j both
    change sign.  The ``*_col`` kinds act on columns the same way.
    """

    kind: str
    i: int
    j: int
    multiplier: PolyZx = ZERO

    def __post_init__(self):
        if self.kind not in ROW_KINDS + COL_KINDS:
            raise ValueError(f"unknown op kind {self.kind!r}")
        if self.kind.startswith("add") and self.i == self.j:
            raise ValueError("add op needs distinct lines")
        if self.kind.startswith("negate") and self.i == self.j:
            raise ValueError("negate op needs two distinct lines")

    @property
    def on_rows(self):
        return self.kind in ROW_KINDS

    def inverse(self):
        if self.kind.startswith("add"):
            return ElementaryOp(self.kind, self.i, self.j, -self.multiplier)
        if self.kind.startswith("swap"):
            return ElementaryOp(self.kind, self.j, self.i)
        return self

    def to_json(self):
        out = {"kind": self.kind, "i": self.i, "j": self.j}
        if self.kind.startswith("add"):
            out["multiplier"] = self.multiplier.to_json()
        return out

    @classmethod
    def from_json(cls, data):
        return cls(data["kind"], data["i"], data["j"], PolyZx(data.get("multiplier", [])))


@dataclass
class Transcript:
    row_ops: list = field(default_factory=list)
    col_ops: list = field(default_factory=list)

    def record(self, op):
        (self.row_ops if op.on_rows else self.col_ops).append(op)

    def extend(self, other):
        self.row_ops.extend(other.row_ops)
        self.col_ops.extend(other.col_ops)

    def __len__(self):
        return len(self.row_ops) + len(self.col_ops)

    def to_json(self):
        return {
            "row_ops": [op.to_json() for op in self.row_ops],
            "col_ops": [op.to_json() for op in self.col_ops],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            [ElementaryOp.from_json(d) for d in data["row_ops"]],
            [ElementaryOp.from_json(d) for d in data["col_ops"]],
        )


class SparseRows:
    """Mutable working matrix: one dict {column: PolyZx} per row, zeros absent."""

    def __init__(self, rows):
        self.rows = rows

    @classmethod
    def identity(cls, dim):
        return cls([{i: ONE} for i in range(dim)])

    @classmethod
    def from_matrix(cls, m):
        return cls([{j: e for j, e in enumerate(row) if e} for row in m.entries])

    @property
    def dim(self):
        return len(self.rows)

    def get(self, i, j):
        return self.rows[i].get(j, ZERO)

    def to_matrix(self, row_labels=None, col_labels=None):
        dim = self.dim
        entries = tuple(
            tuple(row.get(j, ZERO) for j in range(dim)) for row in self.rows
        )
        return PolyMatrix(entries, row_labels, col_labels)

    def apply(self, op):
        rows = self.rows
        i, j, kind = op.i, op.j, op.kind
        if kind == "add_row":
            m = op.multiplier
            if not m:
                return
            target = rows[i]
            for c, e in rows[j].items():
                v = target.get(c, ZERO) + m * e
                if v:
                    target[c] = v
                else:
                    target.pop(c, None)
        elif kind == "swap_rows":
            if i == j:
                return
            rows[i], rows[j] = rows[j], {c: -e for c, e in rows[i].items()}
        elif kind == "negate_rows":
            for r in (i, j):
                rows[r] = {c: -e for c, e in rows[r].items()}
        elif kind == "add_col":
            m = op.multiplier
            if not m:
                return
            for row in rows:
                e = row.get(j)
                if e is None:
                    continue
                v = row.get(i, ZERO) + m * e
                if v:
                    row[i] = v
                else:
                    row.pop(i, None)
        elif kind == "swap_cols":
            if i == j:
                return
            for row in rows:
                a = row.pop(i, None)
                b = row.pop(j, None)
                if b is not None:
                    row[i] = b
                if a is not None:
                    row[j] = -a
        elif kind == "negate_cols":
            for row in rows:
                for c in (i, j):
                    if c in row:
                        row[c] = -row[c]


@dataclass(frozen=True)
class PolyMatrix:
    """Immutable dense square matrix over Z[x] with optional index labels."""

    entries: tuple
    row_labels: tuple = None
    col_labels: tuple = None

    def __post_init__(self):
        entries = tuple(tuple(PolyZx.coerce(e) for e in row) for row in self.entries)
        dim = len(entries)
        if any(len(row) != dim for row in entries):
            raise ValueError("matrix must be square")
        for labels in (self.row_labels, self.col_labels):
            if labels is not None and len(labels) != dim:
                raise ValueError("label count does not match dimension")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_ints(cls, rows, row_labels=None, col_labels=None):
        return cls(tuple(tuple(PolyZx(v) for v in row) for row in rows), row_labels, col_labels)

    @classmethod
    def identity(cls, dim, labels=None):
        return cls(
            tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)),
            labels,
            labels,
        )

    @classmethod
    def diagonal(cls, diag, labels=None):
        dim = len(diag)
        return cls(
            tuple(
                tuple(PolyZx.coerce(diag[i]) if i == j else ZERO for j in range(dim))
                for i in range(dim)
            ),
            labels,
            labels,
        )

    @property
    def dim(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def max_degree(self):
        return max((e.degree for row in self.entries for e in row), default=-1)

    def is_diagonal(self):
        return all(
            not e for i, row in enumerate(self.entries) for j, e in enumerate(row) if i != j
        )

    def diag(self):
        return tuple(self.entries[i][i] for i in range(self.dim))

    def is_symmetric(self):
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.dim)
            for j in range(i)
        )

    def evaluate(self, c):
        """Integer matrix obtained by setting x = c."""
        return [[e.eval_at(c) for e in row] for row in self.entries]

    def submatrix(self, rows, cols):
        return PolyMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def transpose(self):
        return PolyMatrix(tuple(zip(*self.entries)), self.col_labels, self.row_labels)

    def nonzero_count(self):
        return sum(1 for row in self.entries for e in row if e)

    def to_json(self, n=None):
        out = {}
        if n is not None:
            out["n"] = n
        if self.row_labels is not None:
            out["order"] = [list(lam) for lam in self.row_labels]
            if self.col_labels != self.row_labels and self.col_labels is not None:
                out["col_order"] = [list(lam) for lam in self.col_labels]
        out["entries"] = [[e.to_json() for e in row] for row in self.entries]
        return out

    @classmethod
    def from_json(cls, data):
        labels = tuple(tuple(lam) for lam in data["order"]) if "order" in data else None
        col_labels = (
            tuple(tuple(lam) for lam in data["col_order"]) if "col_order" in data else labels
        )
        return cls(
            tuple(tuple(PolyZx(e) for e in row) for row in data["entries"]),
            labels,
            col_labels,
        )

    def pretty(self):
        cells = [[str(e) for e in row] for row in self.entries]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def apply_op(m, op):
    """Return the matrix after one elementary operation; ``m`` is untouched."""
    if not (0 <= op.i < m.dim and 0 <= op.j < m.dim):
        raise IndexError(f"op indices ({op.i}, {op.j}) out of range for dim {m.dim}")
    work = SparseRows.from_matrix(m)
    work.apply(op)
    return work.to_matrix(m.row_labels, m.col_labels)


def _replay(ops, dim):
    work = SparseRows.identity(dim)
    for op in ops:
        work.apply(op)
    return work.to_matrix()


def compile_transcript(t, dim):
    """(P, Q) such that replaying ``t`` on A gives P @ A @ Q."""
    return _replay(t.row_ops, dim), _replay(t.col_ops, dim)


def compile_inverse(t, dim):
    """(P^-1, Q^-1), replaying inverse ops in reverse order."""
    return (
        _replay([op.inverse() for op in reversed(t.row_ops)], dim),
        _replay([op.inverse() for op in reversed(t.col_ops)], dim),
    )


def mat_mul(a, b):
    """Exact product via Kronecker substitution of every entry."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    dim = a.dim
    row_l1 = max((sum(l1(e) for e in row) for row in a.entries), default=0)
    max_b = max((l1(e) for row in b.entries for e in row), default=0)
    bits = kronecker_bits(max(row_l1 * max_b, row_l1, max_b))
    pa = [[(j, pack(e, bits)) for j, e in enumerate(row) if e] for row in a.entries]
    pb = [[(j, pack(e, bits)) for j, e in enumerate(row) if e] for row in b.entries]
    out = []
    for row in pa:
        acc = [0] * dim
        for k, v in row:
            for j, w in pb[k]:
                acc[j] += v * w
        out.append(tuple(unpack(v, bits) if v else ZERO for v in acc))
    return PolyMatrix(tuple(out), a.row_labels, b.col_labels)


def mat_add_xI(a):
    x = PolyZx((0, 1))
    return PolyMatrix(
        tuple(
            tuple(e + x if i == j else e for j, e in enumerate(row))
            for i, row in enumerate(a.entries)
        ),
        a.row_labels,
        a.col_labels,
    )


def int_det(rows):
    """Bareiss fraction-free determinant of an integer matrix."""
    dim = len(rows)
    if dim == 0:
        return 1
    m = np.array(rows, dtype=object).reshape(dim, dim)
    sign = 1
    prev = 1
    for k in range(dim - 1):
        if m[k, k] == 0:
            below = [r for r in range(k + 1, dim) if m[r, k] != 0]
            if not below:
                return 0
            r = below[0]
            m[[k, r]] = m[[r, k]]
            sign = -sign
        pivot = m[k, k]
        sub = m[k + 1:, k + 1:] * pivot - np.outer(m[k + 1:, k], m[k, k + 1:])
        m[k + 1:, k + 1:] = sub // prev
        m[k + 1:, k] = 0
        prev = pivot
    return sign * int(m[dim - 1, dim - 1])


def interpolate(values):
    """Polynomial of degree < len(values) taking values[i] at x = i (exact)."""
    d = len(values) - 1
    diffs = []
    cur = list(values)
    while cur:
        diffs.append(cur[0])
        cur = [b - a for a, b in zip(cur, cur[1:])]
    # sum_j diff_j * C(x, j), scaled by d! to stay in integers
    total = [0] * (d + 1)
    falling = [1]
    for j, dj in enumerate(diffs):
        if dj:
            scale = dj * (factorial(d) // factorial(j))
            for i, c in enumerate(falling):
                total[i] += scale * c
        nxt = [0] * (len(falling) + 1)
        for i, c in enumerate(falling):
            nxt[i + 1] += c
            nxt[i] -= j * c
        falling = nxt
    denom = factorial(d)
    out = []
    for c in total:
        q, r = divmod(c, denom)
        if r:
            raise ArithmeticError("interpolation produced a non-integral coefficient")
        out.append(q)
    return PolyZx(out)


def degree_bound(m):
    """Upper bound on deg det(m) from row-wise and column-wise maximum degrees."""
    if m.dim == 0:
        return 0
    rows = [max(e.degree for e in row) for row in m.entries]
    cols = [max(m.entries[i][j].degree for i in range(m.dim)) for j in range(m.dim)]
    if min(rows) < 0 or min(cols) < 0:
        return -1
    return min(sum(rows), sum(cols))


def determinant(m):
    """Exact det by evaluation at 0..D (D a degree bound) and interpolation."""
    if m.dim == 0:
        return ONE
    bound = degree_bound(m)
    if bound < 0:
        return ZERO
    values = [int_det(m.evaluate(c)) for c in range(bound + 1)]
    return interpolate(values)


def minor(m, rows, cols):
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    return determinant(m.submatrix(rows, cols))
