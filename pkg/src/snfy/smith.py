"""Constructive Smith normal form of A(x) in the string order.

Pipeline: rotate each string block and eliminate its bottom row
(upper triangular form), cancel off-diagonal entries against unit pivots,
clear the residual entries between alpha rows by exact division, then
permute the diagonal into divisibility order.  Every step is recorded as a
det-1 elementary operation, so the transcript compiles to P, Q in SL(Z[x]).
"""
from dataclasses import dataclass, field

from .operators import HBasisIndex, OperatorMatrixSpec, build_A_h_basis, default_fs, substitute_diagonal
from .partitions import partition_count, shape_lambda_n
from .polymat import (
    ElementaryOp,
    PolyMatrix,
    SparseRows,
    Transcript,
    compile_inverse,
    compile_transcript,
    int_det,
    mat_mul,
)
from .polyzx import ONE, NotDivisibleError, PolyZx, alpha_k

__all__ = [
    "BetaReport",
    "BlockView",
    "DivisibilityError",
    "SnfCertificate",
    "StructureError",
    "cancel_C1_C2",
    "clear_betas",
    "smith_form",
    "sort_diagonal",
    "theorem_diagonal",
    "upper_triangularize",
    "verify_beta_divisibility",
    "verify_certificate",
]


class StructureError(AssertionError):
    """An entry the block structure says is zero (or one) is not."""


class DivisibilityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class BlockView:
    boundaries: tuple
    sizes: tuple

    @classmethod
    def for_n(cls, n):
        idx = HBasisIndex.for_n(n)
        return cls(idx.block_boundaries, idx.cardinalities)

    @property
    def dim(self):
        return sum(self.sizes)

    @property
    def t(self):
        return len(self.sizes)

    def alpha_rows(self):
        """Index of the last row of each block; it carries alpha after elimination."""
        return tuple(o + s - 1 for o, s in zip(self.boundaries, self.sizes))


def _prefix_products(fs, upto):
    out = [ONE]
    for f in fs[:upto]:
        out.append(out[-1] * f)
    return out


def _record(work, transcript, op):
    work.apply(op)
    transcript.record(op)


def upper_triangularize(ax, blocks, fs):
    """Bring every block to unit-bidiagonal form with alpha in its last row.

    Returns (A1, transcript).  The first row of each block is cycled to the
    bottom with adjacent signed swaps, then the bottom row is cleared left to
    right with the unit pivots, leaving f_1 ... f_s on the diagonal.
    """
    fs = tuple(PolyZx.coerce(f) for f in fs)
    work = SparseRows.from_matrix(ax)
    tr = Transcript()
    for o, s in zip(blocks.boundaries, blocks.sizes):
        for r in range(o, o + s - 1):
            _record(work, tr, ElementaryOp("swap_rows", r, r + 1))
        bottom = o + s - 1
        for c in range(o, o + s - 1):
            if work.get(c, c) != ONE:
                raise StructureError(f"expected unit pivot at ({c}, {c})")
            e = work.get(bottom, c)
            if e:
                _record(work, tr, ElementaryOp("add_row", bottom, c, -e))
        for c in range(o, o + s - 1):
            if work.get(bottom, c):
                raise StructureError(f"bottom row of block at {o} not cleared at column {c}")
        expected = _prefix_products(fs, s)[s]
        if work.get(bottom, bottom) != expected:
            raise StructureError(f"diagonal at ({bottom}, {bottom}) is not f_1...f_{s}")
    a1 = work.to_matrix(ax.row_labels, ax.col_labels)
    for i, row in enumerate(work.rows):
        if any(c < i for c in row):
            raise StructureError(f"row {i} has entries left of the diagonal")
    return a1, tr


@dataclass
class BetaReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def verify_beta_divisibility(a1, blocks, fs):
    """Check that f_1...f_j divides the j-th entry of every alpha row in every later block."""
    fs = tuple(PolyZx.coerce(f) for f in fs)
    prods = _prefix_products(fs, max(blocks.sizes))
    report = BetaReport()
    for k, row in enumerate(blocks.alpha_rows()):
        for l in range(k + 1, blocks.t):
            o = blocks.boundaries[l]
            for j in range(1, blocks.sizes[l] + 1):
                report.checked += 1
                if not a1[row, o + j - 1].divisible_by(prods[j]):
                    report.failures.append((k, l, j))
    return report


def _predicted_a2_support(blocks):
    alpha = blocks.alpha_rows()
    return {(a, b) for i, a in enumerate(alpha) for b in alpha[i + 1:]}


def cancel_C1_C2(a1, blocks):
    """Clear everything except diagonal and alpha-row/alpha-column crossings.

    Column operations clear the unit rows top to bottom (left to right
    within a row); row operations then clear the unit columns.
    """
    work = SparseRows.from_matrix(a1)
    tr = Transcript()
    alpha = set(blocks.alpha_rows())
    units = [i for i in range(work.dim) if i not in alpha]
    for i in units:
        if work.get(i, i) != ONE:
            raise StructureError(f"expected unit pivot at ({i}, {i})")
        for j in sorted(c for c in work.rows[i] if c > i):
            e = work.get(i, j)
            if e:
                _record(work, tr, ElementaryOp("add_col", j, i, -e))
    for i in units:
        for r in range(i):
            e = work.get(r, i)
            if e:
                _record(work, tr, ElementaryOp("add_row", r, i, -e))
    allowed = _predicted_a2_support(blocks)
    for i, row in enumerate(work.rows):
        for j in row:
            if i != j and (i, j) not in allowed:
                raise StructureError(f"entry ({i}, {j}) survived cancellation")
    return work.to_matrix(a1.row_labels, a1.col_labels), tr


def clear_betas(a2, blocks):
    """Remove the residual entries between alpha rows by exact division.

    Rows are processed bottom-up so each alpha row used as a pivot is
    already diagonal-only; the quotient must be exact in Z[x].
    """
    work = SparseRows.from_matrix(a2)
    tr = Transcript()
    alpha = blocks.alpha_rows()
    for k in range(len(alpha) - 2, -1, -1):
        for l in range(k + 1, len(alpha)):
            beta = work.get(alpha[k], alpha[l])
            if not beta:
                continue
            try:
                q = beta.exact_div(work.get(alpha[l], alpha[l]))
            except (NotDivisibleError, ZeroDivisionError):
                raise DivisibilityError(f"divisibility violated at ({k}, {l})") from None
            _record(work, tr, ElementaryOp("add_row", alpha[k], alpha[l], -q))
    d = work.to_matrix(a2.row_labels, a2.col_labels)
    if not d.is_diagonal():
        raise StructureError("matrix is not diagonal after clearing")
    return d, tr


@dataclass
class SnfCertificate:
    D: PolyMatrix
    transcript: Transcript
    P: PolyMatrix
    Q: PolyMatrix
    input_spec: OperatorMatrixSpec
    order: tuple = None
    verified: bool = False

    @property
    def diagonal(self):
        return self.D.diag()

    def to_json(self):
        return {
            "n": self.input_spec.n,
            "spec": self.input_spec.to_json(),
            "order": [list(lam) for lam in self.order] if self.order else None,
            "D": [d.to_json() for d in self.diagonal],
            "P": [[e.to_json() for e in row] for row in self.P.entries],
            "Q": [[e.to_json() for e in row] for row in self.Q.entries],
            "transcript": self.transcript.to_json(),
            "verified": self.verified,
        }


def _chain_ok(diag):
    return all(b.divisible_by(a) for a, b in zip(diag, diag[1:]))


def sort_diagonal(d, transcript, blocks):
    """Order the diagonal as: units, then alpha entries by increasing block size.

    Transpositions are paired signed swaps (rows and columns together), which
    move diagonal entries without changing their signs.  Negative leading
    coefficients are fixed in pairs by negating two rows.
    """
    work = SparseRows.from_matrix(d)
    tr = Transcript()
    dim = work.dim
    alpha = blocks.alpha_rows()
    size_of = dict(zip(alpha, blocks.sizes))

    negative = [i for i in range(dim) if work.get(i, i).lc < 0]
    while len(negative) >= 2:
        i, j = negative.pop(), negative.pop()
        _record(work, tr, ElementaryOp("negate_rows", j, i))
    if negative:
        # a lone sign is pushed onto a unit entry when one exists
        i = negative.pop()
        units = [u for u in range(dim) if u != i and work.get(u, u).is_constant()]
        if units:
            _record(work, tr, ElementaryOp("negate_rows", units[0], i))

    tags = [(0, 0, i) if i not in size_of else (1, size_of[i], i) for i in range(dim)]
    target = sorted(tags)
    current = list(tags)
    for p in range(dim):
        if current[p] == target[p]:
            continue
        q = current.index(target[p], p + 1)
        _record(work, tr, ElementaryOp("swap_rows", p, q))
        _record(work, tr, ElementaryOp("swap_cols", p, q))
        current[p], current[q] = current[q], current[p]

    out = work.to_matrix(d.row_labels, d.col_labels)
    if not out.is_diagonal():
        raise StructureError("sorting broke diagonality")
    if not _chain_ok(out.diag()):
        raise DivisibilityError("diagonal does not form a divisibility chain")
    full = Transcript()
    full.extend(transcript)
    full.extend(tr)
    return out, full


def verify_certificate(ax, cert):
    """Exact check of P A Q = D and det P = det Q = 1.

    det P is shown to be a unit by multiplying P with the independently
    replayed inverse; a unit of Z[x] is a constant, so its value at x = 0
    settles the sign.
    """
    if mat_mul(mat_mul(cert.P, ax), cert.Q).entries != cert.D.entries:
        return False
    p_inv, q_inv = compile_inverse(cert.transcript, ax.dim)
    eye = PolyMatrix.identity(ax.dim)
    for m, m_inv in ((cert.P, p_inv), (cert.Q, q_inv)):
        if mat_mul(m, m_inv).entries != eye.entries:
            return False
        if int_det(m.evaluate(0)) != 1:
            return False
    return True


def smith_form(n, fs=None, verify=True):
    """Run the whole pipeline on A(x) for partitions of ``n``.

    ``fs`` defaults to the substitution that makes A(x) = A + xI.
    """
    if n < 1:
        raise ValueError("n must be positive")
    fs = default_fs(n) if fs is None else tuple(PolyZx.coerce(f) for f in fs)
    spec = OperatorMatrixSpec(n, 1, "h", fs)
    ax = substitute_diagonal(build_A_h_basis(n), fs)
    blocks = BlockView.for_n(n)

    a1, tr = upper_triangularize(ax, blocks, fs)
    report = verify_beta_divisibility(a1, blocks, fs)
    if not report.ok:
        raise DivisibilityError(f"alpha-row divisibility fails at {report.failures[:5]}")
    a2, tr2 = cancel_C1_C2(a1, blocks)
    tr.extend(tr2)
    diag, tr3 = clear_betas(a2, blocks)
    tr.extend(tr3)
    d, tr = sort_diagonal(diag, tr, blocks)

    p, q = compile_transcript(tr, ax.dim)
    cert = SnfCertificate(d, tr, p, q, spec, ax.row_labels)
    if verify:
        cert.verified = verify_certificate(ax, cert)
        if not cert.verified:
            raise AssertionError(f"certificate verification failed for n={n}")
    return cert


def theorem_diagonal(n):
    """Predicted diagonal: ones, then alpha_j for j over the conjugate of lambda(n), increasing."""
    if n < 1:
        raise ValueError("n must be positive")
    js = sorted(shape_lambda_n(n).conjugate)
    ones = partition_count(n) - len(js)
    return (ONE,) * ones + tuple(alpha_k(n, j) for j in js)
