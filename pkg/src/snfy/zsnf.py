"""Integer Smith normal form, used as an independent check by specializing x."""
from dataclasses import dataclass

from .divisors import conjecture_diagonal
from .operators import build_M_k_h_basis, build_M_schur
from .partitions import m_k, string_order
from .smith import theorem_diagonal

__all__ = ["IntSnf", "SpecializationReport", "eigen_multiset", "int_snf", "specialize_and_check"]


@dataclass(frozen=True)
class IntSnf:
    diag: tuple

    def is_chain(self):
        return all(b % a == 0 if a else b == 0 for a, b in zip(self.diag, self.diag[1:]))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def int_snf(matrix):
    """Invariant factors of an integer matrix (nonnegative, zeros last)."""
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if not a[i][t]:
                    continue
                p, e = a[t][t], a[i][t]
                if e % p == 0:
                    q = e // p
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                else:
                    # Bezout block [[s, u], [-e/g, p/g]] has determinant 1
                    g, s, u = _xgcd(p, e)
                    rt, ri = a[t], a[i]
                    a[t] = [s * x + u * y for x, y in zip(rt, ri)]
                    a[i] = [(-e // g) * x + (p // g) * y for x, y in zip(rt, ri)]
                done = False
            for j in range(t + 1, cols):
                if not a[t][j]:
                    continue
                p, e = a[t][t], a[t][j]
                if e % p == 0:
                    q = e // p
                    for row in a:
                        row[j] -= q * row[t]
                else:
                    g, s, u = _xgcd(p, e)
                    for row in a:
                        x, y = row[t], row[j]
                        row[t] = s * x + u * y
                        row[j] = (-e // g) * x + (p // g) * y
                done = False
            if not done:
                continue
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
        t += 1
    diag.extend([0] * (min(rows, cols) - len(diag)))
    return IntSnf(tuple(diag))


def eigen_multiset(n, k):
    """k (m_k(lambda) + 1) for every partition of n, in string order."""
    order, _ = string_order(n)
    return tuple(k * (m_k(lam, k) + 1) for lam in order)


@dataclass(frozen=True)
class SpecializationReport:
    n: int
    k: int
    c: int
    lhs: tuple
    rhs: tuple

    @property
    def match(self):
        return self.lhs == self.rhs

    def to_json(self):
        return {
            "n": self.n, "k": self.k, "c": self.c,
            "lhs": list(self.lhs), "rhs": list(self.rhs), "match": self.match,
        }


def specialize_and_check(n, k, c):
    """Compare int_snf(M_k + cI) with the integer SNF of the predicted diagonal at x = c.

    For k = 1 the matrix is the Schur-basis one and the prediction is the
    theorem diagonal; for k >= 2 the h-basis matrix and the peeled diagonal.
    """
    if k == 1:
        m = build_M_schur(n)
        predicted = theorem_diagonal(n)
    else:
        m = build_M_k_h_basis(n, k)
        predicted = conjecture_diagonal(n, k).entries
    mat = m.evaluate(0)
    for i in range(m.dim):
        mat[i][i] += c
    values = [d.eval_at(c) for d in predicted]
    diag_matrix = [[values[i] if i == j else 0 for j in range(len(values))] for i in range(len(values))]
    return SpecializationReport(n, k, c, int_snf(mat).diag, int_snf(diag_matrix).diag)
