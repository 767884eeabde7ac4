"""Acceptance checks, shared by the pytest suite and ``snfy selftest``.

Each check returns a :class:`CheckResult`; ``partial`` means the check ran
but a budget kept it from being exhaustive, which is not a failure.
"""
import random
import time
from dataclasses import dataclass

from .divisors import (
    DEFAULT_MINOR_BUDGET,
    check_conjecture,
    conjecture_diagonal,
    determinantal_ladder,
    operator_matrix,
    proposition_diagonal,
)
from .operators import (
    HBasisIndex,
    build_A_h_basis,
    build_M_schur,
    char_poly_formula,
    default_fs,
    substitute_diagonal,
)
from .partitions import (
    dominance_gt,
    enumerate_partitions,
    full_string_of,
    m_k,
    shape_lambda_n,
    string_decomposition,
)
from .polymat import determinant, mat_add_xI
from .polyzx import ONE, PolyZx
from .smith import BlockView, smith_form, theorem_diagonal, upper_triangularize, verify_beta_divisibility
from .zsnf import specialize_and_check


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self):
        return self.status in ("pass", "partial")

    def line(self):
        return f"[{self.status.upper():7}] {self.name} ({self.seconds:.2f}s) {self.detail}".rstrip()


def _lin(c):
    return PolyZx((c, 1))


def _prod(*cs):
    out = ONE
    for c in cs:
        out = out * _lin(c)
    return out


# written out factor by factor rather than derived from alpha_k
N6_GOLDEN = (ONE,) * 7 + (_prod(1), _prod(1), _prod(1, 2, 3), _prod(1, 2, 3, 4, 5, 7))


def check_n6_golden():
    start = time.perf_counter()
    cert = smith_form(6, verify=True)
    elapsed = time.perf_counter() - start
    ok = cert.diagonal == N6_GOLDEN and cert.verified and elapsed < 1.0
    return "pass" if ok else "fail", f"diag={'; '.join(map(str, cert.diagonal))} time={elapsed:.3f}s"


def check_smith_sweep(max_n=14):
    for n in range(1, max_n + 1):
        cert = smith_form(n, verify=True)
        if cert.diagonal != theorem_diagonal(n) or not cert.verified:
            return "fail", f"n={n}"
    return "pass", f"n=1..{max_n} verified"


def check_char_poly(max_n=12):
    for n in range(1, max_n + 1):
        expected = ONE
        for lam in enumerate_partitions(n):
            expected = expected * _lin(1 + m_k(lam, 1))
        if determinant(mat_add_xI(build_A_h_basis(n))) != expected:
            return "fail", f"n={n}"
    return "pass", f"n=1..{max_n}"


def check_string_cardinalities(max_n=30):
    for n in range(1, max_n + 1):
        cards = sorted(string_decomposition(n).cardinalities, reverse=True)
        if tuple(cards) != shape_lambda_n(n).conjugate:
            return "fail", f"n={n}"
    return "pass", f"n=1..{max_n}"


def block_structure_violations(n):
    """Every way A(n) departs from its expected block form."""
    a = build_A_h_basis(n)
    idx = HBasisIndex.for_n(n)
    order = idx.order
    block_of = {}
    pos_in_block = {}
    for b, (o, s) in enumerate(idx.blocks()):
        for r in range(s):
            block_of[o + r] = b
            pos_in_block[o + r] = r
    out = []
    for i in range(a.dim):
        for j in range(a.dim):
            v = a[i, j].eval_at(0)
            bi, bj = block_of[i], block_of[j]
            if bi > bj and v:
                out.append(("lower block nonzero", i, j))
            elif bi == bj:
                r, c = pos_in_block[i], pos_in_block[j]
                if r == c:
                    want = n + 1 if r + 1 == n else r + 1
                elif r == c + 1:
                    want = 1
                else:
                    want = 0
                if v != want:
                    out.append(("diagonal block entry", i, j))
            elif v:
                r, c = pos_in_block[i], pos_in_block[j]
                if r <= c:
                    out.append(("off-diagonal block not strictly lower", i, j))
                mu, lam = order[i], order[j]
                if m_k(mu, 1) - m_k(lam, 1) not in (1, 2):
                    out.append(("m1 jump", i, j))
                t_mu, t_lam = full_string_of(mu).terminal, full_string_of(lam).terminal
                if not dominance_gt(t_mu, t_lam):
                    out.append(("terminal dominance", i, j))
    return out


def check_block_structure(max_n=12):
    for n in range(1, max_n + 1):
        bad = block_structure_violations(n)
        if bad:
            return "fail", f"n={n}: {bad[:3]}"
    return "pass", f"n=1..{max_n}"


def check_alpha_divisibility(max_n=12, seed=2024):
    rng = random.Random(seed)
    for n in range(1, max_n + 1):
        constants = rng.sample([c for c in range(-50, 51) if c], n)
        for fs in (default_fs(n), tuple(PolyZx(c) for c in constants)):
            blocks = BlockView.for_n(n)
            ax = substitute_diagonal(build_A_h_basis(n), fs)
            a1, _ = upper_triangularize(ax, blocks, fs)
            report = verify_beta_divisibility(a1, blocks, fs)
            if not report.ok:
                return "fail", f"n={n} fs={[str(f) for f in fs]}: {report.failures[:3]}"
    return "pass", f"n=1..{max_n}, alpha and random constant fs"


def check_ladder_diagonal(max_n=6, minor_budget=DEFAULT_MINOR_BUDGET, threads=1):
    partial = []
    for n in range(1, max_n + 1):
        ladder = determinantal_ladder(
            operator_matrix(n, 1), theorem_diagonal(n),
            minor_budget=minor_budget, threads=threads, n=n, k=1,
        )
        if any(s in ("mismatch", "refuted") for s in ladder.status):
            return "fail", f"n={n}: {ladder.status}"
        if not ladder.complete:
            partial.append(n)
            continue
        if tuple(ladder.quotients) != theorem_diagonal(n):
            return "fail", f"n={n}: quotients differ"
    if partial:
        return "partial", f"budget left n={partial} non-exhaustive"
    return "pass", f"n=1..{max_n} full minor enumeration"


def check_conjecture_instances(max_exhaustive_n=6, max_n=12, minor_budget=DEFAULT_MINOR_BUDGET,
                               threads=1):
    partial = []
    for n in range(2, max_exhaustive_n + 1):
        for k in range(2, n + 1):
            report = check_conjecture(n, k, minor_budget=minor_budget, threads=threads)
            if report["verdict"] == "refuted":
                return "fail", f"refuted at n={n}, k={k}"
            if report["verdict"] != "confirmed":
                partial.append((n, k))
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            diag = conjecture_diagonal(n, k)
            product = ONE
            for e in diag.entries:
                product = product * e
            if product != char_poly_formula(n, k):
                return "fail", f"determinant condition fails at n={n}, k={k}"
            if 2 * k > n and n >= 2 and proposition_diagonal(n, k) != diag.entries:
                return "fail", f"proposition disagrees at n={n}, k={k}"
    if partial:
        return "partial", f"non-exhaustive: {partial}"
    return "pass", f"exhaustive n<={max_exhaustive_n}; determinant/proposition n<={max_n}"


def check_specialization(max_n=10, ks=(1, 2), cs=(0, 1, 2, 5, -7)):
    for n in range(1, max_n + 1):
        for k in ks:
            if k > n:
                continue
            for c in cs:
                report = specialize_and_check(n, k, c)
                if not report.match:
                    return "fail", f"n={n} k={k} c={c}: {report.lhs} vs {report.rhs}"
    return "pass", f"n<={max_n}, k in {ks}, c in {cs}"


def check_schur_vs_h(max_n=10):
    for n in range(1, max_n + 1):
        if determinant(mat_add_xI(build_M_schur(n))) != determinant(mat_add_xI(build_A_h_basis(n))):
            return "fail", f"n={n}"
    return "pass", f"n=1..{max_n}"


def criteria(minor_budget=DEFAULT_MINOR_BUDGET, threads=1):
    return [
        ("n=6 golden diagonal", check_n6_golden),
        ("Smith form sweep n=1..14", check_smith_sweep),
        ("characteristic polynomial n<=12", check_char_poly),
        ("string cardinalities = conjugate shape n<=30", check_string_cardinalities),
        ("block structure of A n<=12", check_block_structure),
        ("alpha-row divisibility n<=12", check_alpha_divisibility),
        ("determinantal divisors reproduce diagonal n<=6",
         lambda: check_ladder_diagonal(minor_budget=minor_budget, threads=threads)),
        ("general-k instances",
         lambda: check_conjecture_instances(minor_budget=minor_budget, threads=threads)),
        ("integer specialization n<=10", check_specialization),
        ("Schur vs h determinant n<=10", check_schur_vs_h),
    ]


def run_check(name, fn):
    start = time.perf_counter()
    try:
        status, detail = fn()
    except Exception as exc:  # a crash is a failed criterion, not a crashed run
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(name, status, detail, time.perf_counter() - start)


def run_all(minor_budget=DEFAULT_MINOR_BUDGET, threads=1, echo=None):
    results = []
    for name, fn in criteria(minor_budget, threads):
        res = run_check(name, fn)
        if echo:
            echo(res.line())
        results.append(res)
    return results

