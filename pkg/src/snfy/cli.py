"""snfy command line: strings, matrix, snf, conjecture, specialize, selftest.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .divisors import DEFAULT_MINOR_BUDGET, check_conjecture
from .operators import OperatorMatrixSpec
from .partitions import shape_lambda_n, string_decomposition
from .polyzx import alpha_factors, alpha_k
from .smith import smith_form
from .zsnf import specialize_and_check

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2
VERIFY_DEFAULT_MAX_N = 10


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 1
    k: int = 1
    basis: str = "h"
    format: str = "plain"
    verify: bool = None
    minor_budget: int = DEFAULT_MINOR_BUDGET
    threads: int = None
    out_path: str = None
    c: int = 0

    def validate(self):
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.k < 1:
            raise UsageError("--k must be at least 1")
        if self.minor_budget <= 0:
            raise UsageError("--minor-budget must be positive")
        if self.command in ("matrix", "conjecture", "specialize") and self.k > self.n:
            raise UsageError("--k must not exceed --n")
        if self.command == "matrix" and self.basis == "schur" and self.k != 1:
            raise UsageError("the Schur basis is available for k = 1 only")


def thread_count(n, requested=None):
    """Explicit request, else SNFY_THREADS, else all cores; always 1 for n <= 6."""
    if n <= 6:
        return 1
    if requested:
        return max(1, requested)
    env = os.environ.get("SNFY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def compact(lam):
    """Exponent notation for a partition, e.g. (2, 2, 1, 1) -> 2^21^2."""
    if not lam:
        return "()"
    if max(lam) >= 10:
        return "(" + ",".join(map(str, lam)) + ")"
    out = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        out.append(str(lam[i]) + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "".join(out)


def _tuple(lam):
    return "(" + ",".join(map(str, lam)) + ")"


def alpha_index(n, p):
    for j in range(1, n + 1):
        if alpha_k(n, j) == p:
            return j
    return None


def factor_list(n, p):
    """Linear factors of an alpha entry as coefficient arrays; None when p is not one."""
    if p == 1:
        return []
    j = alpha_index(n, p)
    return None if j is None else [f.to_json() for f in alpha_factors(n, j)]


def factored(n, p, latex=False):
    j = alpha_index(n, p)
    if j is None:
        return p.latex() if latex else str(p)
    return "".join(f"({f.latex() if latex else f})" for f in alpha_factors(n, j))


def render_diagonal(n, diag, latex=False):
    parts = []
    ones = 0
    for d in diag:
        if d == 1:
            ones += 1
            continue
        parts.append(factored(n, d, latex))
    head = ([f"1^{{{ones}}}" if latex else f"1^{ones}"] if ones > 1 else ["1"] * ones)
    return ", ".join(head + parts)


def cmd_strings(cfg, out):
    sd = string_decomposition(cfg.n)
    shape = shape_lambda_n(cfg.n)
    if cfg.format == "json":
        out(json.dumps({
            "n": cfg.n,
            "strings": sd.to_json(),
            "cardinalities": list(sd.cardinalities),
            "shape": list(shape.shape),
            "conjugate": list(shape.conjugate),
        }))
    elif cfg.format == "latex":
        body = ";\\ ".join(
            ",\\ ".join(compact(lam) for lam in s.elements) for s in sd.strings
        )
        out(f"$$ {body} $$")
        out(f"$\\lambda({cfg.n}) = {_tuple(shape.shape)}$, $\\lambda({cfg.n})' = {_tuple(shape.conjugate)}$")
    else:
        out("; ".join(", ".join(compact(lam) for lam in s.elements) for s in sd.strings))
        out(f"cardinalities={_tuple(sd.cardinalities)}")
        out(f"lambda({cfg.n})={_tuple(shape.shape)}, conjugate={_tuple(shape.conjugate)}")
    return EXIT_OK


def cmd_matrix(cfg, out):
    spec = OperatorMatrixSpec(cfg.n, cfg.k, cfg.basis)
    m = spec.build()
    if cfg.format == "json":
        data = m.to_json(n=cfg.n)
        data["k"] = cfg.k
        data["basis"] = cfg.basis
        out(json.dumps(data))
    elif cfg.format == "latex":
        rows = " \\\\\n".join(" & ".join(e.latex() for e in row) for row in m.entries)
        out("\\begin{bmatrix}\n" + rows + "\n\\end{bmatrix}")
    else:
        out("order: " + " ".join(compact(lam) for lam in m.row_labels))
        out(m.pretty())
    return EXIT_OK


def cmd_snf(cfg, out):
    verify = cfg.verify if cfg.verify is not None else cfg.n <= VERIFY_DEFAULT_MAX_N
    start = time.perf_counter()
    try:
        cert = smith_form(cfg.n, verify=verify)
    except (AssertionError, ArithmeticError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    elapsed = time.perf_counter() - start
    data = cert.to_json()
    data["D_factors"] = [factor_list(cfg.n, d) for d in cert.diagonal]
    data["diagonal_factored"] = render_diagonal(cfg.n, cert.diagonal)
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            json.dump(data, fh)
    if cfg.format == "json" and not cfg.out_path:
        out(json.dumps(data))
    elif cfg.format == "latex":
        out(f"\\mathrm{{diag}}({render_diagonal(cfg.n, cert.diagonal, latex=True)})")
    else:
        out(f"diag: {render_diagonal(cfg.n, cert.diagonal)}")
        state = "verified" if cert.verified else "not verified"
        out(f"n={cfg.n} p(n)={cert.D.dim} ops={len(cert.transcript)} {state} time={elapsed:.3f}s")
    return EXIT_OK


def cmd_conjecture(cfg, out):
    report = check_conjecture(cfg.n, cfg.k, minor_budget=cfg.minor_budget,
                              threads=thread_count(cfg.n, cfg.threads))
    if cfg.format == "json":
        out(json.dumps(report))
    else:
        from .polyzx import PolyZx
        predicted = [PolyZx(c) for c in report["predicted"]]
        out(f"predicted: {', '.join(map(str, predicted))}")
        out(f"levels: {' '.join(report['level_status'])}")
        if "proposition" in report:
            out(f"proposition: {report['proposition']}")
        out(f"verdict: {report['verdict']}")
    return EXIT_VERIFY if report["verdict"] == "refuted" else EXIT_OK


def cmd_specialize(cfg, out):
    report = specialize_and_check(cfg.n, cfg.k, cfg.c)
    if cfg.format == "json":
        out(json.dumps(report.to_json()))
    else:
        out(f"lhs: {list(report.lhs)}")
        out(f"rhs: {list(report.rhs)}")
        out(f"match: {report.match}")
    return EXIT_OK if report.match else EXIT_VERIFY


def cmd_selftest(cfg, out):
    from .acceptance import run_all
    results = run_all(cfg.minor_budget, cfg.threads or 1, echo=out)
    failed = [r for r in results if not r.ok]
    out(f"{len(results) - len(failed)}/{len(results)} criteria ok")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "strings": cmd_strings,
    "matrix": cmd_matrix,
    "snf": cmd_snf,
    "conjecture": cmd_conjecture,
    "specialize": cmd_specialize,
    "selftest": cmd_selftest,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="snfy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, fmt=True):
        p.add_argument("--n", type=int, required=True)
        if k:
            p.add_argument("--k", type=int, default=1)
        if fmt:
            p.add_argument("--format", choices=("json", "latex", "plain"), default="plain")

    common(sub.add_parser("strings", help="string decomposition and lambda(n)"), k=False)
    p = sub.add_parser("matrix", help="operator matrix")
    common(p)
    p.add_argument("--basis", choices=("h", "schur"), default="h")
    p = sub.add_parser("snf", help="certified Smith form of A + xI")
    common(p, k=False)
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--out", dest="out_path")
    p = sub.add_parser("conjecture", help="check the peeled diagonal for k d/dp_k p_k")
    common(p)
    p.add_argument("--minor-budget", type=int, default=DEFAULT_MINOR_BUDGET)
    p.add_argument("--threads", type=int)
    p = sub.add_parser("specialize", help="integer SNF at x = c")
    common(p)
    p.add_argument("--c", type=int, default=0)
    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--minor-budget", type=int, default=DEFAULT_MINOR_BUDGET)
    p.add_argument("--threads", type=int)
    return parser


def main(argv=None, out=print):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if v is not None or k == "verify"})
    try:
        cfg.validate()
    except UsageError as exc:
        print(f"snfy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return COMMANDS[cfg.command](cfg, out)


if __name__ == "__main__":
    sys.exit(main())
