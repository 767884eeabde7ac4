"""Determinantal divisors over Z[x] and the predicted diagonals they are checked against."""
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .operators import build_A_h_basis, build_M_k_h_basis, char_poly_formula
from .partitions import enumerate_partitions, m_k, partition_count
from .polymat import mat_add_xI, minor
from .polyzx import ONE, NotDivisibleError, PolyZx, gcd_zx, kronecker_bits, l1, pack, unpack

__all__ = [
    "ConjectureDiagonal",
    "DivisorLadder",
    "border_strip_count",
    "check_conjecture",
    "conjecture_diagonal",
    "cumulative_products",
    "determinantal_ladder",
    "operator_matrix",
    "proposition_diagonal",
]

DEFAULT_MINOR_BUDGET = 10**7
DIRECT_LIMIT = 2000
SAMPLE_SIZE = 200


@dataclass(frozen=True)
class ConjectureDiagonal:
    entries: tuple
    peel_trace: tuple

    def is_chain(self):
        """Each peel's distinct set contains the next one."""
        return all(set(b) <= set(a) for a, b in zip(self.peel_trace, self.peel_trace[1:]))


def _linear_product(values, k):
    out = ONE
    for a in values:
        out = out * PolyZx((k * (a + 1), 1))
    return out


def conjecture_diagonal(n, k):
    """Peel distinct values off the multiset {m_k(lambda)}; each peel is one factor list."""
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    pool = Counter(m_k(lam, k) for lam in enumerate_partitions(n))
    from_last, trace = [], []
    while pool:
        distinct = tuple(sorted(pool))
        trace.append(distinct)
        from_last.append(_linear_product(distinct, k))
        for a in distinct:
            pool[a] -= 1
            if not pool[a]:
                del pool[a]
    ones = partition_count(n) - len(from_last)
    return ConjectureDiagonal((ONE,) * ones + tuple(reversed(from_last)), tuple(trace))


def proposition_diagonal(n, k):
    """Diagonal for k > n/2: ones, then (x+k)'s, then (x+k)(x+2k)'s."""
    if not (2 * k > n and k <= n):
        raise ValueError(f"needs n/2 < k <= n, got n={n}, k={k}")
    small = partition_count(n - k)
    if partition_count(n) < 2 * small:
        # only n = k = 1: the (x+k) count would be negative
        raise ValueError(f"formula has a negative count at n={n}, k={k}")
    lin = PolyZx((k, 1))
    quad = lin * PolyZx((2 * k, 1))
    return (ONE,) * small + (lin,) * (partition_count(n) - 2 * small) + (quad,) * small


def border_strip_count(lam, k):
    """Removable border strips of size k, i.e. cells of hook length k."""
    if k < 1:
        raise ValueError("k must be positive")
    lam = tuple(lam)
    count = 0
    for r, part in enumerate(lam):
        for c in range(part):
            leg = sum(1 for below in lam[r + 1:] if below > c)
            if part - c + leg == k:
                count += 1
    return count


def cumulative_products(diag):
    out, acc = [], ONE
    for d in diag:
        acc = acc * d
        out.append(acc.normalized())
    return out


@dataclass
class DivisorLadder:
    n: int = None
    k: int = None
    D: list = field(default_factory=list)
    levels_exhaustive: list = field(default_factory=list)
    status: list = field(default_factory=list)
    minors_seen: list = field(default_factory=list)

    @property
    def quotients(self):
        out, prev = [], ONE
        for d in self.D:
            q = None
            if d is not None and prev:
                try:
                    q = d.exact_div(prev).normalized()
                except NotDivisibleError:
                    pass
            out.append(q)
            prev = d
        return out

    @property
    def complete(self):
        return all(self.levels_exhaustive)

    def to_json(self):
        return {
            "n": self.n,
            "k": self.k,
            "D": [d.to_json() if d is not None else None for d in self.D],
            "quotients": [q.to_json() if q is not None else None for q in self.quotients],
            "levels_exhaustive": list(self.levels_exhaustive),
            "status": list(self.status),
        }


class _RunningGcd:
    __slots__ = ("g", "seen", "gcd_calls")

    def __init__(self):
        self.g = None
        self.seen = 0
        self.gcd_calls = 0

    def add(self, p):
        self.seen += 1
        self._fold(p)

    def _fold(self, p):
        if not p:
            return
        if self.g is None:
            self.g = p.normalized()
        elif not p.divisible_by(self.g):
            # gcd only when the current value fails to divide
            self.g = gcd_zx(self.g, p)
            self.gcd_calls += 1

    def merge(self, other):
        self.seen += other.seen
        if other.g is not None:
            self._fold(other.g)


def _packed(m):
    bound = 1
    for row in m.entries:
        bound *= max(1, sum(l1(e) for e in row))
    bits = kronecker_bits(bound)
    rows = [[(c, pack(e, bits)) for c, e in enumerate(row) if e] for row in m.entries]
    return rows, bits


def _group_levels(rows, bits, first, max_level):
    """Every minor whose smallest row is ``first``, level by level.

    Minors are expanded along their largest row, so each row set has a
    unique parent (itself minus the largest row) inside the same group.
    """
    dim = len(rows)
    level = {}
    for c, e in rows[first]:
        level[(1 << first, 1 << c)] = e
    out = []
    size = 1
    while True:
        acc = _RunningGcd()
        for v in level.values():
            acc.add(unpack(v, bits))
        out.append(acc)
        if size >= max_level or not level:
            # remaining levels of this group are empty
            out.extend(_RunningGcd() for _ in range(max_level - size))
            return out
        nxt = {}
        for (rmask, cmask), v in level.items():
            top = rmask.bit_length()
            for r in range(top, dim):
                rbit = 1 << r
                for c, e in rows[r]:
                    cbit = 1 << c
                    if cmask & cbit:
                        continue
                    pos = (cmask & (cbit - 1)).bit_count()
                    term = e * v if (size + pos) % 2 == 0 else -e * v
                    key = (rmask | rbit, cmask | cbit)
                    nxt[key] = nxt.get(key, 0) + term
        level = {key: v for key, v in nxt.items() if v}
        size += 1


def _group_task(args):
    rows, bits, first, max_level = args
    return _group_levels(rows, bits, first, max_level)


def _resolve_threads(threads):
    if threads is None:
        env = os.environ.get("SNFY_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def determinantal_ladder(m, target=None, size_cap=None, minor_budget=DEFAULT_MINOR_BUDGET,
                         threads=1, sample_size=SAMPLE_SIZE, seed=0, n=None, k=None):
    """gcd of all i x i minors of ``m`` for i = 1 .. size_cap.

    Levels whose minor count C(dim, i)**2 fits in ``minor_budget`` and whose
    lower levels were also within budget are enumerated exhaustively by a
    subset recursion on Kronecker-packed entries.  Later levels are computed
    directly when small, otherwise sampled.  ``target`` (the predicted
    diagonal) fixes the per-level status: match, mismatch, refuted,
    sampled or skipped.
    """
    dim = m.dim
    size_cap = dim if size_cap is None else min(size_cap, dim)
    cum = cumulative_products(target) if target is not None else None
    dp_levels = 0
    while dp_levels < size_cap and comb(dim, dp_levels + 1) ** 2 <= minor_budget:
        dp_levels += 1

    rows, bits = _packed(m)
    totals = [_RunningGcd() for _ in range(dp_levels)]
    if dp_levels:
        tasks = [(rows, bits, first, dp_levels) for first in range(dim)]
        threads = _resolve_threads(threads)
        if threads > 1 and dim > 1:
            # heaviest groups (smallest first row) go out first
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_group_task, tasks, chunksize=1))
        else:
            results = [_group_task(t) for t in tasks]
        for group in results:
            for i, acc in enumerate(group):
                totals[i].merge(acc)

    ladder = DivisorLadder(n=n, k=k)
    rng = random.Random(seed)
    for i in range(1, dim + 1):
        if i > size_cap:
            ladder.D.append(None)
            ladder.levels_exhaustive.append(False)
            ladder.status.append("skipped")
            ladder.minors_seen.append(0)
            continue
        want = cum[i - 1] if cum is not None else None
        if i <= dp_levels:
            acc = totals[i - 1]
            exhaustive = True
        elif comb(dim, i) ** 2 <= min(DIRECT_LIMIT, minor_budget):
            acc = _RunningGcd()
            for rs in combinations(range(dim), i):
                for cs in combinations(range(dim), i):
                    acc.add(minor(m, rs, cs))
            exhaustive = True
        else:
            acc = _RunningGcd()
            sampled = []
            for _ in range(sample_size):
                rs = sorted(rng.sample(range(dim), i))
                cs = sorted(rng.sample(range(dim), i))
                p = minor(m, rs, cs)
                sampled.append(p)
                acc.add(p)
            exhaustive = False
        d = acc.g if acc.g is not None else PolyZx()
        ladder.D.append(d)
        ladder.levels_exhaustive.append(exhaustive)
        ladder.minors_seen.append(acc.seen)
        if want is None:
            ladder.status.append("exhaustive" if exhaustive else "sampled")
        elif exhaustive:
            ladder.status.append("match" if d == want else "mismatch")
        elif any(p and not p.divisible_by(want) for p in sampled):
            ladder.status.append("refuted")
        else:
            ladder.status.append("sampled")
    return ladder


def operator_matrix(n, k):
    """M_k + xI in the h basis (k = 1 gives A + xI)."""
    base = build_A_h_basis(n) if k == 1 else build_M_k_h_basis(n, k)
    return mat_add_xI(base)


def check_conjecture(n, k, minor_budget=DEFAULT_MINOR_BUDGET, threads=1, size_cap=None):
    """Compare the peeled diagonal with determinantal divisors of M_k + xI."""
    predicted = conjecture_diagonal(n, k)
    ladder = determinantal_ladder(
        operator_matrix(n, k), predicted.entries, size_cap=size_cap,
        minor_budget=minor_budget, threads=threads, n=n, k=k,
    )
    if any(s in ("mismatch", "refuted") for s in ladder.status):
        verdict = "refuted"
    elif ladder.complete and all(s == "match" for s in ladder.status):
        verdict = "confirmed"
    else:
        verdict = "partial"
    product = ONE
    for e in predicted.entries:
        product = product * e
    report = {
        "n": n,
        "k": k,
        "predicted": [e.to_json() for e in predicted.entries],
        "ladder": [d.to_json() if d is not None else None for d in ladder.D],
        "levels_exhaustive": list(ladder.levels_exhaustive),
        "level_status": list(ladder.status),
        "determinant_consistent": product == char_poly_formula(n, k),
        "verdict": verdict,
    }
    if 2 * k > n and n >= 2:
        report["proposition"] = (
            "agree" if proposition_diagonal(n, k) == predicted.entries else "disagree"
        )
    return report
