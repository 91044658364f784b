"""Independent checks on finished designs.

Nothing here goes through the coverage bookkeeping used by the constructors;
multiplicities are recounted from the raw edge list.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Literal

from .core import Design, LeaveHypergraph, colex_key
from .errors import ContractError, ParameterError


def lambda_set(values) -> frozenset:
    """Validate and freeze a set of admissible multiplicities."""
    vals = frozenset(int(v) for v in values)
    if not vals:
        raise ParameterError("lambda set must be nonempty")
    if min(vals) < 0:
        raise ParameterError("lambda values must be nonnegative")
    return vals


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple | None = None
    count: int | None = None

    def __bool__(self):
        return self.ok


def _recount(d: Design, t: int) -> Counter:
    counts = Counter()
    for e in d.edges:
        for s in combinations(e, t):
            counts[frozenset(s)] += 1
    return counts


def verify_multiplicity(d: Design, t: int, lam) -> Verdict:
    """Check that every t-set lies in a number of edges belonging to ``lam``.

    On failure the first offending t-set (lexicographic) and its count are
    returned as a witness.
    """
    if not 1 <= t < d.k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={d.k}")
    lam = lambda_set(lam)
    counts = _recount(d, t)
    bad = [(tuple(sorted(s)), c) for s, c in counts.items() if c not in lam]
    if 0 not in lam and len(counts) < comb(d.n, t):
        for s in combinations(range(d.n), t):
            if frozenset(s) not in counts:
                bad.append((s, 0))
                break
    if not bad:
        return Verdict(True)
    s, c = min(bad)
    return Verdict(False, s, c)


@dataclass(frozen=True)
class DesignStats:
    n: int
    k: int
    t: int
    edge_count: int
    ideal_count: Fraction
    overhead_ratio: float
    multiplicity_histogram: dict

    def lines(self) -> list:
        out = [
            f"n={self.n}",
            f"k={self.k}",
            f"t={self.t}",
            f"edge_count={self.edge_count}",
            f"ideal_count={self.ideal_count}",
            f"overhead_ratio={self.overhead_ratio!r}",
        ]
        out += [f"multiplicity_{c}={f}" for c, f in sorted(self.multiplicity_histogram.items())]
        return out


def design_stats(d: Design, t: int) -> DesignStats:
    if not 1 <= t < d.k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={d.k}")
    counts = _recount(d, t)
    hist = Counter(counts.values())
    zeros = comb(d.n, t) - len(counts)
    if zeros:
        hist[0] = zeros
    ideal = Fraction(comb(d.n, t), comb(d.k, t))
    return DesignStats(d.n, d.k, t, len(d.edges), ideal, float(len(d.edges) / ideal), dict(hist))


def claim1_gap_bound(a, leave: LeaveHypergraph, n: int, k: int, t: int) -> int:
    """Union bound on the number of continuations of ``a`` that contain another leave edge.

    Each other leave edge B rules out at most the C(n - |A u B|, k - |A u B|)
    k-sets containing both.
    """
    if a not in leave:
        raise ContractError(f"{a} is not a leave edge")
    a_set = set(a)
    total = 0
    for b in leave.edges:
        if b == a:
            continue
        u = len(a_set.union(b))
        if u <= k:
            total += comb(n - u, k - u)
    return total


@dataclass(frozen=True)
class SearchResult:
    status: Literal["found", "nonexistent", "budget_exhausted"]
    design: Design | None = None
    nodes: int = 0


class _Budget(Exception):
    pass


def brute_force_design_search(n: int, k: int, t: int, lam, max_nodes: int = 1_000_000) -> SearchResult:
    """Exhaustive backtracking for a t-(n, k, lam)-design without repeated edges.

    Repeatedly takes the t-set whose count is not in ``lam`` with the fewest
    usable supersets to spare (ties broken by colex order) and branches over
    the k-sets containing it, in colex order; after a
    branch on C fails, C is excluded from the sibling branches.  Counts
    above max(lam) are never created.
    """
    lam = lambda_set(lam)
    if not n > k > t >= 1:
        raise ParameterError(f"need n > k > t >= 1, got n={n}, k={k}, t={t}")
    top = max(lam)
    tsets = sorted(combinations(range(n), t), key=colex_key)
    supersets = {
        s: sorted((tuple(sorted(s + rest)) for rest in combinations([v for v in range(n) if v not in s], k - t)),
                  key=colex_key)
        for s in tsets
    }
    counts = dict.fromkeys(tsets, 0)
    chosen: list = []
    in_design: set = set()
    excluded: set = set()
    nodes = 0

    def usable(c):
        return c not in in_design and c not in excluded and all(counts[s] < top for s in combinations(c, t))

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise _Budget
        target, options, slack = None, None, None
        for s in tsets:
            if counts[s] in lam:
                continue
            need = min((v for v in lam if v > counts[s]), default=None)
            if need is None:
                return False
            opts = [c for c in supersets[s] if usable(c)]
            if counts[s] + len(opts) < need:
                return False
            if slack is None or len(opts) - (need - counts[s]) < slack:
                target, options, slack = s, opts, len(opts) - (need - counts[s])
        if target is None:
            return True
        newly_excluded = []
        found = False
        for c in options:
            if not usable(c):
                continue
            chosen.append(c)
            in_design.add(c)
            for s in combinations(c, t):
                counts[s] += 1
            if solve():
                found = True
                break
            for s in combinations(c, t):
                counts[s] -= 1
            in_design.discard(c)
            chosen.pop()
            excluded.add(c)
            newly_excluded.append(c)
        for c in newly_excluded:
            excluded.discard(c)
        return found

    try:
        ok = solve()
    except _Budget:
        return SearchResult("budget_exhausted", None, nodes)
    if ok:
        return SearchResult("found", Design(n, k, tuple(chosen), t), nodes)
    return SearchResult("nonexistent", None, nodes)
