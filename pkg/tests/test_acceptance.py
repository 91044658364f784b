"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
repeated in the terminal summary under "acceptance criteria".
"""
import os
import random
from collections import Counter
from itertools import combinations
from math import comb, sqrt

import pytest

from almost_steiner.augmenter import AugmentConfig, phase2_probability, sample_candidates
from almost_steiner.cli import main
from almost_steiner.core import Design, LeaveHypergraph, rank_subset
from almost_steiner.fileformat import format_design, read_design
from almost_steiner.packer import PackingConfig
from almost_steiner.pipeline import construct
from almost_steiner.streams import AUGMENT_SAMPLE, stream
from almost_steiner.verifier import (
    brute_force_design_search,
    claim1_gap_bound,
    design_stats,
    verify_multiplicity,
)

from .conftest import ACCEPTANCE
from .oracles import clean_continuations, continuations, nested_verify, sts_admissible

INSTANCES = ([(2, 3, n) for n in (15, 19, 25, 31, 51, 101)]
             + [(2, 4, n) for n in (20, 30, 50)]
             + [(3, 4, n) for n in (20, 30)])
SEEDS = (0, 1, 2)

# Pilot run: full construction over a plain greedy packing (no refinement),
# (t,k) = (2,3), seeds 0..4.
# These are the recorded calibration values for the edge-count trend.
OVERHEAD_PILOT = {
    31: (1.1806, 1.2452, 1.2065, 1.2581, 1.2452),
    61: (1.1607, 1.1607, 1.177, 1.1377, 1.1574),
    101: (1.1275, 1.1453, 1.1323, 1.1347, 1.137),
}
OVERHEAD_CEILING = 2.0


def record(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def recount(edges, t):
    cnt = Counter()
    for e in edges:
        cnt.update(combinations(e, t))
    return cnt


@pytest.fixture(scope="module")
def runs(tmp_path_factory):
    """Every end-to-end instance, once through the CLI and once through the library."""
    out = {}
    tmp = tmp_path_factory.mktemp("e2e")
    for t, k, n in INSTANCES:
        for seed in SEEDS:
            path = tmp / f"{t}-{k}-{n}-{seed}.txt"
            code = main(["construct", "--n", str(n), "--k", str(k), "--t", str(t), "--seed", str(seed),
                         "--out", str(path), "--report", str(tmp / "report.txt")])
            trace = []
            lib = construct(n, k, t, seed=seed, trace=trace)
            out[t, k, n, seed] = code, path, lib, trace
    return out


def test_end_to_end_correctness(runs):
    bad = []
    for (t, k, n, seed), (code, path, lib, _) in runs.items():
        if code != 0:
            bad.append(f"({t},{k},{n}) seed {seed}: exit {code}")
            continue
        d = read_design(path)
        cnt = recount(d.edges, t)
        if not verify_multiplicity(d, t, {1, 2}):
            bad.append(f"({t},{k},{n}) seed {seed}: multiplicity outside {{1,2}}")
        if any(cnt[a] != 1 for a in lib.leave):
            bad.append(f"({t},{k},{n}) seed {seed}: leave t-set not covered exactly once")
        if format_design(lib.design, t) != path.read_text():
            bad.append(f"({t},{k},{n}) seed {seed}: CLI and library disagree")
    record("end-to-end correctness", not bad, f"{len(runs)} runs" + (", " + "; ".join(bad) if bad else ""))


def test_phase2_structure(runs):
    bad = []
    for (t, k, n, seed), (code, _, lib, _) in runs.items():
        new = lib.new_edges
        if len(new) != len(lib.leave):
            bad.append(f"({t},{k},{n}) seed {seed}: |F'|={len(new)} |L|={len(lib.leave)}")
        for e, f in combinations(new, 2):
            if len(set(e) & set(f)) >= t:
                bad.append(f"({t},{k},{n}) seed {seed}: {e} and {f} share >= t vertices")
                break
    sizes = sum(len(r[2].leave) for r in runs.values())
    record("F' structure", not bad, f"{sizes} Phase II edges in total" + (", " + "; ".join(bad) if bad else ""))


def test_disjoint_family_property(runs):
    bad, families = [], 0
    for key, (_, _, _, trace) in runs.items():
        for state in trace:
            for a, es in state.edges.items():
                families += 1
                for c1, c2 in combinations(es.family_Q, 2):
                    if set(c1) & set(c2) != set(a):
                        bad.append(f"{key}: {c1} and {c2} meet outside {a}")
    record("Q_A pairwise intersections equal A", not bad, f"{families} families checked" + (", " + "; ".join(bad[:3]) if bad else ""))


def test_edge_count_trend():
    ratios = {}
    for n in (31, 61, 101):
        ratios[n] = [
            float(design_stats(construct(n, 3, 2, packing=PackingConfig(seed=s, refine_factor=0),
                                         augmenting=AugmentConfig(master_seed=s)).design, 2).overhead_ratio)
            for s in range(5)
        ]
    wins = sum(b < a for a, b in zip(ratios[31], ratios[101]))
    ceiling_ok = all(r <= OVERHEAD_CEILING for rs in ratios.values() for r in rs)
    matches_pilot = all(
        abs(r - p) < 5e-4 for n in ratios for r, p in zip(ratios[n], OVERHEAD_PILOT[n])
    )
    detail = " ".join(f"n={n}:[{', '.join(f'{r:.4f}' for r in rs)}]" for n, rs in ratios.items())
    record("edge-count trend", wins >= 3 and ceiling_ok, f"{wins}/5 seeds shrink 31->101; {detail}")
    assert matches_pilot, "greedy overhead drifted from the recorded pilot values"


def test_sampling_law():
    n, k, t = 14, 4, 2
    leave_edges = [(0, 1), (1, 2), (5, 6)]
    leave = LeaveHypergraph(n, t, frozenset(leave_edges))
    a = (0, 1)
    p = phase2_probability(n, k, t, AugmentConfig())
    clean = clean_continuations(a, leave_edges, n, k)
    dirty = set(continuations(a, n, k)) - set(clean)
    trials = 10_000
    hits = Counter()
    for i in range(trials):
        hits.update(sample_candidates(a, leave, n, k, t, p, stream(0, AUGMENT_SAMPLE, i, rank_subset(a))))
    tol = 3 * sqrt(p * (1 - p) / trials)
    worst = max(abs(hits[c] / trials - p) for c in clean)
    leaked = [c for c in dirty if hits[c]]
    record("sampling law", worst <= tol and not leaked,
           f"|S_A|={len(clean)} p={p:.5f} worst deviation {worst:.5f} vs tolerance {tol:.5f}; "
           f"{len(leaked)} of {len(dirty)} members of T_A\\S_A sampled")


def test_gap_bound():
    rnd = random.Random(101)
    bad, checked = [], 0
    while checked < 100:
        n = rnd.randrange(8, 15)
        k = rnd.choice([3, 4, 5])
        t = rnd.randrange(2, k)
        if n < k + t:
            continue
        pool = list(combinations(range(n), t))
        leave = rnd.sample(pool, rnd.randrange(1, max(2, len(pool) // 4)))
        a = rnd.choice(leave)
        gap = len(continuations(a, n, k)) - len(clean_continuations(a, leave, n, k))
        bound = claim1_gap_bound(a, LeaveHypergraph(n, t, frozenset(leave)), n, k, t)
        if gap > bound:
            bad.append(f"n={n} k={k} t={t} gap {gap} > bound {bound}")
        checked += 1
    record("clean-continuation gap bound", not bad, f"{checked} random leaves" + (", " + "; ".join(bad) if bad else ""))


def test_oracle_cross_validation():
    rnd = random.Random(7)
    disagreements = 0
    for _ in range(200):
        n = rnd.randrange(4, 11)
        k = rnd.randrange(2, n)
        t = rnd.randrange(1, k)
        pool = list(combinations(range(n), k))
        edges = rnd.sample(pool, rnd.randrange(0, min(len(pool), 20) + 1))
        lam = set(rnd.sample(range(4), rnd.randrange(1, 4)))
        if bool(verify_multiplicity(Design(n, k, edges), t, lam)) != nested_verify(edges, n, t, lam):
            disagreements += 1
    sts = {}
    for n in (6, 7, 9, 13):
        sts[n] = brute_force_design_search(n, 3, 2, {1}, 200_000).status
    sts_ok = all((sts[n] == "found") == sts_admissible(n) for n in sts)
    sts_ok = sts_ok and all(sts[n] in ("nonexistent", "budget_exhausted") for n in sts if not sts_admissible(n))
    record("oracle cross-validation", disagreements == 0 and sts_ok,
           f"{disagreements}/200 disagreements; STS search " + " ".join(f"n={n}:{s}" for n, s in sts.items()))


def test_determinism(tmp_path, capsys):
    most = max(os.cpu_count() or 1, 4)
    mismatched = []
    for t, k, n in [(2, 3, 51), (2, 4, 30), (3, 4, 20)]:
        blobs = []
        for threads in (1, most, 1):
            path = tmp_path / f"{n}-{threads}-{len(blobs)}.txt"
            assert main(["construct", "--n", str(n), "--k", str(k), "--t", str(t), "--seed", "11",
                         "--threads", str(threads), "--out", str(path)]) == 0
            blobs.append(path.read_bytes())
        if len(set(blobs)) != 1:
            mismatched.append((t, k, n))
    capsys.readouterr()
    record("determinism", not mismatched, f"1 vs {most} threads, 3 instances" + (f", mismatched {mismatched}" if mismatched else ""))


def _report(path):
    pairs = [line.split("=", 1) for line in path.read_text().splitlines() if "=" in line]
    return pairs


@pytest.mark.parametrize("extra", [[], ["--refine", "0"], ["--refine", "0", "--no-repair"]],
                         ids=["default", "no-refine", "no-refine-no-repair"])
def test_failure_accounting(extra, tmp_path, capsys):
    out, rep = tmp_path / "d.txt", tmp_path / "r.txt"
    code = main(["construct", "--n", "15", "--k", "3", "--t", "2", "--epsilon", "0.95",
                 "--out", str(out), "--report", str(rep), *extra])
    capsys.readouterr()
    pairs = _report(rep)
    keys = dict(p for p in pairs if p[0] != "blocked")
    blocked = [tuple(map(int, v.split())) for k_, v in pairs if k_ == "blocked"]
    ok = code in (0, 2)
    if code == 0:
        ok = ok and keys.get("status") == "ok" and verify_multiplicity(read_design(out), 2, {1, 2})
    elif code == 2:
        retries = int(keys["retries_used"])
        per_retry = [int(x) for x in keys["unresolved_per_retry"].split(",")]
        ok = (keys.get("status") == "construction_failure"
              and retries <= 10
              and len(per_retry) == retries + 1
              and len(blocked) == per_retry[-1] > 0
              and all(len(b) == 2 and b[0] < b[1] for b in blocked)
              and not out.exists())
    record(f"failure accounting ({' '.join(extra) or 'defaults'})", ok,
           f"exit {code}, status={keys.get('status')}, blocked edges listed: {len(blocked)}")
