"""Phase II: cover the leave of a partial Steiner system with a second one.

For every uncovered t-set A we sample a sparse random list R_A of clean
continuations (k-sets containing A and no other leave edge), extract from it
a family Q_A whose members meet pairwise exactly in A, and pick as
representative A' the first member that shares no t-subset with any
candidate sampled for another leave edge.  The representatives pairwise meet
in fewer than t vertices, so adding them to the partial design covers every
t-set once or twice.

Leave edges for which the strict rule finds nothing can optionally be
resolved by a repair search that only has to avoid the representatives
actually chosen; its output obeys the same pairwise condition.
"""
from __future__ import annotations

import math
import random
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import streams
from .core import (
    Design,
    LeaveHypergraph,
    binomial,
    checked_int64,
    colex_key,
    coverage_map,
    rank_subset,
    unrank_subset,
)
from .errors import ConstructionFailure, ContractError, ParameterError, SamplingError


@dataclass(frozen=True)
class AugmentConfig:
    epsilon: float = 0.5
    p_override: float | None = None
    q_target: int | None = None
    max_retries: int = 10
    master_seed: int = 0
    # repair blocked leave edges against the chosen representatives only
    repair: bool = True
    # repair steps per leave edge (plus a fixed 1000)
    repair_factor: int = 200
    workers: int = 1

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.p_override is not None and not 0 < self.p_override < 1:
            raise ParameterError(f"p_override must lie in (0, 1), got {self.p_override}")
        if self.q_target is not None and self.q_target < 1:
            raise ParameterError("q_target must be positive")
        if self.max_retries < 0:
            raise ParameterError("max_retries must be >= 0")
        if self.repair_factor < 0:
            raise ParameterError("repair_factor must be >= 0")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must be a 64-bit unsigned integer")


@dataclass
class EdgeState:
    sampled_R: list = field(default_factory=list)
    family_Q: list = field(default_factory=list)
    chosen: tuple | None = None


@dataclass
class AugmentState:
    edges: dict = field(default_factory=dict)  # leave edge -> EdgeState
    conflict_index: dict = field(default_factory=dict)  # t-set -> [(owner, candidate)]
    repaired: dict = field(default_factory=dict)  # leave edge -> representative found by repair


@dataclass
class AugmentReport:
    leave_size: int = 0
    new_edges: int = 0
    retries_used: int = 0
    p: float = 0.0
    q_target: int = 0
    blocked_per_retry: list = field(default_factory=list)
    unresolved_per_retry: list = field(default_factory=list)
    repaired: int = 0
    r_sizes: list = field(default_factory=list)
    q_sizes: list = field(default_factory=list)

    def lines(self) -> list:
        def summary(name, xs):
            if not xs:
                return [f"{name}_min=0", f"{name}_median=0"]
            return [f"{name}_min={min(xs)}", f"{name}_median={statistics.median(xs)}"]

        out = [
            f"leave_size={self.leave_size}",
            f"new_edges={self.new_edges}",
            f"retries_used={self.retries_used}",
            f"p={self.p!r}",
            f"q_target={self.q_target}",
            "blocked_per_retry=" + ",".join(map(str, self.blocked_per_retry)),
            "unresolved_per_retry=" + ",".join(map(str, self.unresolved_per_retry)),
            f"repaired={self.repaired}",
        ]
        return out + summary("R", self.r_sizes) + summary("Q", self.q_sizes)


def is_clean_continuation(c, a, leave: LeaveHypergraph) -> bool:
    """True iff ``c`` contains no leave edge other than ``a``."""
    if a not in leave:
        raise ContractError(f"{a} is not a leave edge")
    return not any(s != a and s in leave for s in combinations(c, leave.t))


def phase2_probability(n: int, k: int, t: int, cfg: AugmentConfig = AugmentConfig()) -> float:
    if cfg.p_override is not None:
        return cfg.p_override
    if not n > k > t:
        raise ParameterError(f"need n > k > t, got n={n}, k={k}, t={t}")
    p = float(n) ** (t - k + cfg.epsilon / 2)
    if not 0 < p < 1:
        raise ParameterError(f"p = n^(t-k+eps/2) = {p} is not in (0, 1)")
    return p


def default_q_target(n: int, cfg: AugmentConfig) -> int:
    if cfg.q_target is not None:
        return cfg.q_target
    return max(1, math.floor(n ** (cfg.epsilon / 3)))


def _continuation(a, extra_rank: int, n: int, k: int):
    """The k-set made of ``a`` and the (k-t)-subset of X minus a with the given rank."""
    rest = [v for v in range(n) if v not in a]
    picked = unrank_subset(extra_rank, n - len(a), k - len(a))
    return tuple(sorted(a + tuple(rest[i] for i in picked)))


def sample_candidates(a, leave: LeaveHypergraph, n: int, k: int, t: int, p: float, rng) -> list:
    """A p-thinned random sub-list of the clean continuations of ``a``.

    Draws m ~ Bin(|T_A|, p) distinct uniform continuations, then drops the
    ones containing another leave edge.  Each clean continuation is thereby
    kept independently with probability p.  ``rng`` is a numpy Generator or
    an integer seed.
    """
    if not 0 < p < 1:
        raise ParameterError(f"p must lie in (0, 1), got {p}")
    if a not in leave:
        raise ContractError(f"{a} is not a leave edge")
    if not isinstance(rng, np.random.Generator):
        rng = streams.stream(int(rng))
    total = checked_int64(binomial(n - t, k - t), "C(n-t, k-t)")
    m = int(rng.binomial(total, p))
    ranks, seen, draws = [], set(), 0
    while len(ranks) < m:
        draws += 1
        if draws > 100 * m:
            raise SamplingError(f"more than {100 * m} draws for {m} distinct continuations")
        r = int(rng.integers(total))
        if r not in seen:
            seen.add(r)
            ranks.append(r)
    cands = (_continuation(a, r, n, k) for r in ranks)
    return [c for c in cands if is_clean_continuation(c, a, leave)]


def build_disjoint_family(a, candidates: list, q_target: int) -> list:
    """Greedy scan keeping members that meet every kept member exactly in ``a``."""
    a_set = set(a)
    family, used = [], set()
    for c in candidates:
        if len(family) >= q_target:
            break
        outside = set(c) - a_set
        if outside.isdisjoint(used):
            family.append(c)
            used |= outside
    return family


def build_conflict_index(sampled: dict, t: int) -> dict:
    """Map each t-set to the (owner, candidate) pairs whose candidate contains it."""
    index: dict = {}
    for owner, cands in sampled.items():
        for c in cands:
            for s in combinations(c, t):
                index.setdefault(s, []).append((owner, c))
    return index


def _blocked(c, a, index: dict) -> bool:
    return any(owner != a for s in combinations(c, len(a)) for owner, _ in index.get(s, ()))


def select_representative(a, state: EdgeState, index: dict):
    """First unblocked member of Q_A, then of the rest of R_A; None if all are blocked.

    A candidate is blocked when one of its t-subsets lies in a candidate
    sampled for a different leave edge.
    """
    for c in state.family_Q:
        if not _blocked(c, a, index):
            return c
    in_q = set(state.family_Q)
    for c in state.sampled_R:
        if c not in in_q and not _blocked(c, a, index):
            return c
    return None


def _repair(leave: LeaveHypergraph, chosen: dict, blocked: list, n: int, k: int, t: int,
            rng: random.Random, budget: int) -> list:
    """Local search placing representatives for ``blocked`` leave edges.

    A candidate continuation is accepted when it is clean and shares a t-set
    with at most one chosen representative; that representative is evicted
    and its leave edge requeued.  Mutates ``chosen``; returns the leave edges
    still without a representative.
    """
    holder = {}
    for a, c in chosen.items():
        for s in combinations(c, t):
            if s != a:
                holder[s] = a
    queue = list(blocked)
    rest_size = binomial(n - t, k - t)
    for _ in range(budget):
        if not queue:
            break
        i = rng.randrange(len(queue))
        a = queue[i]
        c = _continuation(a, rng.randrange(rest_size), n, k)
        others = [s for s in combinations(c, t) if s != a]
        if any(s in leave for s in others):
            continue
        clash = {holder[s] for s in others if s in holder}
        if len(clash) > 1:
            continue
        for b in clash:
            for s in combinations(chosen.pop(b), t):
                if s != b:
                    del holder[s]
            queue.append(b)
        queue[i] = queue[-1]
        queue.pop()
        chosen[a] = c
        for s in others:
            holder[s] = a
    return sorted(queue, key=colex_key)


def run_phase2(leave: LeaveHypergraph, n: int, k: int, cfg: AugmentConfig, retry: int, p: float, q: int):
    """One Phase II attempt.  Returns (state, chosen map, strict-blocked list, unresolved list)."""
    t = leave.t
    order = leave.sorted_edges()

    def sample(a):
        rng = streams.stream(cfg.master_seed, streams.AUGMENT_SAMPLE, retry, rank_subset(a))
        r = sample_candidates(a, leave, n, k, t, p, rng)
        return EdgeState(sampled_R=r, family_Q=build_disjoint_family(a, r, q))

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            states = list(pool.map(sample, order))
    else:
        states = [sample(a) for a in order]
    state = AugmentState(edges=dict(zip(order, states)))
    state.conflict_index = build_conflict_index({a: s.sampled_R for a, s in state.edges.items()}, t)

    chosen, blocked = {}, []
    for a, es in state.edges.items():
        es.chosen = select_representative(a, es, state.conflict_index)
        if es.chosen is None:
            blocked.append(a)
        else:
            chosen[a] = es.chosen
    unresolved = blocked
    if blocked and cfg.repair:
        rng = random.Random(int(streams.stream(cfg.master_seed, streams.AUGMENT_REPAIR, retry).integers(2**63)))
        unresolved = _repair(leave, chosen, blocked, n, k, t, rng, cfg.repair_factor * len(order) + 1000)
        state.repaired = {a: c for a, c in chosen.items() if state.edges[a].chosen != c}
    return state, chosen, blocked, unresolved


def augment(partial: Design, leave: LeaveHypergraph, cfg: AugmentConfig = AugmentConfig(),
            report: AugmentReport | None = None, trace: list | None = None) -> Design:
    """Add one representative per leave edge, turning a {0,1}- into a {1,2}-design.

    Retries the whole of Phase II with fresh random streams up to
    ``cfg.max_retries`` times; raises :class:`ConstructionFailure` when every
    attempt leaves some leave edge without a representative.  If ``trace`` is
    a list, the :class:`AugmentState` of every attempt is appended to it.
    """
    n, k, t = partial.n, partial.k, leave.t
    if leave.n != n:
        raise ContractError("leave and design live on different ground sets")
    if coverage_map(partial, t).max_count() > 1:
        raise ContractError("partial design covers some t-set more than once")
    report = AugmentReport() if report is None else report
    report.leave_size = len(leave)
    if not len(leave):
        return Design(n, k, partial.edges, t)
    p = phase2_probability(n, k, t, cfg)
    q = default_q_target(n, cfg)
    report.p, report.q_target = p, q

    unresolved = []
    for retry in range(cfg.max_retries + 1):
        state, chosen, blocked, unresolved = run_phase2(leave, n, k, cfg, retry, p, q)
        if trace is not None:
            trace.append(state)
        report.retries_used = retry
        report.blocked_per_retry.append(len(blocked))
        report.unresolved_per_retry.append(len(unresolved))
        report.r_sizes = [len(s.sampled_R) for s in state.edges.values()]
        report.q_sizes = [len(s.family_Q) for s in state.edges.values()]
        if not unresolved:
            report.repaired = len(state.repaired)
            report.new_edges = len(chosen)
            return Design(n, k, partial.edges + tuple(chosen.values()), t)
    raise ConstructionFailure(
        f"{len(unresolved)} leave edges without a representative after {cfg.max_retries} retries",
        unresolved,
        report.unresolved_per_retry,
        report,
    )
