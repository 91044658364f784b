"""Phase I: partial Steiner systems and diagnostics of their leave.

Two packers are provided, random greedy and an iterated random-bite
("nibble") heuristic.  Either can be followed by a hill-climbing refinement
that trades one edge for another to shrink the leave; at the sizes this
package runs at, plain greedy packing leaves too many t-sets uncovered for
Phase II to be feasible when k - t >= 2.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Literal

from . import streams
from .core import Design, LeaveHypergraph, binomial, checked_int64, iter_subsets, unrank_subset
from .errors import ParameterError

Strategy = Literal["greedy", "nibble"]
PassOrder = Literal["random-permutation", "rank-order"]


@dataclass(frozen=True)
class PackingConfig:
    strategy: Strategy = "greedy"
    seed: int = 0
    nibble_bite_fraction: float = 0.1
    nibble_rounds: int = 10
    greedy_pass_order: PassOrder = "random-permutation"
    # hill-climbing steps per t-set of the ground set; 0 disables refinement
    refine_factor: float = 5.0
    # floor on the number of refinement steps, so small instances get enough
    refine_min_steps: int = 20_000

    def __post_init__(self):
        if self.strategy not in ("greedy", "nibble"):
            raise ParameterError(f"unknown packing strategy {self.strategy!r}")
        if self.greedy_pass_order not in ("random-permutation", "rank-order"):
            raise ParameterError(f"unknown greedy pass order {self.greedy_pass_order!r}")
        if not 0 < self.nibble_bite_fraction <= 1:
            raise ParameterError("nibble_bite_fraction must lie in (0, 1]")
        if self.nibble_rounds < 1:
            raise ParameterError("nibble_rounds must be >= 1")
        if self.refine_factor < 0 or self.refine_min_steps < 0:
            raise ParameterError("refine_factor and refine_min_steps must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be a 64-bit unsigned integer")


def check_parameters(n: int, k: int, t: int) -> None:
    if not n > k > t >= 2:
        raise ParameterError(f"need n > k > t >= 2, got n={n}, k={k}, t={t}")
    if n < k + t:
        raise ParameterError(f"need n >= k + t, got n={n}, k={k}, t={t}")


class _Packing:
    """Mutable packing state: which edge covers each t-set, plus the leave."""

    def __init__(self, n: int, k: int, t: int):
        self.n, self.k, self.t = n, k, t
        self.owner: dict = {}
        self.edges: set = set()

    def fits(self, e) -> bool:
        owner = self.owner
        return not any(s in owner for s in combinations(e, self.t))

    def add(self, e) -> None:
        self.edges.add(e)
        for s in combinations(e, self.t):
            self.owner[s] = e

    def remove(self, e) -> None:
        self.edges.discard(e)
        for s in combinations(e, self.t):
            del self.owner[s]

    def design(self) -> Design:
        return Design(self.n, self.k, tuple(self.edges), self.t)


def _pass_order(n: int, k: int, cfg: PackingConfig) -> list:
    # indexing the colex-sorted table by rank is unranking by table lookup
    table = list(iter_subsets(n, k))
    if cfg.greedy_pass_order == "rank-order":
        return table
    rng = streams.stream(cfg.seed, streams.PACK_PERMUTATION)
    perm = rng.permutation(checked_int64(len(table), "C(n, k)"))
    return [table[r] for r in perm]


def _greedy_fill(state: _Packing, cfg: PackingConfig) -> None:
    for e in _pass_order(state.n, state.k, cfg):
        if state.fits(e):
            state.add(e)


def greedy_pack(n: int, k: int, t: int, cfg: PackingConfig = PackingConfig()) -> Design:
    """Random-greedy packing: scan all k-sets in a seeded order, keep those that fit."""
    check_parameters(n, k, t)
    state = _Packing(n, k, t)
    _greedy_fill(state, cfg)
    return state.design()


def nibble_rounds(n: int, k: int, t: int, cfg: PackingConfig) -> Iterator[Design]:
    """Run the random-bite rounds only, yielding the committed design after each."""
    check_parameters(n, k, t)
    rng = streams.stream(cfg.seed, streams.PACK_NIBBLE)
    state = _Packing(n, k, t)
    total = binomial(n, k)
    checked_int64(total, "C(n, k)")
    per_edge = binomial(k, t)
    uncovered = binomial(n, t)
    for _ in range(cfg.nibble_rounds):
        target = cfg.nibble_bite_fraction * uncovered / per_edge
        m = int(rng.binomial(total, min(1.0, target / total)))
        batch = [unrank_subset(int(r), n, k) for r in rng.choice(total, size=m, replace=False)]
        batch = [e for e in batch if state.fits(e)]
        hits = Counter(s for e in batch for s in combinations(e, t))
        for e in batch:
            if all(hits[s] == 1 for s in combinations(e, t)):
                state.add(e)
                uncovered -= per_edge
        yield state.design()


def nibble_pack(n: int, k: int, t: int, cfg: PackingConfig = PackingConfig(strategy="nibble")) -> Design:
    """Random-bite rounds followed by a greedy pass over the residual."""
    d = None
    for d in nibble_rounds(n, k, t, cfg):
        pass
    state = _Packing(n, k, t)
    for e in d.edges:
        state.add(e)
    _greedy_fill(state, cfg)
    return state.design()


def refine_packing(d: Design, t: int, cfg: PackingConfig = PackingConfig()) -> Design:
    """Hill-climb on a partial Steiner system to shrink its leave.

    Each step picks a random uncovered t-set A and grows it to a k-set C one
    vertex at a time, each time taking a vertex that brings in the fewest
    new conflicting edges.  If C clashes with at most one existing edge, that
    edge is swapped out for C.  The edge count never decreases.
    """
    n, k = d.n, d.k
    steps = max(int(cfg.refine_factor * binomial(n, t)), cfg.refine_min_steps)
    state = _Packing(n, k, t)
    for e in d.edges:
        state.add(e)
    owner = state.owner
    leave = [s for s in combinations(range(n), t) if s not in owner]
    pos = {s: i for i, s in enumerate(leave)}

    def leave_remove(s):
        i = pos.pop(s)
        last = leave.pop()
        if i < len(leave):
            leave[i] = last
            pos[last] = i

    def leave_add(s):
        pos[s] = len(leave)
        leave.append(s)

    rng = random.Random(int(streams.stream(cfg.seed, streams.PACK_REFINE).integers(2**63)))
    for _ in range(steps):
        if not leave:
            break
        c = list(leave[rng.randrange(len(leave))])
        clash = set()
        for _ in range(k - t):
            best, choices = None, []
            for v in range(n):
                if v in c:
                    continue
                new = set()
                for s in combinations(c, t - 1):
                    e = owner.get(tuple(sorted(s + (v,))))
                    if e is not None and e not in clash:
                        new.add(e)
                if best is None or len(new) < best:
                    best, choices = len(new), [v]
                elif len(new) == best:
                    choices.append(v)
            v = rng.choice(choices)
            for s in combinations(c, t - 1):
                e = owner.get(tuple(sorted(s + (v,))))
                if e is not None:
                    clash.add(e)
            c.append(v)
            if len(clash) > 1:
                break
        if len(clash) > 1:
            continue
        c = tuple(sorted(c))
        for e in clash:
            state.remove(e)
            for s in combinations(e, t):
                leave_add(s)
        state.add(c)
        for s in combinations(c, t):
            leave_remove(s)
    return state.design()


def pack(n: int, k: int, t: int, cfg: PackingConfig = PackingConfig()) -> Design:
    """Phase I as configured: the chosen packer, then refinement if enabled."""
    d = greedy_pack(n, k, t, cfg) if cfg.strategy == "greedy" else nibble_pack(n, k, t, cfg)
    if cfg.refine_factor > 0:
        d = refine_packing(d, t, cfg)
    return d


@dataclass(frozen=True)
class LeaveProfile:
    n: int
    t: int
    max_degree: tuple  # indexed by ell in [0, t)
    exponent: tuple
    leave_fraction: float


def leave_profile(lv: LeaveHypergraph) -> LeaveProfile:
    """Largest number of leave edges through any ell-set, for each ell < t."""
    n, t = lv.n, lv.t
    degrees = []
    for ell in range(t):
        counts = Counter(s for e in lv.edges for s in combinations(e, ell))
        degrees.append(max(counts.values(), default=0))
    exps = tuple(math.log(d) / math.log(n) if d > 1 else 0.0 for d in degrees)
    return LeaveProfile(n, t, tuple(degrees), exps, len(lv) / binomial(n, t))


def epsilon_estimate(profile: LeaveProfile, t: int | None = None) -> float:
    """Largest epsilon for which every ell-level degree is at most n^(t - ell - epsilon)."""
    t = profile.t if t is None else t
    return max(0.0, min(t - ell - x for ell, x in enumerate(profile.exponent)))


def format_profile(profile: LeaveProfile) -> str:
    lines = [
        f"ell={ell} max_degree={d} exponent={x!r}"
        for ell, (d, x) in enumerate(zip(profile.max_degree, profile.exponent))
    ]
    lines.append(f"leave_fraction={profile.leave_fraction!r}")
    lines.append(f"epsilon_estimate={epsilon_estimate(profile)!r}")
    return "\n".join(lines) + "\n"

