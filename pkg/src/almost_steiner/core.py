"""Subset arithmetic and the basic hypergraph types.

Vertex sets are plain tuples of strictly ascending ints.  The canonical order
on k-subsets is colexicographic, with rank(s) = sum_i C(s_i, i + 1).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .errors import ArithmeticOverflowError, ContractError, ParameterError

VertexSet = tuple  # strictly ascending tuple[int, ...]

INT64_MAX = 2**63 - 1


def binomial(a: int, b: int) -> int:
    """Exact C(a, b); 0 when b > a."""
    if a < 0 or b < 0:
        raise ParameterError(f"binomial arguments must be nonnegative, got ({a}, {b})")
    return comb(a, b)


def checked_int64(value: int, what: str = "value") -> int:
    """Return ``value`` unchanged if it fits a signed 64-bit integer."""
    if value > INT64_MAX:
        raise ArithmeticOverflowError(f"{what} = {value} exceeds the 64-bit sampler range")
    return value


def colex_key(s: VertexSet) -> tuple:
    return s[::-1]


def vertex_set(vertices: Iterable[int], n: int | None = None) -> VertexSet:
    """Canonicalize an iterable of vertex ids, rejecting duplicates and ids >= n."""
    s = tuple(sorted(int(v) for v in vertices))
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ContractError(f"duplicate vertex {a} in {s}")
    if s and (s[0] < 0 or (n is not None and s[-1] >= n)):
        raise ContractError(f"vertex ids of {s} must lie in [0, {n})")
    return s


def rank_subset(s: VertexSet, n: int | None = None) -> int:
    """Colex rank of an ascending vertex set."""
    if n is not None and s and s[-1] >= n:
        raise ContractError(f"{s} is not a subset of [0, {n})")
    return sum(comb(v, i + 1) for i, v in enumerate(s))


def unrank_subset(r: int, n: int, k: int) -> VertexSet:
    """Inverse of :func:`rank_subset` on the k-subsets of ``range(n)``."""
    total = binomial(n, k)
    if not 0 <= r < total:
        raise IndexError(f"rank {r} out of range [0, {total})")
    out = [0] * k
    c = n - 1
    for i in range(k, 0, -1):
        while comb(c, i) > r:
            c -= 1
        out[i - 1] = c
        r -= comb(c, i)
        c -= 1
    return tuple(out)


def iter_subsets(n: int, k: int) -> Iterator[VertexSet]:
    """All k-subsets of ``range(n)`` in colex order."""
    return (s for s in sorted(combinations(range(n), k), key=colex_key))


def t_subsets(s: VertexSet, t: int) -> Iterator[VertexSet]:
    return combinations(s, t)


@dataclass(frozen=True)
class Design:
    """A k-uniform hypergraph on ``range(n)``.

    ``t`` is the strength the design is meant for; it is carried so the file
    header can be written, and may be None for a bare hypergraph.
    """

    n: int
    k: int
    edges: tuple = ()
    t: int | None = None

    def __post_init__(self):
        if not self.n > self.k >= 1:
            raise ParameterError(f"need n > k >= 1, got n={self.n}, k={self.k}")
        if self.t is not None and not self.k > self.t >= 1:
            raise ParameterError(f"need k > t >= 1, got k={self.k}, t={self.t}")
        canon = set()
        for e in self.edges:
            s = vertex_set(e, self.n)
            if len(s) != self.k:
                raise ContractError(f"edge {s} does not have {self.k} vertices")
            if s in canon:
                raise ContractError(f"duplicate edge {s}")
            canon.add(s)
        object.__setattr__(self, "edges", tuple(sorted(canon, key=colex_key)))

    def __len__(self):
        return len(self.edges)

    def with_edges(self, extra: Iterable[VertexSet]) -> "Design":
        return Design(self.n, self.k, self.edges + tuple(extra), self.t)


@dataclass
class CoverageMap:
    """Multiplicity of every t-subset; absent keys read as 0."""

    n: int
    t: int
    counts: Counter = field(default_factory=Counter)

    def __getitem__(self, s: VertexSet) -> int:
        return self.counts.get(s, 0)

    def items(self) -> Iterator[tuple[VertexSet, int]]:
        """Every t-subset with its count, zeros included, in colex order."""
        for s in iter_subsets(self.n, self.t):
            yield s, self.counts.get(s, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def max_count(self) -> int:
        return max(self.counts.values(), default=0)


@dataclass(frozen=True)
class LeaveHypergraph:
    """The t-sets a partial design leaves uncovered."""

    n: int
    t: int
    edges: frozenset = frozenset()

    def __contains__(self, s) -> bool:
        return s in self.edges

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.sorted_edges())

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=colex_key)


def coverage_map(d: Design, t: int) -> CoverageMap:
    if not 1 <= t < d.k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={d.k}")
    counts = Counter()
    for e in d.edges:
        counts.update(combinations(e, t))
    return CoverageMap(d.n, t, counts)


def leave_hypergraph(d: Design, t: int, check: bool = True) -> LeaveHypergraph:
    """Uncovered t-sets of ``d``.

    With ``check`` the design must be a partial Steiner system (no t-set
    covered twice); pass ``check=False`` to skip that test.
    """
    cov = coverage_map(d, t)
    if check and cov.max_count() > 1:
        bad = next(s for s, c in cov.counts.items() if c > 1)
        raise ContractError(f"not a partial Steiner system: {bad} is covered {cov[bad]} times")
    return LeaveHypergraph(d.n, t, frozenset(s for s in combinations(range(d.n), t) if s not in cov.counts))
