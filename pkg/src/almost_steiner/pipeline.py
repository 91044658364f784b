"""The two phases glued together, for library use."""
from __future__ import annotations

from dataclasses import dataclass

from .augmenter import AugmentConfig, AugmentReport, augment
from .core import Design, LeaveHypergraph, leave_hypergraph
from .packer import PackingConfig, pack


@dataclass
class Construction:
    partial: Design
    leave: LeaveHypergraph
    design: Design
    report: AugmentReport

    @property
    def new_edges(self) -> list:
        old = set(self.partial.edges)
        return [e for e in self.design.edges if e not in old]


def construct(n: int, k: int, t: int, seed: int = 0, packing: PackingConfig | None = None,
              augmenting: AugmentConfig | None = None, trace: list | None = None) -> Construction:
    """Pack, then augment.  ``seed`` fills in both configs when they are omitted.

    Raises :class:`~almost_steiner.errors.ConstructionFailure` if Phase II
    runs out of retries.
    """
    packing = packing or PackingConfig(seed=seed)
    augmenting = augmenting or AugmentConfig(master_seed=seed)
    partial = pack(n, k, t, packing)
    leave = leave_hypergraph(partial, t)
    report = AugmentReport()
    design = augment(partial, leave, augmenting, report, trace)
    return Construction(partial, leave, design, report)
