"""Confidence bounds for the set of absent edges, confidence-set size, and
the confidence level implied by a significant/indeterminate/non-significant
partition of the p-values.

``lower`` collects pairs declared non-edges in every admissible graph,
``rejected`` collects pairs declared edges in every admissible graph, and
``upper`` is the complement of ``rejected``; the gap upper minus lower is the
uncertainty zone, and the confidence set contains one graph per assignment of
the uncertain pairs, 2**|upper - lower| in total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .edges import FREE, ONE, ZERO, AdjacencyTemplate, EdgeSet, all_pairs, n_pairs
from .errors import InconsistentBoundsError, ValidationError
from .pcorr import EdgePValues
from .procedures import DecisionSets


@dataclass(frozen=True)
class ConfidenceBounds:
    """Lower/upper bounds on the set of absent edges, at a declared level."""

    lower: EdgeSet
    upper: EdgeSet
    rejected: EdgeSet
    level: float

    def __post_init__(self):
        n = self.lower.n_vertices
        if self.upper.n_vertices != n or self.rejected.n_vertices != n:
            raise InconsistentBoundsError("bound sets disagree on vertex count")
        if self.upper.members & self.rejected.members:
            raise InconsistentBoundsError("upper bound overlaps rejected set")
        if len(self.upper) + len(self.rejected) != n_pairs(n):
            raise InconsistentBoundsError("upper and rejected sets must partition all pairs")
        if not self.lower.issubset(self.upper):
            raise InconsistentBoundsError("lower bound must lie inside the upper bound")

    @property
    def n_vertices(self) -> int:
        return self.lower.n_vertices

    @property
    def uncertainty(self) -> EdgeSet:
        return EdgeSet(self.n_vertices, self.upper.members - self.lower.members)


def bounds_from_decisions(decisions: DecisionSets, level: float) -> ConfidenceBounds:
    """Bounds induced by a decision pair: lower = rejected alternatives,
    rejected = rejected hypotheses, upper = its complement."""
    upper = decisions.rejected_h.complement()
    return ConfidenceBounds(
        lower=decisions.rejected_k,
        upper=upper,
        rejected=decisions.rejected_h,
        level=float(level),
    )


def set_size_log2(bounds: ConfidenceBounds) -> int:
    """Base-2 log of the number of graphs in the confidence set."""
    return len(bounds.uncertainty)


def set_size_decimal(bounds: ConfidenceBounds) -> str:
    """Exact number of graphs, 2**|uncertainty zone|, as a decimal string."""
    return str(2 ** set_size_log2(bounds))


def template_from_bounds(bounds: ConfidenceBounds) -> AdjacencyTemplate:
    """Adjacency template: one on forced edges, zero on forced non-edges,
    free on the uncertainty zone."""
    entries = {}
    for e in all_pairs(bounds.n_vertices):
        if e in bounds.rejected:
            entries[e] = ONE
        elif e in bounds.lower:
            entries[e] = ZERO
        else:
            entries[e] = FREE
    return AdjacencyTemplate(bounds.n_vertices, entries)


@dataclass(frozen=True)
class SinPartition:
    """Partition of all pairs into significant / indeterminate / non-significant."""

    s_set: EdgeSet
    i_set: EdgeSet
    n_set: EdgeSet

    def __post_init__(self):
        n = self.s_set.n_vertices
        if self.i_set.n_vertices != n or self.n_set.n_vertices != n:
            raise ValidationError("partition sets disagree on vertex count")
        if (
            self.s_set.members & self.i_set.members
            or self.s_set.members & self.n_set.members
            or self.i_set.members & self.n_set.members
        ):
            raise ValidationError("partition groups must be disjoint")
        if len(self.s_set) + len(self.i_set) + len(self.n_set) != n_pairs(n):
            raise ValidationError("partition must cover every pair")

    @property
    def n_vertices(self) -> int:
        return self.s_set.n_vertices


@dataclass(frozen=True)
class SinAnalysis:
    """Smallest overall level at which a partition's claims are simultaneously
    significant, and the bounds recomputed at that level."""

    implied_alpha: float
    implied_level: float
    bounds: ConfidenceBounds | None


def sin_implied_level(p: EdgePValues, part: SinPartition) -> SinAnalysis:
    """Confidence level implicitly claimed by a partition.

    Treating the S group as rejected hypotheses and the N group as rejected
    alternatives under Bonferroni cuts, the largest p-value in S and the
    largest (1 - p) in N pin the smallest per-test budget that supports every
    claim; scaling by M gives the implied overall alpha.  When that alpha is
    below 1, bounds are recomputed with boundary-inclusive cuts, so the
    partition's own claims always sit inside them.
    """
    if part.n_vertices != p.n_vertices:
        raise ValidationError("partition and p-values disagree on vertex count")
    m = p.m
    worst_s = max((p[e] for e in part.s_set), default=0.0)
    worst_n = max((1.0 - p[e] for e in part.n_set), default=0.0)
    t = max(worst_s, worst_n)
    implied_alpha = m * t
    implied_level = max(0.0, 1.0 - implied_alpha)
    bounds = None
    # t < 1/2 is automatic for m >= 2 when implied_alpha < 1; for m = 1 it
    # guards against contradictory cuts.
    if implied_alpha < 1.0 and t < 0.5:
        # Compare the alternative side as (1 - p) <= t: these are the exact
        # floats t was built from, so the boundary pair is always included.
        rej_h = [e for e in all_pairs(p.n_vertices) if p[e] <= t]
        rej_k = [e for e in all_pairs(p.n_vertices) if 1.0 - p[e] <= t]
        decisions = DecisionSets(
            EdgeSet.of(p.n_vertices, rej_h), EdgeSet.of(p.n_vertices, rej_k)
        )
        bounds = bounds_from_decisions(decisions, implied_level)
    return SinAnalysis(implied_alpha, implied_level, bounds)
