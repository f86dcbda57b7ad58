"""Simultaneous testing of per-edge hypotheses ("no edge") and their
alternatives ("edge") over one vector of hypothesis p-values.

Every procedure returns a :class:`DecisionSets`: the pairs whose hypothesis
was rejected (significant edges) and the pairs whose alternative was rejected
(significant non-edges).  Per-test thresholds below 1/2 keep the two sets
disjoint; a contradictory configuration raises instead of returning
overlapping sets.

Boundary conventions, fixed deliberately and covered by tests:

* ``mb``:          reject hypothesis at p <= alpha/M, alternative at p > 1 - alpha/M.
* ``single_step``: reject hypothesis at p <= t, alternative at p >= 1 - t.
* ``double_holm``: hypothesis walk uses non-strict <=, alternative walk uses
  strict >, mirroring the step-down forms the thresholds come from.

The ``mb`` and ``single_step`` cuts differ only on exact boundary ties.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._core import closure_scan
from .edges import EdgeSet, all_pairs, n_pairs
from .errors import (
    EnumerationLimitError,
    InconsistentDecisionsError,
    InvalidThresholdError,
    ValidationError,
)
from .pcorr import EdgePValues

MB = "mb"
SINGLE_STEP = "single-step"
BONF_SPLIT = "bonf-split"
DOUBLE_HOLM = "double-holm"
_KINDS = (MB, SINGLE_STEP, BONF_SPLIT, DOUBLE_HOLM)
_SPLIT_KINDS = (BONF_SPLIT, DOUBLE_HOLM)

BONFERRONI = "bonferroni"
SIDAK = "sidak"
_RULES = (BONFERRONI, SIDAK)

CLOSURE_MAX_M = 12


@dataclass(frozen=True)
class DecisionSets:
    """Rejected hypotheses (edges) and rejected alternatives (non-edges)."""

    rejected_h: EdgeSet
    rejected_k: EdgeSet

    def __post_init__(self):
        if self.rejected_h.n_vertices != self.rejected_k.n_vertices:
            raise InconsistentDecisionsError("decision sets disagree on vertex count")
        overlap = self.rejected_h.members & self.rejected_k.members
        if overlap:
            raise InconsistentDecisionsError(
                f"pairs rejected as both edge and non-edge: {sorted(overlap)[:3]}"
            )
        m = n_pairs(self.rejected_h.n_vertices)
        if len(self.rejected_h) + len(self.rejected_k) > m:
            raise InconsistentDecisionsError("more rejections than tested pairs")

    @property
    def n_vertices(self) -> int:
        return self.rejected_h.n_vertices


@dataclass(frozen=True)
class ProcedureSpec:
    """A procedure choice plus its levels.

    For the split kinds (``bonf-split``, ``double-holm``) the overall level is
    alpha1 + alpha2; either give alpha1/alpha2 explicitly or give alpha, which
    is split evenly.
    """

    kind: str
    alpha: float | None
    alpha1: float | None = None
    alpha2: float | None = None
    rule: str = BONFERRONI

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown procedure kind {self.kind!r}")
        if self.rule not in _RULES:
            raise ValidationError(f"unknown threshold rule {self.rule!r}")
        if self.kind in _SPLIT_KINDS:
            a1, a2 = self.alpha1, self.alpha2
            if a1 is None and a2 is None:
                if self.alpha is None:
                    raise ValidationError("split procedures need alpha or alpha1/alpha2")
                a1 = a2 = self.alpha / 2.0
            if a1 is None or a2 is None:
                raise ValidationError("give both alpha1 and alpha2, or neither")
            if not (a1 > 0.0 and a2 > 0.0):
                raise ValidationError("alpha1 and alpha2 must be positive")
            total = a1 + a2
            if self.alpha is not None and not math.isclose(total, self.alpha, rel_tol=1e-9):
                raise ValidationError(
                    f"alpha1 + alpha2 = {total} does not match alpha = {self.alpha}"
                )
            object.__setattr__(self, "alpha1", float(a1))
            object.__setattr__(self, "alpha2", float(a2))
            object.__setattr__(self, "alpha", float(total))
        else:
            if self.alpha is None:
                raise ValidationError(f"procedure {self.kind!r} needs alpha")
            if self.alpha1 is not None or self.alpha2 is not None:
                raise ValidationError(f"procedure {self.kind!r} takes no alpha1/alpha2")
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError(f"overall level must lie in (0,1), got {self.alpha}")

    @property
    def level(self) -> float:
        """Declared confidence level of the resulting set."""
        return 1.0 - self.alpha

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "rule": self.rule if self.kind == SINGLE_STEP else None,
        }


def alpha_m(rule: str, alpha: float, m: int) -> float:
    """Per-test threshold for m simultaneous tests at overall level alpha."""
    if rule not in _RULES:
        raise ValidationError(f"unknown threshold rule {rule!r}")
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie in (0,1), got {alpha}")
    if m < 1:
        raise ValidationError(f"m must be >= 1, got {m}")
    if rule == BONFERRONI:
        return alpha / m
    # 1 - (1-alpha)^(1/m), computed without cancellation
    return -math.expm1(math.log1p(-alpha) / m)


def _split_levels(alpha1: float, alpha2: float):
    if not (alpha1 > 0.0 and alpha2 > 0.0):
        raise ValidationError("alpha1 and alpha2 must be positive")
    if alpha1 + alpha2 >= 1.0:
        raise ValidationError(f"alpha1 + alpha2 must be below 1, got {alpha1 + alpha2}")
    return float(alpha1), float(alpha2)


def mb(p: EdgePValues, alpha: float) -> DecisionSets:
    """Both-sided Bonferroni cuts against the full budget alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValidationError(f"alpha must lie in (0,1), got {alpha}")
    t = alpha / p.m
    rej_h = [e for e in all_pairs(p.n_vertices) if p[e] <= t]
    rej_k = [e for e in all_pairs(p.n_vertices) if p[e] > 1.0 - t]
    return DecisionSets(
        EdgeSet.of(p.n_vertices, rej_h), EdgeSet.of(p.n_vertices, rej_k)
    )


def single_step_masks(p_vector, threshold: float):
    """Single-step cuts on a raw p-value vector.

    Returns boolean arrays (reject hypothesis, reject alternative) using the
    boundary-inclusive comparisons p <= t and p >= 1 - t.
    """
    if not 0.0 < threshold < 0.5:
        raise InvalidThresholdError(
            f"threshold must lie in (0, 1/2) so opposite rejections cannot "
            f"overlap, got {threshold}"
        )
    p_vector = np.asarray(p_vector, dtype=np.float64)
    return p_vector <= threshold, p_vector >= 1.0 - threshold


def _masks_to_decisions(p: EdgePValues, mask_h, mask_k) -> DecisionSets:
    pairs = all_pairs(p.n_vertices)
    rej_h = [e for e, f in zip(pairs, mask_h) if f]
    rej_k = [e for e, f in zip(pairs, mask_k) if f]
    return DecisionSets(
        EdgeSet.of(p.n_vertices, rej_h), EdgeSet.of(p.n_vertices, rej_k)
    )


def single_step(p: EdgePValues, threshold: float) -> DecisionSets:
    """Two symmetric cuts at a precomputed per-test threshold."""
    mask_h, mask_k = single_step_masks(p.by_index(), threshold)
    return _masks_to_decisions(p, mask_h, mask_k)


def bonferroni_split(p: EdgePValues, alpha1: float, alpha2: float) -> DecisionSets:
    """Separate Bonferroni budgets for the two sides."""
    alpha1, alpha2 = _split_levels(alpha1, alpha2)
    t1, t2 = alpha1 / p.m, alpha2 / p.m
    rej_h = [e for e in all_pairs(p.n_vertices) if p[e] <= t1]
    rej_k = [e for e in all_pairs(p.n_vertices) if p[e] > 1.0 - t2]
    return DecisionSets(
        EdgeSet.of(p.n_vertices, rej_h), EdgeSet.of(p.n_vertices, rej_k)
    )


def double_holm(p: EdgePValues, alpha1: float, alpha2: float) -> DecisionSets:
    """Holm step-down on each side: hypotheses at alpha1 walking the sorted
    p-values upward, alternatives at alpha2 walking downward."""
    alpha1, alpha2 = _split_levels(alpha1, alpha2)
    m = p.m
    order = sorted(all_pairs(p.n_vertices), key=lambda e: (p[e], e))
    rej_h = []
    for i in range(1, m + 1):
        if p[order[i - 1]] <= alpha1 / (m - i + 1):
            rej_h.append(order[i - 1])
        else:
            break
    rej_k = []
    for j in range(1, m + 1):
        if p[order[m - j]] > 1.0 - alpha2 / (m - j + 1):
            rej_k.append(order[m - j])
        else:
            break
    return DecisionSets(
        EdgeSet.of(p.n_vertices, rej_h), EdgeSet.of(p.n_vertices, rej_k)
    )


def alpha_m_schedule(rule: str, alpha: float, m: int) -> np.ndarray:
    """Per-test thresholds for every intersection size 1..m."""
    return np.array([alpha_m(rule, alpha, k) for k in range(1, m + 1)])


def closure_masks(p_vector, alpha: float, rule: str = BONFERRONI):
    """Exhaustive-closure decisions on a raw p-value vector.

    Enumerates every disjoint pair of index sets (3**M combined hypotheses)
    and rejects a per-test decision only if all combined hypotheses containing
    it are rejected.  A slow cross-check for the single-step cuts; limited to
    M <= 12.  Returns boolean arrays (reject hypothesis, reject alternative).
    """
    p_vector = np.asarray(p_vector, dtype=np.float64)
    m = p_vector.size
    if m > CLOSURE_MAX_M:
        raise EnumerationLimitError(
            f"closure enumeration limited to M <= {CLOSURE_MAX_M}, got M = {m}"
        )
    if m == 0 or (p_vector.min() < 0.0 or p_vector.max() > 1.0):
        raise ValidationError("p-values must be a nonempty vector in [0,1]")
    thresholds = alpha_m_schedule(rule, alpha, m)
    mask_h, mask_k = closure_scan(p_vector, thresholds)
    return mask_h.astype(bool), mask_k.astype(bool)


def closure_oracle(p: EdgePValues, alpha: float, rule: str = BONFERRONI) -> DecisionSets:
    """Decisions via exhaustive closure over all intersection hypotheses."""
    mask_h, mask_k = closure_masks(p.by_index(), alpha, rule)
    return _masks_to_decisions(p, mask_h, mask_k)


def apply_procedure(p: EdgePValues, spec: ProcedureSpec) -> DecisionSets:
    """Run the procedure described by ``spec``."""
    if spec.kind == MB:
        return mb(p, spec.alpha)
    if spec.kind == SINGLE_STEP:
        return single_step(p, alpha_m(spec.rule, spec.alpha, p.m))
    if spec.kind == BONF_SPLIT:
        return bonferroni_split(p, spec.alpha1, spec.alpha2)
    return double_holm(p, spec.alpha1, spec.alpha2)
