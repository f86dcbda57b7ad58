"""Monte Carlo checks of the coverage and familywise-error guarantees under
known ground-truth precision matrices.

Each replication draws a Gaussian sample, runs the full pipeline (sample
covariance, partial correlations, exact p-values, chosen procedure) and
records whether the resulting bounds cover the true non-edge set and whether
any individual decision was a false rejection.  Replication r always uses the
r-th spawned child of the seed, so results do not depend on how work is
scheduled across threads.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .edges import EdgeSet, TrueModel, all_pairs
from .errors import NumericError, ValidationError
from .pcorr import (
    EXACT,
    Dataset,
    EdgePValues,
    _pcorr_from_precision,
    cholesky_spd,
    pvalues_exact_many,
    spd_inverse,
)
from .procedures import ProcedureSpec, apply_procedure

THREADS_ENV = "GMCS_THREADS"


@dataclass(frozen=True)
class Scenario:
    """Ground-truth precision matrix plus a sample size.

    The true non-edge set is read off the exact zero pattern of the
    precision matrix (equivalently, of its partial-correlation transform).
    """

    precision: np.ndarray
    n_obs: int
    truth: TrueModel

    @property
    def n_vertices(self) -> int:
        return self.precision.shape[0]


def scenario_from_precision(precision, n_obs: int) -> Scenario:
    precision = np.array(precision, dtype=np.float64, copy=True)
    cholesky_spd(precision)  # positive definiteness check
    n = precision.shape[0]
    if n_obs <= n:
        raise ValidationError(f"n > N required, got n={n_obs}, N={n}")
    zero = [e for e in all_pairs(n) if precision[e[0] - 1, e[1] - 1] == 0.0]
    precision.setflags(write=False)
    return Scenario(precision, int(n_obs), TrueModel(n, EdgeSet.of(n, zero)))


def make_pattern_precision(n_vertices: int, edges, strength: float) -> np.ndarray:
    """Unit-diagonal precision matrix with -strength at the given edges.

    Requires strength < 1/(max vertex degree) so the matrix is strictly
    diagonally dominant, hence positive definite.
    """
    edge_set = EdgeSet.of(n_vertices, edges)
    if not 0.0 < strength < 1.0:
        raise ValidationError(f"strength must lie in (0,1), got {strength}")
    degree = {v: 0 for v in range(1, n_vertices + 1)}
    for i, j in edge_set:
        degree[i] += 1
        degree[j] += 1
    max_degree = max(degree.values())
    if max_degree and strength >= 1.0 / max_degree:
        raise ValidationError(
            f"strength {strength} breaks diagonal dominance: need below "
            f"{1.0 / max_degree:.6g} for max degree {max_degree}"
        )
    omega = np.eye(n_vertices)
    for i, j in edge_set:
        omega[i - 1, j - 1] = omega[j - 1, i - 1] = -strength
    return omega


def sample_gaussian(scenario: Scenario, seed) -> Dataset:
    """Draw n independent rows with covariance = precision^{-1}.

    ``seed`` may be anything numpy's default_rng accepts (int, SeedSequence,
    Generator); a fixed seed reproduces the dataset bit for bit.
    """
    cov = spd_inverse(scenario.precision)
    factor = cholesky_spd(cov)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((scenario.n_obs, scenario.n_vertices))
    return Dataset(z @ factor.T)


@dataclass(frozen=True)
class CoverageReport:
    """Monte Carlo estimates of coverage and familywise error rate."""

    reps: int
    completed: int
    failures: int
    coverage_hat: float
    fwer_hat: float
    se_coverage: float
    se_fwer: float
    seed: int

    def to_dict(self) -> dict:
        return {
            "reps": self.reps,
            "completed": self.completed,
            "failures": self.failures,
            "coverage_hat": self.coverage_hat,
            "fwer_hat": self.fwer_hat,
            "se_coverage": self.se_coverage,
            "se_fwer": self.se_fwer,
            "seed": self.seed,
        }


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _replicate(seed_seq, factor, scenario, proc, zero_members, false_members):
    """One replication; returns (covered, any_false_rejection)."""
    n, nv = scenario.n_obs, scenario.n_vertices
    rng = np.random.default_rng(seed_seq)
    x = rng.standard_normal((n, nv)) @ factor.T
    xc = x - x.mean(axis=0)
    cov = xc.T @ xc / (n - 1)
    cov = 0.5 * (cov + cov.T)
    r = _pcorr_from_precision(spd_inverse(cov))
    pairs = all_pairs(nv)
    rvec = np.array([r[i - 1, j - 1] for i, j in pairs])
    pv = pvalues_exact_many(rvec, n, nv)
    p = EdgePValues(nv, dict(zip(pairs, pv)), EXACT)
    d = apply_procedure(p, proc)
    false_edge = bool(d.rejected_h.members & zero_members)
    false_non_edge = bool(d.rejected_k.members & false_members)
    any_false = false_edge or false_non_edge
    covered = (
        d.rejected_k.members <= zero_members
        and not (zero_members & d.rejected_h.members)
    )
    # Coverage failing is the same event as some false rejection occurring.
    assert covered == (not any_false)
    return covered, any_false


def run_coverage(
    scenario: Scenario,
    proc: ProcedureSpec,
    reps: int,
    seed: int,
    threads: int | None = None,
) -> CoverageReport:
    """Estimate coverage and FWER over ``reps`` independent replications."""
    if reps < 100:
        raise ValidationError(f"need at least 100 replications, got {reps}")
    threads = _default_threads() if threads is None else max(1, int(threads))
    factor = cholesky_spd(spd_inverse(scenario.precision))
    zero_members = scenario.truth.zero_set.members
    false_members = scenario.truth.edge_set.members
    children = np.random.SeedSequence(seed).spawn(reps)

    def run_chunk(lo, hi):
        covered = fwer = failures = 0
        for r in range(lo, hi):
            try:
                c, f = _replicate(
                    children[r], factor, scenario, proc, zero_members, false_members
                )
            except NumericError:
                failures += 1
                continue
            covered += c
            fwer += f
        return covered, fwer, failures

    if threads == 1:
        totals = [run_chunk(0, reps)]
    else:
        step = -(-reps // threads)
        spans = [(lo, min(lo + step, reps)) for lo in range(0, reps, step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            totals = list(pool.map(lambda s: run_chunk(*s), spans))

    covered = sum(t[0] for t in totals)
    fwer = sum(t[1] for t in totals)
    failures = sum(t[2] for t in totals)
    done = reps - failures
    if done == 0:
        raise NumericError("every replication failed")
    cov_hat = covered / done
    fwer_hat = fwer / done
    return CoverageReport(
        reps=reps,
        completed=done,
        failures=failures,
        coverage_hat=cov_hat,
        fwer_hat=fwer_hat,
        se_coverage=float(np.sqrt(cov_hat * (1.0 - cov_hat) / done)),
        se_fwer=float(np.sqrt(fwer_hat * (1.0 - fwer_hat) / done)),
        seed=int(seed),
    )
