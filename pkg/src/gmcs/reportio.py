"""File formats and report emitters.

Formats (documented in README.md):

* dataset CSV: one observation per row, numeric cells, optional header row;
* p-value CSV: rows ``i,j,p`` covering every pair 1 <= i < j <= N exactly once;
* partition CSV: rows ``i,j,group`` with group in {S, I, N}, same coverage;
* scenario JSON: ``{"n": int, "precision": [[...]]}`` or
  ``{"n": int, "vertices": int, "edges": [[i,j], ...], "strength": float}``;
* DOT output: solid edges are forced present, dashed edges are undecided,
  forced-absent pairs are omitted;
* JSON reports: schema below, stamped with ``schema_version``.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .confidence import (
    ConfidenceBounds,
    SinAnalysis,
    SinPartition,
    set_size_decimal,
    set_size_log2,
)
from .edges import EdgeSet, all_pairs, check_pair, n_pairs
from .errors import ValidationError
from .pcorr import SUPPLIED, Dataset, EdgePValues
from .procedures import ProcedureSpec
from .simulate import CoverageReport, Scenario, make_pattern_precision, scenario_from_precision

SCHEMA_VERSION = 1

DECISION_EDGE = "edge"
DECISION_NON_EDGE = "non-edge"
DECISION_UNCERTAIN = "uncertain"


def _open_input(path):
    try:
        return open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror or exc}") from None


def _rows(path):
    with _open_input(path) as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            yield lineno, [cell.strip() for cell in row]


def read_dataset(path, header: bool = False) -> Dataset:
    """Parse a numeric CSV into a Dataset, reporting offending line numbers."""
    rows = []
    width = None
    for lineno, cells in _rows(path):
        if header and lineno == 1:
            continue
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ValidationError(
                f"{path}: line {lineno}: expected {width} columns, got {len(cells)}"
            )
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise ValidationError(f"{path}: line {lineno}: non-numeric cell ({exc})") from None
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    try:
        return Dataset(np.array(rows))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def read_pvalues(path) -> EdgePValues:
    """Parse an ``i,j,p`` CSV covering all pairs into EdgePValues."""
    entries = {}
    max_vertex = 0
    for lineno, cells in _rows(path):
        if len(cells) != 3:
            raise ValidationError(f"{path}: line {lineno}: expected 'i,j,p'")
        try:
            i, j, p = int(cells[0]), int(cells[1]), float(cells[2])
        except ValueError:
            raise ValidationError(f"{path}: line {lineno}: expected 'i,j,p'") from None
        if not i < j:
            raise ValidationError(f"{path}: line {lineno}: need i < j, got ({i},{j})")
        if (i, j) in entries:
            raise ValidationError(f"{path}: line {lineno}: duplicate pair ({i},{j})")
        if not 0.0 <= p <= 1.0:
            raise ValidationError(
                f"{path}: line {lineno}: p-value {p} for pair ({i},{j}) outside [0,1]"
            )
        entries[(i, j)] = p
        max_vertex = max(max_vertex, j)
    if max_vertex < 2:
        raise ValidationError(f"{path}: no pairs found")
    missing = [e for e in all_pairs(max_vertex) if e not in entries]
    if missing:
        raise ValidationError(f"{path}: missing pair {missing[0]} (and possibly more)")
    return EdgePValues(max_vertex, entries, SUPPLIED)


_GROUPS = {"S": "s", "I": "i", "N": "n"}


def read_partition(path, n_vertices: int) -> SinPartition:
    """Parse an ``i,j,group`` CSV into a SinPartition over n_vertices."""
    groups = {"s": set(), "i": set(), "n": set()}
    seen = set()
    for lineno, cells in _rows(path):
        if len(cells) != 3:
            raise ValidationError(f"{path}: line {lineno}: expected 'i,j,group'")
        try:
            i, j = int(cells[0]), int(cells[1])
        except ValueError:
            raise ValidationError(f"{path}: line {lineno}: expected 'i,j,group'") from None
        label = cells[2].upper()
        if label not in _GROUPS:
            raise ValidationError(
                f"{path}: line {lineno}: group must be S, I or N, got {cells[2]!r}"
            )
        try:
            check_pair(i, j, n_vertices)
        except ValidationError:
            raise ValidationError(
                f"{path}: line {lineno}: invalid pair ({i},{j}) for {n_vertices} vertices"
            ) from None
        if (i, j) in seen:
            raise ValidationError(f"{path}: line {lineno}: duplicate pair ({i},{j})")
        seen.add((i, j))
        groups[_GROUPS[label]].add((i, j))
    try:
        return SinPartition(
            EdgeSet.of(n_vertices, groups["s"]),
            EdgeSet.of(n_vertices, groups["i"]),
            EdgeSet.of(n_vertices, groups["n"]),
        )
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from None


def read_scenario(path) -> Scenario:
    """Parse a scenario JSON file."""
    with _open_input(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise ValidationError(f"{path}: scenario needs an 'n' field")
    n_obs = doc["n"]
    if not isinstance(n_obs, int) or n_obs < 2:
        raise ValidationError(f"{path}: 'n' must be an integer >= 2")
    if "precision" in doc:
        return scenario_from_precision(np.array(doc["precision"], dtype=float), n_obs)
    if {"vertices", "edges", "strength"} <= set(doc):
        edges = [tuple(e) for e in doc["edges"]]
        omega = make_pattern_precision(doc["vertices"], edges, doc["strength"])
        return scenario_from_precision(omega, n_obs)
    raise ValidationError(
        f"{path}: scenario needs either 'precision' or 'vertices'/'edges'/'strength'"
    )


def emit_dot(template, bounds: ConfidenceBounds) -> str:
    """Deterministic DOT rendering of the confidence set.

    Solid edges are present in every admissible graph, dashed edges are
    undecided, forced-absent pairs are omitted.  Output is byte-stable for
    fixed inputs: vertices 1..N, then edges in edge-index order.
    """
    if template.n_vertices != bounds.n_vertices:
        raise ValidationError("template and bounds disagree on vertex count")
    lines = ["graph confidence_set {"]
    for v in range(1, bounds.n_vertices + 1):
        lines.append(f"    {v};")
    for i, j in all_pairs(bounds.n_vertices):
        if (i, j) in bounds.rejected:
            lines.append(f"    {i} -- {j} [style=solid];")
        elif (i, j) not in bounds.lower:
            lines.append(f"    {i} -- {j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _pairs_list(edge_set: EdgeSet) -> list:
    return [[i, j] for i, j in edge_set]


def analysis_report(
    source: dict,
    pvals: EdgePValues,
    spec: ProcedureSpec,
    bounds: ConfidenceBounds,
    r_matrix=None,
) -> dict:
    """JSON-ready analysis report; round-trips through json exactly."""
    edges = []
    for i, j in all_pairs(pvals.n_vertices):
        if (i, j) in bounds.rejected:
            decision = DECISION_EDGE
        elif (i, j) in bounds.lower:
            decision = DECISION_NON_EDGE
        else:
            decision = DECISION_UNCERTAIN
        record = {
            "i": i,
            "j": j,
            "r": None if r_matrix is None else round(float(r_matrix[i - 1, j - 1]), 6),
            "p": round(pvals[(i, j)], 6),
            "decision": decision,
        }
        edges.append(record)
    return {
        "schema_version": SCHEMA_VERSION,
        "input": source,
        "method": pvals.method,
        "procedure": spec.describe(),
        "level": spec.level,
        "n_vertices": pvals.n_vertices,
        "n_pairs": n_pairs(pvals.n_vertices),
        "edges": edges,
        "significant_edges": _pairs_list(bounds.rejected),
        "significant_non_edges": _pairs_list(bounds.lower),
        "uncertain": _pairs_list(bounds.uncertainty),
        "uncertainty_size": set_size_log2(bounds),
        "confidence_set_size": set_size_decimal(bounds),
    }


def sin_report(
    source: dict,
    pvals: EdgePValues,
    part: SinPartition,
    analysis: SinAnalysis,
    precision: int = 4,
) -> dict:
    """JSON-ready report for an implied-level analysis."""
    bounds = None
    if analysis.bounds is not None:
        bounds = {
            "significant_edges": _pairs_list(analysis.bounds.rejected),
            "significant_non_edges": _pairs_list(analysis.bounds.lower),
            "uncertain": _pairs_list(analysis.bounds.uncertainty),
            "uncertainty_size": set_size_log2(analysis.bounds),
            "confidence_set_size": set_size_decimal(analysis.bounds),
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "input": source,
        "n_vertices": pvals.n_vertices,
        "partition": {
            "s": _pairs_list(part.s_set),
            "i": _pairs_list(part.i_set),
            "n": _pairs_list(part.n_set),
        },
        "implied_alpha": round(analysis.implied_alpha, precision),
        "implied_level": round(analysis.implied_level, precision),
        "bounds": bounds,
    }


def simulation_report(source: dict, spec: ProcedureSpec, report: CoverageReport) -> dict:
    """JSON-ready report for a coverage simulation."""
    return {
        "schema_version": SCHEMA_VERSION,
        "input": source,
        "procedure": spec.describe(),
        "level": spec.level,
        **report.to_dict(),
    }


def dumps_report(report: dict) -> str:
    """Deterministic JSON rendering (stable key order, trailing newline)."""
    return json.dumps(report, indent=2) + "\n"
