"""Command-line interface.

Subcommands: ``analyze`` (dataset CSV), ``pvalues`` (p-value CSV), ``sin``
(p-value CSV plus partition CSV), ``simulate`` (scenario JSON), and
``oracle-check`` (exhaustive-closure consistency check on random inputs).

Exit codes: 0 success, 2 usage error, 3 validation error, 4 numeric failure.
All errors go to stderr as one-line JSON records.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .confidence import bounds_from_decisions, sin_implied_level, template_from_bounds
from .errors import NumericError, ValidationError
from .pcorr import EXACT, FISHER, EdgePValues, edge_pvalues
from .procedures import (
    BONF_SPLIT,
    BONFERRONI,
    DOUBLE_HOLM,
    MB,
    SIDAK,
    SINGLE_STEP,
    ProcedureSpec,
    alpha_m,
    apply_procedure,
    closure_masks,
    single_step_masks,
)
from .reportio import (
    analysis_report,
    dumps_report,
    emit_dot,
    read_dataset,
    read_partition,
    read_pvalues,
    read_scenario,
    simulation_report,
    sin_report,
)
from .simulate import run_coverage

SCHEMA_VERSION = 1


def _emit_error(kind: str, message) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": str(message)}) + "\n")


class _Parser(argparse.ArgumentParser):
    """Argument parser that emits one-line JSON usage errors (exit 2)."""

    def error(self, message):
        _emit_error("usage", message)
        raise SystemExit(2)


def _add_procedure_args(parser):
    parser.add_argument(
        "--procedure",
        choices=[MB, SINGLE_STEP, BONF_SPLIT, DOUBLE_HOLM],
        default=MB,
        help="simultaneous testing procedure (default: mb)",
    )
    parser.add_argument("--alpha", type=float, help="overall level (1 - confidence)")
    parser.add_argument("--alpha1", type=float, help="edge-side budget for split procedures")
    parser.add_argument("--alpha2", type=float, help="non-edge-side budget for split procedures")
    parser.add_argument(
        "--rule",
        choices=[BONFERRONI, SIDAK],
        default=BONFERRONI,
        help="per-test threshold rule for single-step (sidak assumes independent p-values)",
    )


def _build_spec(args) -> ProcedureSpec:
    kind = args.procedure
    if kind in (BONF_SPLIT, DOUBLE_HOLM):
        if args.alpha1 is not None or args.alpha2 is not None:
            return ProcedureSpec(kind, args.alpha, args.alpha1, args.alpha2, rule=args.rule)
        if args.alpha is None:
            raise ValidationError(f"{kind} needs --alpha or --alpha1/--alpha2")
        return ProcedureSpec(kind, args.alpha, rule=args.rule)
    if args.alpha is None:
        raise ValidationError(f"{kind} needs --alpha")
    if args.alpha1 is not None or args.alpha2 is not None:
        raise ValidationError(f"{kind} takes no --alpha1/--alpha2")
    return ProcedureSpec(kind, args.alpha, rule=args.rule)


def _write_text(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_outputs(report: dict, bounds, args) -> None:
    _write_text(dumps_report(report), args.out_json)
    if getattr(args, "out_dot", None):
        dot = emit_dot(template_from_bounds(bounds), bounds)
        _write_text(dot, args.out_dot)


def _run_analysis(source, pvals: EdgePValues, args, r_matrix=None) -> int:
    spec = _build_spec(args)
    decisions = apply_procedure(pvals, spec)
    bounds = bounds_from_decisions(decisions, spec.level)
    report = analysis_report(source, pvals, spec, bounds, r_matrix=r_matrix)
    _emit_outputs(report, bounds, args)
    return 0


def _cmd_analyze(args) -> int:
    data = read_dataset(args.dataset, header=args.header)
    method = EXACT if args.pvalue_method == "exact" else FISHER
    mat, pvals = edge_pvalues(data, method=method, marginal=args.marginal)
    source = {
        "path": args.dataset,
        "kind": "dataset",
        "n_obs": data.n_obs,
        "marginal": args.marginal,
    }
    return _run_analysis(source, pvals, args, r_matrix=mat.r)


def _cmd_pvalues(args) -> int:
    pvals = read_pvalues(args.pvalues)
    source = {"path": args.pvalues, "kind": "pvalues"}
    return _run_analysis(source, pvals, args)


def _cmd_sin(args) -> int:
    pvals = read_pvalues(args.pvalues)
    part = read_partition(args.partition, pvals.n_vertices)
    analysis = sin_implied_level(pvals, part)
    source = {"path": args.pvalues, "kind": "pvalues", "partition": args.partition}
    report = sin_report(source, pvals, part, analysis, precision=args.precision)
    _write_text(dumps_report(report), args.out_json)
    return 0


def _cmd_simulate(args) -> int:
    scenario = read_scenario(args.scenario)
    spec = _build_spec(args)
    report = run_coverage(scenario, spec, reps=args.reps, seed=args.seed)
    source = {
        "path": args.scenario,
        "kind": "scenario",
        "n_obs": scenario.n_obs,
        "n_vertices": scenario.n_vertices,
    }
    _write_text(dumps_report(simulation_report(source, spec, report)), args.out_json)
    return 0


def _cmd_oracle_check(args) -> int:
    if args.m < 1:
        raise ValidationError(f"--m must be >= 1, got {args.m}")
    rng = np.random.default_rng(args.seed)
    mismatches = 0
    for _ in range(args.trials):
        p = rng.uniform(0.0, 1.0, size=args.m)
        alpha = float(rng.uniform(0.01, 0.3))
        for rule in (BONFERRONI, SIDAK):
            ch, ck = closure_masks(p, alpha, rule)
            sh, sk = single_step_masks(p, alpha_m(rule, alpha, args.m))
            if not (np.array_equal(ch, sh) and np.array_equal(ck, sk)):
                mismatches += 1
    report = {
        "schema_version": SCHEMA_VERSION,
        "m": args.m,
        "trials": args.trials,
        "seed": args.seed,
        "rules": [BONFERRONI, SIDAK],
        "mismatches": mismatches,
    }
    _write_text(dumps_report(report), args.out_json)
    if mismatches:
        raise NumericError(
            f"closure enumeration disagreed with single-step cuts in {mismatches} trials"
        )
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="gmcs", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze a dataset CSV")
    p.add_argument("dataset")
    p.add_argument("--header", action="store_true", help="skip the first CSV row")
    p.add_argument(
        "--pvalue-method", choices=["exact", "fisher"], default="exact",
        help="exact null tail or z-transform approximation",
    )
    p.add_argument(
        "--marginal", action="store_true",
        help="test plain correlations instead of partial correlations",
    )
    _add_procedure_args(p)
    p.add_argument("--out-json", help="write the JSON report here instead of stdout")
    p.add_argument("--out-dot", help="also write a DOT rendering here")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("pvalues", help="analyze a precomputed p-value CSV")
    p.add_argument("pvalues")
    _add_procedure_args(p)
    p.add_argument("--out-json", help="write the JSON report here instead of stdout")
    p.add_argument("--out-dot", help="also write a DOT rendering here")
    p.set_defaults(func=_cmd_pvalues)

    p = sub.add_parser("sin", help="implied confidence level of an S/I/N partition")
    p.add_argument("pvalues")
    p.add_argument("partition")
    p.add_argument("--precision", type=int, default=4, help="decimals for reported levels")
    p.add_argument("--out-json", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_sin)

    p = sub.add_parser("simulate", help="Monte Carlo coverage/FWER estimates")
    p.add_argument("scenario")
    _add_procedure_args(p)
    p.add_argument("--reps", type=int, default=2000, help="replications (default 2000)")
    p.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p.add_argument("--out-json", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "oracle-check",
        help="verify exhaustive closure equals single-step cuts on random inputs",
    )
    p.add_argument("--m", type=int, required=True, help="number of tested pairs (<= 12)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-json", help="write the JSON report here instead of stdout")
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _emit_error("validation", exc)
        return 3
    except NumericError as exc:
        _emit_error("numeric", exc)
        return 4
    except OSError as exc:
        # unreadable input or unwritable output path
        _emit_error("validation", f"{exc.filename or ''}: {exc.strerror or exc}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
