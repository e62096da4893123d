"""Command-line surface: verification sweeps, single solves, trajectory
evolution, and mutation cycles, with text/JSON/CSV report output.

Exit codes: 0 all checks passed, 1 any check or solver failed, 2 usage
error. Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction

from . import identities
from .cluster import SignCoherenceError, parse_matrix, run_mutation_cycle
from .qsolve import SolveError, solve_constant_y, solve_q_system, solve_y_form
from .rootsys import TypeLabel, build_root_system, default_labels, parse_label
from .ydynamics import (
    check_periodicity,
    evolve,
    periodic_dilog_sum,
    random_slices,
    trajectory_records,
)

_PRESETS = {
    "rank1": (((0,),), (1, 1)),
    "pentagon": (((0, 1), (-1, 0)), (1, 2, 1, 2, 1)),
}


def _label_arg(text: str) -> TypeLabel:
    try:
        return parse_label(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _sequence_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad mutation sequence {text!r}") from exc


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ydilog",
        description="Solve constant Y-systems and verify dilogarithm identities "
        "against exact rational targets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--type", dest="types", type=_label_arg, action="append",
                       metavar="LABEL", help="type label such as A7, E8, T3 (repeatable)")
        p.add_argument("--tol", type=_positive_float, default=None,
                       help="override the acceptance tolerance")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p_verify = sub.add_parser("verify", help="run identity verifications")
    common(p_verify)
    p_verify.add_argument("--all", action="store_true",
                          help="full desk-scale sweep (default when no --type is given)")
    p_verify.add_argument("--variant", choices=("a", "aflat", "both"), default="both")
    p_verify.add_argument("--level", type=int, default=None,
                          help="also verify the level-L sum identity for simply-laced types")

    p_solve = sub.add_parser("solve", help="solve one instance and print the solution")
    common(p_solve)
    p_solve.add_argument("--variant", choices=("a", "aflat", "both"), default="a")
    p_solve.add_argument("--level", type=int, default=None,
                         help="solve the level-L grid system instead of the Q-equations")

    p_dyn = sub.add_parser("dynamics", help="evolve the recursion and check periodicity")
    common(p_dyn)
    p_dyn.add_argument("--level", type=int, default=2)
    p_dyn.add_argument("--seed", type=int, default=0)
    p_dyn.add_argument("--dump-trajectory", action="store_true",
                       help="also emit every slice entry as a record")

    p_cluster = sub.add_parser("cluster", help="run a mutation cycle")
    common(p_cluster)
    p_cluster.add_argument("--preset", choices=sorted(_PRESETS), default=None)
    p_cluster.add_argument("--b-matrix", dest="b_matrix", default=None, metavar="FILE",
                           help="file with one space-separated integer row per line")
    p_cluster.add_argument("--sequence", type=_sequence_arg, default=None,
                           help="mutation sequence, e.g. '1,2,1,2,1'")
    p_cluster.add_argument("--seed", type=int, default=0)
    return parser


def _record(instance: str, command: str, computed: float,
            expected: Fraction | None, deviation: float, passed: bool) -> dict:
    return {
        "instance": instance,
        "command": command,
        "computed": computed,
        "expected_num": None if expected is None else expected.numerator,
        "expected_den": None if expected is None else expected.denominator,
        "deviation": deviation,
        "passed": passed,
    }


def _from_report(report: identities.VerificationReport, command: str) -> dict:
    return _record(report.instance_label, command, report.computed,
                   report.expected, report.deviation, report.passed)


def _emit(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(records, out, indent=2)
        out.write("\n")
        return
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["instance", "command", "computed", "expected_num",
                         "expected_den", "deviation", "passed"])
        for r in records:
            writer.writerow([
                r["instance"], r["command"], repr(r["computed"]),
                "" if r["expected_num"] is None else r["expected_num"],
                "" if r["expected_den"] is None else r["expected_den"],
                repr(r["deviation"]),
                "true" if r["passed"] else "false",
            ])
        out.write(buf.getvalue())
        return
    for r in records:
        if r["expected_num"] is None:
            expected = "-"
        elif r["expected_den"] == 1:
            expected = str(r["expected_num"])
        else:
            expected = f"{r['expected_num']}/{r['expected_den']}"
        status = "PASS" if r["passed"] else "FAIL"
        out.write(
            f"{r['instance']:<18} {r['command']:<10} computed={r['computed']:<22.12g}"
            f" expected={expected:<10} dev={r['deviation']:9.3e}  {status}\n"
        )


def _check_level(level: int | None) -> None:
    if level is not None and level < 2:
        raise _UsageError(f"--level must be >= 2, got {level}")


def _cmd_verify(args, out) -> int:
    _check_level(args.level)
    variants = ("a", "aflat") if args.variant == "both" else (args.variant,)
    sweep = args.all or not args.types
    labels = args.types if args.types else default_labels()
    records: list[dict] = []
    for label in labels:
        for variant in variants:
            tol = args.tol if args.tol is not None else identities.CF_TOL
            records.append(_from_report(identities.verify_cf_identity(label, variant, tol), "cf"))
        if args.level is not None and label.is_simply_laced:
            tol = args.tol if args.tol is not None else identities.LEVEL_TOL
            records.append(_from_report(
                identities.verify_level_identity(label, args.level, tol), "level"))
    if sweep:
        if "a" in variants:
            for label in labels:
                if label.is_foldable:
                    tol = args.tol if args.tol is not None else identities.FOLD_TOL
                    records.append(_from_report(identities.verify_folding(label, tol), "folding"))
        if "aflat" in variants:
            for label in labels:
                if label.is_simply_laced:
                    tol = args.tol if args.tol is not None else identities.FLAT_TOL
                    records.append(_from_report(
                        identities.verify_flat_specialization(label, tol), "flatspec"))
    _emit(records, args.format, out)
    return 0 if all(r["passed"] for r in records) else 1


def _cmd_solve(args, out) -> int:
    if not args.types:
        raise _UsageError("solve requires at least one --type")
    _check_level(args.level)
    tol = args.tol if args.tol is not None else 1e-12
    records: list[dict] = []
    for label in args.types:
        rs = build_root_system(label)
        if args.level is not None:
            if not rs.is_simply_laced:
                raise _UsageError(f"--level solving needs a simply-laced type, got {label}")
            grid = solve_constant_y(rs, args.level)
            ok = grid.residual <= tol
            for i, row in enumerate(grid.y, start=1):
                for m, value in enumerate(row, start=1):
                    records.append(_record(f"{label}[l={args.level}] Y[{i}][{m}]", "solve",
                                           value, None, grid.residual, ok))
            continue
        variants = ("a", "aflat") if args.variant == "both" else (args.variant,)
        for variant in variants:
            qsol = solve_q_system(rs, variant)
            ysol = solve_y_form(rs, variant)
            ok_q = qsol.residual <= tol
            ok_y = ysol.residual <= tol
            for i, value in enumerate(qsol.q, start=1):
                records.append(_record(f"{label}[{variant}] Q[{i}]", "solve",
                                       value, None, qsol.residual, ok_q))
            for i, value in enumerate(ysol.y, start=1):
                records.append(_record(f"{label}[{variant}] Y[{i}]", "solve",
                                       value, None, ysol.residual, ok_y))
    _emit(records, args.format, out)
    return 0 if all(r["passed"] for r in records) else 1


def _cmd_dynamics(args, out) -> int:
    if not args.types:
        raise _UsageError("dynamics requires at least one --type")
    _check_level(args.level)
    tol = args.tol if args.tol is not None else 1e-8
    records: list[dict] = []
    for label in args.types:
        rs = build_root_system(label)
        if not rs.is_simply_laced:
            raise _UsageError(f"dynamics needs a simply-laced type, got {label}")
        slice0, slice1 = random_slices(rs, args.level, args.seed)
        assert rs.coxeter is not None
        period = 2 * (rs.coxeter + args.level)
        traj = evolve(rs, args.level, slice0, slice1, period + 1)
        deviation = check_periodicity(traj)
        total = periodic_dilog_sum(traj)
        expected = Fraction(2 * (args.level - 1) * rs.rank * rs.coxeter)
        instance = f"{label}[l={args.level},seed={args.seed}]"
        records.append(_record(instance, "dyn-period", deviation, Fraction(0),
                               deviation, deviation <= tol))
        records.append(_record(instance, "dyn-sum", total, expected,
                               abs(total - float(expected)), abs(total - float(expected)) <= tol))
        if args.dump_trajectory:
            for u, i, m, value in trajectory_records(traj):
                records.append(_record(f"{instance} u={u} Y[{i}][{m}]", "dyn-slice",
                                       value, None, 0.0, True))
    _emit(records, args.format, out)
    return 0 if all(r["passed"] for r in records) else 1


def _cmd_cluster(args, out) -> int:
    tol = args.tol if args.tol is not None else 1e-10
    if args.preset is not None:
        if args.b_matrix is not None:
            raise _UsageError("--preset and --b-matrix are mutually exclusive")
        name = args.preset
        b, sequence = _PRESETS[name]
        if args.sequence is not None:
            sequence = args.sequence
    elif args.b_matrix is not None:
        if args.sequence is None:
            raise _UsageError("--b-matrix requires --sequence")
        name = args.b_matrix
        with open(args.b_matrix, encoding="utf-8") as fh:
            b = parse_matrix(fh.read())
        sequence = args.sequence
    else:
        raise _UsageError("cluster requires --preset or --b-matrix")
    rng = random.Random(args.seed)
    y0 = [math.exp(rng.uniform(-1.0, 1.0)) for _ in range(len(b))]
    report = run_mutation_cycle(b, sequence, y0)
    instance = f"{name}[seed={args.seed}]"
    deviation = abs(report.normalized_sum - report.n_minus)
    records = [
        _record(instance, "cluster-period", float(report.period),
                Fraction(report.period) if report.is_periodic else None,
                0.0 if report.is_periodic else float("inf"), report.is_periodic),
        _record(instance, "cluster-sum", report.normalized_sum,
                Fraction(report.n_minus), deviation,
                report.is_periodic and deviation <= tol),
    ]
    if args.format == "text":
        out.write(
            f"cycle {instance}: p={report.period} N-={report.n_minus} "
            f"sum={report.normalized_sum:.12f} periodic={report.is_periodic} "
            f"signs={''.join('+' if s > 0 else '-' for s in report.signs)}\n"
        )
    _emit(records, args.format, out)
    return 0 if all(r["passed"] for r in records) else 1


class _UsageError(Exception):
    pass


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "verify": _cmd_verify,
        "solve": _cmd_solve,
        "dynamics": _cmd_dynamics,
        "cluster": _cmd_cluster,
    }
    try:
        return handlers[args.command](args, out)
    except _UsageError as exc:
        print(f"ydilog: error: {exc}", file=sys.stderr)
        return 2
    except (SolveError, SignCoherenceError, ValueError, OSError) as exc:
        print(f"ydilog: {exc}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
