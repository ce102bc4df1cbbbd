"""Command-line front end: generate / solve / bench / list.

`generate` samples an analytic catalog solution on a chosen discretization
and prints the gnuplot-compatible ASCII document. `solve` runs the
reference finite-volume solver on the case's published initial and boundary
conditions and prints the same format plus a residual trailer. `bench`
compares a solver run (or a user-supplied field file) against the analytic
solution and reports error norms; its exit status reflects the case's
acceptance band.
"""

from __future__ import annotations

import argparse
import sys

from . import ascii_io, bench as bench_mod, catalog
from .core import DomainError, Grid1D
from .solver import SolverError

USAGE_EXIT = 2
FAILURE_EXIT = 1


def _add_address(parser: argparse.ArgumentParser):
    parser.add_argument("dim", type=int, choices=(1, 2), help="space dimension")
    parser.add_argument("type", choices=catalog.KINDS, help="solution family")
    parser.add_argument("number", type=int, help="case number within the family")
    parser.add_argument("--cells", type=int, required=True, help="number of cells (x direction)")
    parser.add_argument("--cells-y", type=int, default=None,
                        help="cells along y for 2D cases (default: proportional)")
    parser.add_argument("--t", type=float, default=None,
                        help="output time for transitory cases (default: the case's T)")
    parser.add_argument("--friction", choices=("manning", "darcy"), default=None,
                        help="friction-law variant where the case offers both")
    parser.add_argument("--fine-factor", type=int, default=None,
                        help="internal refinement for synthesized topographies (default 5)")
    parser.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                        help="override a case parameter (stamps the output NONSTANDARD)")


def _add_solver_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--order", type=int, choices=(1, 2), default=2)
    parser.add_argument("--cfl", type=float, default=0.4)
    parser.add_argument("--tend", type=float, default=None,
                        help="final time (default: the case's published value)")
    parser.add_argument("--steady-tol", type=float, default=1e-10,
                        help="steady-state residual threshold (0 disables early stop)")


def _parse_overrides(pairs: list[str]) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise DomainError(f"--override expects KEY=VALUE, got {pair!r}")
        key, value = pair.split("=", 1)
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise DomainError(f"--override value for {key!r} must be numeric") from None
    return out


def _collect_overrides(args) -> tuple[dict, bool]:
    overrides = _parse_overrides(args.override)
    nonstandard = bool(overrides)
    if args.friction is not None:
        overrides["friction"] = args.friction
    if args.fine_factor is not None:
        overrides["fine_factor"] = args.fine_factor
    return overrides, nonstandard


def _resolve(args) -> catalog.Entry:
    return catalog.resolve(args.dim, args.type, args.number)


def _check_time_flag(entry: catalog.Entry, args):
    if args.t is not None and not entry.transient:
        raise DomainError(f"case {entry.label} is steady; --t does not apply")
    if args.t is not None and not (0.0 <= args.t <= entry.default_time):
        raise DomainError(
            f"case {entry.label} accepts t in [0, {entry.default_time:g}], got {args.t:g}")


def _render_bundle(entry, bundle, args, nonstandard, trailer=None) -> str:
    if entry.dim == 1:
        return ascii_io.write_field_1d(
            bundle.field, entry.label, bundle.params, compat=args.compat,
            nonstandard=nonstandard, froude=bundle.froude, h_crit=bundle.h_crit,
            trailer=trailer)
    return ascii_io.write_field_2d(bundle.field, entry.label, bundle.params,
                                   nonstandard=nonstandard)


def _cmd_generate(args) -> int:
    entry = _resolve(args)
    _check_time_flag(entry, args)
    overrides, nonstandard = _collect_overrides(args)
    bundle = catalog.build_field(entry, args.cells, args.cells_y, args.t, overrides)
    sys.stdout.write(_render_bundle(entry, bundle, args, nonstandard))
    return 0


def _scenario_for(entry: catalog.Entry, args, overrides: dict) -> catalog.Scenario:
    if entry.dim != 1 or entry.make_scenario is None:
        raise DomainError(
            f"case {entry.label} has no reference-solver scenario "
            "(the embedded solver is 1D and has no diffusion term)\n"
            + catalog.listing())
    law = overrides.pop("friction", None)
    return entry.make_scenario(args.cells, law, overrides)


def _run_solver(entry, args, overrides) -> tuple[catalog.Scenario, "catalog.SolverResult"]:
    scenario = _scenario_for(entry, args, overrides)
    steady_tol = None if args.steady_tol == 0 else args.steady_tol
    result = catalog.run_scenario(scenario, order=args.order, cfl=args.cfl,
                                  t_end=args.tend, steady_tol=steady_tol)
    return scenario, result


def _residual_trailer(result) -> list[str]:
    lines = []
    res = result.residuals
    stride = max(1, len(res) // 200)
    for i in range(0, len(res), stride):
        t, r = res[i]
        lines.append(f"# residual {t:.9g} {r:.9g}")
    if res and (len(res) - 1) % stride != 0:
        t, r = res[-1]
        lines.append(f"# residual {t:.9g} {r:.9g}")
    lines.append(f"# steady: {'reached' if result.reached_steady else 'not-reached'}"
                 f" after {result.n_steps} steps, t = {result.t:.9g}")
    return lines


def _cmd_solve(args) -> int:
    entry = _resolve(args)
    overrides, nonstandard = _collect_overrides(args)
    try:
        scenario, result = _run_solver(entry, args, overrides)
    except SolverError as exc:
        print(f"solver failed: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    params = {"order": args.order, "cfl": args.cfl, "t_final": result.t}
    doc = ascii_io.write_field_1d(result.field, entry.label + " [solver]", params,
                                  compat=args.compat, nonstandard=nonstandard,
                                  trailer=_residual_trailer(result))
    sys.stdout.write(doc)
    return 0


def _cmd_bench(args) -> int:
    entry = _resolve(args)
    _check_time_flag(entry, args)
    overrides, nonstandard = _collect_overrides(args)
    if entry.dim != 1:
        raise DomainError("bench compares 1D fields; 2D cases are generate-only")

    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as fh:
            parsed = ascii_io.parse_field(fh.read())
        grid = Grid1D(catalog._domain_length(entry), args.cells)
        numeric = ascii_io.parsed_to_field(parsed, grid)
        t_compare = args.t if args.t is not None else catalog.transient_default_time(entry)
        reference = catalog.build_field(entry, args.cells, None, t_compare,
                                        dict(overrides)).field
    else:
        try:
            scenario, result = _run_solver(entry, args, dict(overrides))
        except SolverError as exc:
            print(f"solver failed: {exc}", file=sys.stderr)
            return FAILURE_EXIT
        numeric = result.field
        t_compare = result.t
        reference = catalog.build_field(entry, args.cells, None,
                                        t_compare if entry.transient else None,
                                        dict(overrides)).field

    report = bench_mod.compare(numeric, reference)
    rows = [
        ("metric", "h", "q"),
        ("L1", report.l1_h, report.l1_q),
        ("L2", report.l2_h, report.l2_q),
        ("Linf", report.linf_h, report.linf_q),
    ]
    for row in rows:
        print("\t".join(str(v) for v in row))
    print(f"max_rel_percent={report.max_rel_percent:.6g}")
    print(f"x_max_error={report.x_max_error:.6g}")
    print(f"n_wet={report.n_wet}")
    print(f"n_excluded={report.n_excluded}")
    print(f"spurious_wet={report.spurious_wet}")
    print(f"missed_wet={report.missed_wet}")

    if entry.band is None:
        print("band_pass=not-defined")
        return 0
    t_band = t_compare if entry.transient else 0.0
    outcome = catalog.check_band(entry.band, numeric, reference, t_band or 0.0)
    for key in sorted(outcome.metrics):
        print(f"{key}={outcome.metrics[key]:.9g}")
    print(f"band_pass={'true' if outcome.passed else 'false'}")
    for msg in outcome.messages:
        print(f"# band: {msg}")
    return 0 if outcome.passed else FAILURE_EXIT


def _cmd_list(_args) -> int:
    print(catalog.listing())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swbench",
        description="Analytic shallow-water benchmark catalog with a reference "
                    "1D finite-volume solver and an error harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="sample an analytic solution")
    _add_address(p_gen)
    p_gen.add_argument("--compat", action="store_true",
                       help="restrict 1D columns to x h u z")
    p_gen.set_defaults(func=_cmd_generate)

    p_solve = sub.add_parser("solve", help="run the reference solver on a case")
    _add_address(p_solve)
    _add_solver_flags(p_solve)
    p_solve.add_argument("--compat", action="store_true")
    p_solve.set_defaults(func=_cmd_solve)

    p_bench = sub.add_parser("bench", help="compare a field against the catalog")
    _add_address(p_bench)
    _add_solver_flags(p_bench)
    group = p_bench.add_mutually_exclusive_group(required=True)
    group.add_argument("--self", dest="self_run", action="store_true",
                       help="run the embedded solver and compare")
    group.add_argument("--input", default=None, metavar="FILE",
                       help="compare a field file on the documented format")
    p_bench.set_defaults(func=_cmd_bench)

    p_list = sub.add_parser("list", help="print the case catalog")
    p_list.set_defaults(func=_cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except catalog.UnknownCaseError as exc:
        print(str(exc), file=sys.stderr)
        return USAGE_EXIT
    except (DomainError, ascii_io.FieldParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE_EXIT


if __name__ == "__main__":
    sys.exit(main())
