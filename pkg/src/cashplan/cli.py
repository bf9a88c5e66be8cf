"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error, 2 check failure,
3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import report
from .analysis import (Proper, SignFlipHack, dcf_project, edge_scan,
                       inflation_sensitivity, peak_nominal_shortfall,
                       required_opening_real)
from .audit import FLEXIBILITY_NOTE, audit_model, has_errors
from .history import (check_identities, cash_drag, parse_sheets, reconstruct_profit,
                      roce, sheet_by_year)
from .modelfile import ModelFileError, demo_path, load_model
from .projection import project, scenario_set

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_model_args(p, income_default="all"):
    p.add_argument("--model", type=Path, default=None,
                   help="model file (default: bundled demo)")
    levels = ["low", "central", "high"] + (["all"] if income_default == "all" else [])
    p.add_argument("--income", choices=levels, default=income_default)
    p.add_argument("--income-override", type=float, default=None, metavar="N",
                   help="replace the central income before scenarios are derived")
    p.add_argument("--format", choices=["csv", "text"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cashplan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("project", help="yearly real and nominal balances")
    _add_model_args(p)
    p.add_argument("--opening", type=float, default=None, metavar="N")
    p.add_argument("--check", action="store_true", help="exit 2 on any breach")

    p = sub.add_parser("solve", help="required opening cash per scenario")
    _add_model_args(p)

    p = sub.add_parser("shortfall", help="peak nominal shortfall")
    _add_model_args(p)
    p.add_argument("--opening", type=float, default=None, metavar="N")

    p = sub.add_parser("edge-scan", help="shift each recurring event by +-1 year")
    _add_model_args(p, income_default="central")
    p.add_argument("--opening", type=float, default=None, metavar="N")
    p.add_argument("--width", type=int, default=1, help="scan +-1..width years")

    p = sub.add_parser("sensitivity", help="inflation sensitivity grid")
    _add_model_args(p)
    p.add_argument("--opening", type=float, default=None, metavar="N")
    p.add_argument("--inflation-grid", type=_floats, default=[0.02, 0.03], metavar="A,B,...")

    p = sub.add_parser("dcf", help="discounted balance track")
    _add_model_args(p)
    p.add_argument("--opening", type=float, default=None, metavar="N")
    p.add_argument("--discount", type=float, default=0.06)
    p.add_argument("--mode", choices=["proper", "signflip"], default="proper")
    p.add_argument("--check", action="store_true", help="exit 2 on any breach")

    p = sub.add_parser("history", help="balance-sheet checks, ROCE and cash drag")
    p.add_argument("--sheets", type=Path, default=None,
                   help="balance-sheet table (default: bundled table)")
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--ie-movement", type=float, default=25_000)
    p.add_argument("--depreciation", type=float, default=126_000)
    p.add_argument("--residual", type=float, default=150_000)
    p.add_argument("--uncapitalised", type=float, default=60_000)
    p.add_argument("--period", type=int, default=20)
    p.add_argument("--roce-from", type=int, default=1996)
    p.add_argument("--roce-to", type=int, default=2016)
    p.add_argument("--inflation", type=float, default=0.02)
    p.add_argument("--cash", type=float, default=133_000)
    p.add_argument("--loss-rate", type=float, default=0.028)
    p.add_argument("--drag-years", type=int, default=15)
    p.add_argument("--check", action="store_true",
                   help="exit 2 if any balance-sheet identity fails")

    p = sub.add_parser("audit", help="review diagnostics")
    p.add_argument("--model", type=Path, default=None)
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--historical-per-annum", type=float, default=None, metavar="N")
    p.add_argument("--strict", action="store_true", help="exit 2 on any Error diagnostic")
    return parser


def _model(args):
    path = args.model or demo_path()
    try:
        model = load_model(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except ModelFileError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if getattr(args, "income_override", None) is not None:
        try:
            model = replace(model, income_central=args.income_override)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return model


def _scenarios(model, which):
    scenarios = scenario_set(model)
    if which == "all":
        return list(scenarios)
    return [s for s in scenarios if s.level.value == which]


def _opening(args, model):
    return model.opening_balance if args.opening is None else args.opening


def cmd_project(args, out):
    model = _model(args)
    results = [project(model, s, args.opening) for s in _scenarios(model, args.income)]
    out.write(report.emit_report(results, args.format, kind="projection"))
    if args.check and any(r.first_breach_year is not None for r in results):
        return EXIT_CHECK
    return EXIT_OK


def cmd_solve(args, out):
    model = _model(args)
    rows = [(s.label, s.annual_income, required_opening_real(model, s))
            for s in _scenarios(model, args.income)]
    out.write(report.emit_report(rows, args.format, kind="solve"))
    return EXIT_OK


def cmd_shortfall(args, out):
    model = _model(args)
    opening = _opening(args, model)
    reports = [(s.label, peak_nominal_shortfall(model, s, opening))
               for s in _scenarios(model, args.income)]
    out.write(report.emit_report(reports, args.format, kind="shortfall"))
    return EXIT_OK


def cmd_edge_scan(args, out):
    model = _model(args)
    if args.width < 1:
        raise UsageError("--width must be >= 1")
    opening = _opening(args, model)
    effects = []
    for s in _scenarios(model, args.income):
        effects.extend(edge_scan(model, s, opening, args.width))
    out.write(report.emit_report(effects, args.format, kind="edge"))
    return EXIT_OK


def cmd_sensitivity(args, out):
    model = _model(args)
    try:
        points = inflation_sensitivity(model, _scenarios(model, args.income),
                                       _opening(args, model), args.inflation_grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(report.emit_report(points, args.format, kind="sensitivity"))
    return EXIT_OK


def cmd_dcf(args, out):
    model = _model(args)
    try:
        mode = Proper(args.discount) if args.mode == "proper" else SignFlipHack(args.discount)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    opening = _opening(args, model)
    results = [dcf_project(model, s, opening, mode) for s in _scenarios(model, args.income)]
    out.write(report.emit_report(results, args.format, kind="projection"))
    if args.check and any(r.first_breach_year is not None for r in results):
        return EXIT_CHECK
    return EXIT_OK


def cmd_history(args, out):
    path = args.sheets or demo_path("balance_sheets.sheets")
    try:
        sheets = parse_sheets(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    entries = []
    diagnostics = []
    for sheet in sheets:
        found = check_identities(sheet)
        diagnostics.extend(found)
        entries.append(("identities", str(sheet.year), "ok" if not found else
                        "; ".join(d.message for d in found)))
    try:
        profit = reconstruct_profit(args.ie_movement, args.depreciation, args.residual,
                                    args.uncapitalised, args.period)
        start = sheet_by_year(sheets, args.roce_from).value("shareholders_funds")
        end = (sheet_by_year(sheets, args.roce_to).value("shareholders_funds")
               + args.uncapitalised + args.residual)
        r = roce(start, end, args.roce_to - args.roce_from, args.inflation)
        drag = cash_drag(args.cash, args.loss_rate, args.drag_years)
    except KeyError as exc:
        raise UsageError(f"no balance sheet for year {exc.args[0]}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    entries += [
        ("profit", "ie_movement", str(round(profit.ie_movement))),
        ("profit", "cumulative_depreciation", str(round(profit.cumulative_depreciation))),
        ("profit", "residual_asset_value", str(round(profit.residual_asset_value))),
        ("profit", "uncapitalised_property", str(round(profit.uncapitalised_property))),
        ("profit", "total", str(round(profit.total))),
        ("profit", "per_annum", str(round(profit.per_annum))),
        ("roce", "start_funds", str(round(start))),
        ("roce", "end_funds_adjusted", str(round(end))),
        ("roce", "ratio", f"{r.ratio:.6f}"),
        ("roce", "nominal_annual", f"{r.nominal_annual:.6f}"),
        ("roce", "real_annual", f"{r.real_annual:.6f}"),
        ("cash_drag", "loss", str(round(drag))),
    ]
    out.write(report.emit_report(entries, args.format, kind="keyvalue"))
    if args.check and diagnostics:
        return EXIT_CHECK
    return EXIT_OK


def cmd_audit(args, out):
    model = _model(args)
    diagnostics = audit_model(model, args.historical_per_annum)
    text = report.emit_report(diagnostics, args.format, kind="diagnostics")
    if args.format == "text":
        text += FLEXIBILITY_NOTE + "\n"
    out.write(text)
    if args.strict and has_errors(diagnostics):
        return EXIT_CHECK
    return EXIT_OK


COMMANDS = {
    "project": cmd_project,
    "solve": cmd_solve,
    "shortfall": cmd_shortfall,
    "edge-scan": cmd_edge_scan,
    "sensitivity": cmd_sensitivity,
    "dcf": cmd_dcf,
    "history": cmd_history,
    "audit": cmd_audit,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cashplan: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"cashplan: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
