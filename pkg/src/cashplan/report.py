"""CSV and text rendering of analysis results.

CSV output is byte-stable: fixed column order, ``\\n`` line endings,
money as whole pounds rounded half away from zero. Diagnostic citing
values are written with ``repr`` so they read back exactly.
"""

from __future__ import annotations

import csv
import enum
import io
from typing import Sequence

from .analysis import EdgeEffect, SensitivityPoint, ShortfallReport
from .diagnostics import Diagnostic, Severity
from .money import round_pounds
from .projection import IncomeLevel, ProjectionResult

PROJECTION_HEADER = ["year", "scenario", "real_balance", "nominal_balance",
                     "nominal_safety", "breach"]
SHORTFALL_HEADER = ["year", "scenario", "nominal_shortfall", "binding"]
SOLVE_HEADER = ["scenario", "annual_income", "required_opening_real"]
EDGE_HEADER = ["item", "perturbation", "delta_required_real", "delta_peak_nominal",
               "events_entering", "events_leaving"]
SENSITIVITY_HEADER = ["inflation", "scenario", "required_opening_real",
                      "peak_nominal_shortfall", "binding_year"]
DIAGNOSTIC_HEADER = ["rule", "severity", "subject", "message", "citing"]
KEYVALUE_HEADER = ["section", "key", "value"]

_ORDER = {IncomeLevel.LOW: 0, IncomeLevel.CENTRAL: 1, IncomeLevel.HIGH: 2}


class ReportFormat(enum.Enum):
    CSV = "csv"
    TEXT = "text"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _bool(b: bool) -> str:
    return "true" if b else "false"


def _year(y: int | None) -> str:
    return "" if y is None else str(y)


def _whole(n: int) -> str:
    return f"-£{-n:,}" if n < 0 else f"£{n:,}"


def _pounds(x: float) -> str:
    return _whole(round_pounds(x))


def _table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def projection_rows(results: Sequence[ProjectionResult]) -> list[list]:
    ordered = sorted(results, key=lambda r: _ORDER[r.scenario.level])
    rows = []
    if not ordered:
        return rows
    by_year = {}
    for res in ordered:
        for rec in res.records():
            by_year.setdefault(rec.year, []).append(
                [rec.year, res.scenario.label, round_pounds(rec.real_balance),
                 round_pounds(rec.nominal_balance), round_pounds(rec.nominal_safety),
                 _bool(rec.breach)])
    for year in sorted(by_year):
        rows.extend(by_year[year])
    return rows


def projection_csv(results: Sequence[ProjectionResult]) -> str:
    return _csv(PROJECTION_HEADER, projection_rows(results))


def projection_text(results: Sequence[ProjectionResult]) -> str:
    rows = [[str(r[0]), r[1], _whole(r[2]), _whole(r[3]), _whole(r[4]),
             "BREACH" if r[5] == "true" else ""] for r in projection_rows(results)]
    out = _table(PROJECTION_HEADER, rows)
    for res in sorted(results, key=lambda r: _ORDER[r.scenario.level]):
        fb = res.first_breach_year
        out += (f"{res.scenario.label}: first breach {fb}\n" if fb is not None
                else f"{res.scenario.label}: no breach\n")
    return out


def shortfall_csv(reports: Sequence[tuple[str, ShortfallReport]]) -> str:
    rows = []
    for label, rep in reports:
        for year, gap in zip(rep.years.tolist(), rep.shortfall.tolist()):
            rows.append([year, label, round_pounds(gap), _bool(year == rep.binding_year)])
    rows.sort(key=lambda r: r[0])  # stable: scenario order kept within a year
    return _csv(SHORTFALL_HEADER, rows)


def shortfall_text(reports: Sequence[tuple[str, ShortfallReport]]) -> str:
    lines = []
    for label, rep in reports:
        if rep.binding_year is None:
            lines.append(f"{label}: no nominal shortfall in any year")
        else:
            lines.append(f"{label}: peak nominal shortfall {_pounds(rep.peak_nominal_shortfall)} "
                         f"in {rep.binding_year}")
    return "\n".join(lines) + "\n"


def solve_rows(solutions: Sequence[tuple[str, float, float]]) -> list[list]:
    return [[label, round_pounds(income), round_pounds(need)] for label, income, need in solutions]


def solve_csv(solutions: Sequence[tuple[str, float, float]]) -> str:
    return _csv(SOLVE_HEADER, solve_rows(solutions))


def solve_text(solutions: Sequence[tuple[str, float, float]]) -> str:
    return "".join(f"{label} (income {_pounds(income)} pa): required opening cash "
                   f"{_pounds(need)}\n" for label, income, need in solutions)


def edge_csv(effects: Sequence[EdgeEffect]) -> str:
    return _csv(EDGE_HEADER, [[e.item, e.perturbation, round_pounds(e.delta_required_real),
                               round_pounds(e.delta_peak_nominal), e.events_entering,
                               e.events_leaving] for e in effects])


def edge_text(effects: Sequence[EdgeEffect]) -> str:
    rows = [[e.item, e.perturbation, _pounds(e.delta_required_real),
             _pounds(e.delta_peak_nominal), str(e.events_entering), str(e.events_leaving)]
            for e in effects]
    return _table(EDGE_HEADER, rows)


def sensitivity_csv(points: Sequence[SensitivityPoint]) -> str:
    return _csv(SENSITIVITY_HEADER, [[repr(p.inflation), p.scenario.label,
                                      round_pounds(p.required_opening_real),
                                      round_pounds(p.peak_nominal_shortfall),
                                      _year(p.binding_year)] for p in points])


def sensitivity_text(points: Sequence[SensitivityPoint]) -> str:
    rows = [[f"{p.inflation:.2%}", p.scenario.label, _pounds(p.required_opening_real),
             _pounds(p.peak_nominal_shortfall), _year(p.binding_year)] for p in points]
    return _table(SENSITIVITY_HEADER, rows)


def _citing(d: Diagnostic) -> str:
    return ";".join(f"{k}={v!r}" for k, v in d.citing)


def diagnostics_csv(diagnostics: Sequence[Diagnostic]) -> str:
    return _csv(DIAGNOSTIC_HEADER, [[d.rule, d.severity.value, d.subject, d.message, _citing(d)]
                                    for d in diagnostics])


def diagnostics_text(diagnostics: Sequence[Diagnostic]) -> str:
    return "".join(f"{d.rule} {d.severity.value}: {d.message}\n" for d in diagnostics)


def parse_diagnostics_csv(text: str) -> list[Diagnostic]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != DIAGNOSTIC_HEADER:
        raise ValueError("not a diagnostics CSV")
    out = []
    for rule, severity, subject, message, citing in rows[1:]:
        pairs = []
        for part in filter(None, citing.split(";")):
            key, _, value = part.partition("=")
            pairs.append((key, float(value)))
        out.append(Diagnostic(rule, Severity(severity), message, subject, tuple(pairs)))
    return out


def keyvalue_csv(entries: Sequence[tuple[str, str, str]]) -> str:
    return _csv(KEYVALUE_HEADER, [list(e) for e in entries])


def keyvalue_text(entries: Sequence[tuple[str, str, str]]) -> str:
    lines, section = [], None
    for sec, key, value in entries:
        if sec != section:
            lines.append(f"[{sec}]")
            section = sec
        lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


_EMITTERS = {
    "projection": (projection_csv, projection_text),
    "shortfall": (shortfall_csv, shortfall_text),
    "solve": (solve_csv, solve_text),
    "edge": (edge_csv, edge_text),
    "sensitivity": (sensitivity_csv, sensitivity_text),
    "diagnostics": (diagnostics_csv, diagnostics_text),
    "keyvalue": (keyvalue_csv, keyvalue_text),
}


def _infer_kind(items: Sequence) -> str:
    first = items[0]
    if isinstance(first, ProjectionResult):
        return "projection"
    if isinstance(first, EdgeEffect):
        return "edge"
    if isinstance(first, SensitivityPoint):
        return "sensitivity"
    if isinstance(first, Diagnostic):
        return "diagnostics"
    if isinstance(first, tuple) and len(first) == 2 and isinstance(first[1], ShortfallReport):
        return "shortfall"
    raise TypeError(f"cannot infer report kind for {type(first).__name__}")


def emit_report(items, fmt: ReportFormat | str = ReportFormat.CSV,
                kind: str | None = None) -> str:
    """Render a result list as CSV or text.

    A lone :class:`ProjectionResult` is accepted as a one-element list.
    ``kind`` must be given for an empty list or for solve/keyvalue rows.
    """
    fmt = ReportFormat(fmt)
    if isinstance(items, ProjectionResult):
        items = [items]
    if kind is None:
        if not items:
            raise ValueError("kind is required for an empty report")
        kind = _infer_kind(items)
    csv_fn, text_fn = _EMITTERS[kind]
    return csv_fn(items) if fmt is ReportFormat.CSV else text_fn(items)
