import csv
import io
from pathlib import Path

import pytest

from cashplan.analysis import EdgeEffect, peak_nominal_shortfall
from cashplan.diagnostics import Diagnostic, Severity
from cashplan.projection import project, project_all, scenario_set
from cashplan.report import (EDGE_HEADER, PROJECTION_HEADER, emit_report,
                             parse_diagnostics_csv)

from .conftest import central

GOLDEN = Path(__file__).parent / "golden"


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_projection_schema_and_order(demo):
    out = emit_report(project_all(demo), "csv")
    table = rows(out)
    assert table[0] == PROJECTION_HEADER
    body = table[1:]
    assert len(body) == 3 * 35
    assert [r[1] for r in body[:3]] == ["Low", "Central", "High"]
    years = [int(r[0]) for r in body]
    assert years == sorted(years)
    assert out.endswith("\n") and "\r" not in out


def test_demo_central_csv(demo):
    table = rows(emit_report(project(demo, scenario_set(demo)[1]), "csv"))[1:]
    assert len(table) == 35
    assert table[0][0] == "2016" and table[-1][0] == "2050"
    assert all(r[5] == "false" for r in table)
    assert table[-1][2] == "304000"
    assert table[-1][3] == str(round(304_000 * 1.02 ** 34))


def test_projection_golden(demo):
    assert emit_report(project_all(demo), "csv") == (GOLDEN / "demo_projection.csv").read_text()


def test_amounts_rounded_half_away(demo):
    r = project(demo.with_changes(opening_balance=0.5, safety_balance=0), central(0))
    table = rows(emit_report(r, "csv"))
    assert table[1][2] == "1"
    r = project(demo.with_changes(opening_balance=-0.5, safety_balance=0), central(0))
    assert rows(emit_report(r, "csv"))[1][2] == "-1"


def test_empty_edge_list_is_header_only():
    assert emit_report([], "csv", kind="edge") == ",".join(EDGE_HEADER) + "\n"
    with pytest.raises(ValueError):
        emit_report([], "csv")


def test_edge_csv():
    e = EdgeEffect("asset-one/refurbish", "period 30 -> 31", -18_000.0, -35_292.17, 0, 1)
    assert rows(emit_report([e], "csv"))[1] == [
        "asset-one/refurbish", "period 30 -> 31", "-18000", "-35292", "0", "1"]


def test_diagnostics_text_lines():
    diags = [Diagnostic("R1", Severity.WARNING, "first"), Diagnostic("R4", Severity.ERROR, "second")]
    assert emit_report(diags, "text") == "R1 Warning: first\nR4 Error: second\n"


def test_diagnostics_round_trip():
    d = Diagnostic("R2", Severity.WARNING, 'has "quotes", commas; and semis', "asset, one",
                   (("delta", -35_292.168576396), ("tiny", 1e-300), ("ratio", 2.25625)))
    assert parse_diagnostics_csv(emit_report([d], "csv")) == [d]


def test_shortfall_csv(stress):
    model, s = stress
    out = emit_report([("Central", peak_nominal_shortfall(model, s, 0))], "csv")
    table = rows(out)
    assert table[0] == ["year", "scenario", "nominal_shortfall", "binding"]
    assert [r for r in table[1:] if r[3] == "true"] == [["2050", "Central", "227438", "true"]]


def test_text_formats_render(demo, stress):
    model, s = stress
    assert "no breach" in emit_report(project_all(demo), "text")
    assert "2050" in emit_report([("Central", peak_nominal_shortfall(model, s, 0))], "text")


def test_kind_inference_rejects_unknown():
    with pytest.raises(TypeError):
        emit_report([object()], "csv")
