import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from cashplan.analysis import (EdgeEffect, Proper, SignFlipHack, dcf_project, edge_scan,
                               inflation_sensitivity, npv, peak_nominal_shortfall,
                               required_opening_real)
from cashplan.money import Horizon, growth_factor
from cashplan.projection import project, scenario_set
from cashplan.schedule import (AssetSchedule, Model, RecurringEvent, iter_events,
                               replace_event)

from .conftest import central, models
from .oracles import bisect_required_opening, loop_peak_shortfall, no_breach

HORIZON = Horizon(2016, 2050)


class TestRequiredOpening:
    def test_no_expenses(self):
        m = Model(HORIZON, 0, 0.02, 30_000, 8_000)
        assert required_opening_real(m, central(8_000)) == 22_000

    def test_demo_first_year_binds(self, demo):
        assert required_opening_real(demo, central(8_000)) == 22_000

    def test_nothing_at_all(self):
        m = Model(HORIZON, 0, 0.02, 30_000, 0)
        assert required_opening_real(m, central(0)) == 30_000

    def test_zero_when_already_safe(self):
        m = Model(HORIZON, 0, 0.02, 0, 1_000)
        assert required_opening_real(m, central(1_000)) == 0.0

    def test_stress_is_inflation_free(self, stress):
        model, s = stress
        for g in (-0.06, 0.0, 0.02, 0.03):
            assert required_opening_real(model.with_changes(inflation=g), s) == 116_000

    @settings(max_examples=150, deadline=None)
    @given(models())
    def test_matches_bisection(self, model):
        for s in scenario_set(model):
            assert required_opening_real(model, s) == pytest.approx(
                bisect_required_opening(model, s), abs=0.01)

    @settings(max_examples=150, deadline=None)
    @given(models())
    def test_tight(self, model):
        from cashplan.schedule import yearly_flows
        s = scenario_set(model)[1]
        x = required_opening_real(model, s)
        assert no_breach(model, s, x)
        if x > 0:
            slack = np.min(project(model, s, x).real_balance - model.safety_balance)
            assert 0 <= slack < s.annual_income + max(yearly_flows(model).max(), 0) + 1e-6
            assert not no_breach(model, s, x - 1)


class TestPeakShortfall:
    def test_demo_has_none(self, demo):
        rep = peak_nominal_shortfall(demo, central(8_000), 110_000)
        assert rep.peak_nominal_shortfall == 0 and rep.binding_year is None

    def test_stress_two_percent(self, stress):
        model, s = stress
        rep = peak_nominal_shortfall(model, s, 0)
        assert rep.binding_year == 2050
        assert rep.peak_nominal_shortfall == pytest.approx(116_000 * 1.02 ** 34, rel=1e-12)
        assert rep.peak_nominal_shortfall == pytest.approx(227_438.42, abs=0.01)

    def test_stress_three_percent(self, stress):
        model, s = stress
        two = peak_nominal_shortfall(model, s, 0).peak_nominal_shortfall
        three = peak_nominal_shortfall(model.with_changes(inflation=0.03), s, 0).peak_nominal_shortfall
        assert three == pytest.approx(316_901.01, abs=0.01)
        assert three / two == pytest.approx(1.3934, abs=1e-4)

    def test_earliest_tie_wins(self):
        m = Model(Horizon(2000, 2004), 0, 0.0, 10, 0)
        rep = peak_nominal_shortfall(m, central(0), 0)
        assert rep.binding_year == 2000
        assert rep.shortfall.tolist() == [10.0] * 5

    @settings(max_examples=150, deadline=None)
    @given(models(), st.floats(0, 20_000))
    def test_matches_loop(self, model, income):
        peak, when = loop_peak_shortfall(model, income, model.opening_balance)
        rep = peak_nominal_shortfall(model, central(income), model.opening_balance)
        assert rep.peak_nominal_shortfall == pytest.approx(peak, rel=1e-9, abs=1e-6)
        if peak > 1e-6:
            assert rep.binding_year is not None
        assert (rep.binding_year is None) == (rep.peak_nominal_shortfall == 0)

    @given(models(), st.floats(0, 50_000), st.floats(0, 5_000))
    def test_nonincreasing_in_opening_and_income(self, model, more_cash, more_income):
        base = peak_nominal_shortfall(model, central(5_000), 0).shortfall
        richer = peak_nominal_shortfall(model, central(5_000), more_cash).shortfall
        earner = peak_nominal_shortfall(model, central(5_000 + more_income), 0).shortfall
        assert (richer <= base + 1e-9).all()
        assert (earner <= base + 1e-9).all()

    @settings(max_examples=200, deadline=None)
    @given(models(), st.floats(-0.05, 0.08), st.floats(-0.05, 0.08))
    def test_fixed_binding_year_scaling(self, model, g1, g2):
        s = central(model.income_central)
        a = peak_nominal_shortfall(model.with_changes(inflation=g1), s, model.opening_balance)
        b = peak_nominal_shortfall(model.with_changes(inflation=g2), s, model.opening_balance)
        assume(a.binding_year is not None and a.binding_year == b.binding_year)
        n = a.binding_year - model.horizon.start
        assert b.peak_nominal_shortfall / a.peak_nominal_shortfall == pytest.approx(
            ((1 + g2) / (1 + g1)) ** n, rel=1e-9)

    @given(models())
    def test_removing_an_occurrence_never_hurts(self, model):
        assume(any(True for _ in iter_events(model)))
        s = central(model.income_central)
        asset, index, event = next(iter_events(model))
        later = replace_event(model, asset.name, index,
                              RecurringEvent(event.label, event.amount, event.offset_years,
                                             event.period_years + 1000))
        # period + 1000 keeps the first occurrence and drops every later one
        assert required_opening_real(later, s) <= required_opening_real(model, s) + 1e-6
        assert (peak_nominal_shortfall(later, s, 0).peak_nominal_shortfall
                <= peak_nominal_shortfall(model, s, 0).peak_nominal_shortfall + 1e-6)


class TestEdgeScan:
    def test_period_30_to_31(self, stress):
        model, s = stress
        effects = edge_scan(model, s, 0)
        hit = next(e for e in effects if e.item == "asset-one/refurbish"
                   and e.perturbation == "period 30 -> 31")
        assert hit.delta_peak_nominal == pytest.approx(-18_000 * growth_factor(0.02, 34), rel=1e-9)
        assert hit.delta_peak_nominal == pytest.approx(-35_292.17, abs=0.01)
        assert hit.delta_required_real == -18_000
        assert (hit.events_entering, hit.events_leaving) == (0, 1)
        assert abs(effects[0].delta_peak_nominal) == pytest.approx(abs(hit.delta_peak_nominal))

    def test_sorted_by_size(self, stress):
        model, s = stress
        sizes = [abs(e.delta_peak_nominal) for e in edge_scan(model, s, 0)]
        assert sizes == sorted(sizes, reverse=True)

    def test_empty_model(self):
        assert edge_scan(Model(HORIZON, 0, 0.02, 30_000, 8_000), central(8_000), 0) == []

    def test_event_beyond_horizon(self):
        m = Model(HORIZON, 0, 0.02, 30_000, 0,
                  assets=(AssetSchedule("far", (RecurringEvent("x", 9_000, 50, 10),)),))
        for e in edge_scan(m, central(0), 0):
            assert e.delta_peak_nominal == 0 and e.delta_required_real == 0
            assert e.events_entering == e.events_leaving == 0

    def test_perturbations_clamped(self):
        m = Model(HORIZON, 0, 0.02, 30_000, 0,
                  assets=(AssetSchedule("a", (RecurringEvent("x", 9_000, 0, 1),)),))
        kinds = {e.perturbation for e in edge_scan(m, central(0), 0)}
        assert kinds == {"period 1 -> 2", "offset 0 -> 1"}

    def test_width(self, stress):
        model, s = stress
        assert len(edge_scan(model, s, 0, width=2)) == 2 * len(edge_scan(model, s, 0))
        with pytest.raises(ValueError):
            edge_scan(model, s, 0, width=0)

    @settings(max_examples=80, deadline=None)
    @given(models(max_assets=3, max_events=2))
    def test_later_moves_never_raise_requirement(self, model):
        s = central(model.income_central)
        for e in edge_scan(model, s, model.opening_balance):
            if "->" in e.perturbation:
                old, new = (int(x) for x in e.perturbation.split()[1::2])
                if new > old:
                    assert e.delta_required_real <= 1e-6


class TestDiscounting:
    def test_npv_zero_rate_is_sum(self):
        flows = [(2016, 100.0), (2020, -30.0), (2040, 5.5)]
        assert npv(flows, 2016, 0.0) == pytest.approx(75.5)

    def test_npv_single_flow(self):
        assert npv([(2040, 50_000.0)], 2016, 0.06) == pytest.approx(12_348.93, abs=0.01)

    def test_npv_empty(self):
        assert npv([], 2016, 0.06) == 0.0

    def test_npv_rejects_early_year(self):
        with pytest.raises(ValueError):
            npv([(2015, 1.0)], 2016, 0.06)

    def test_factors_at_24_years(self):
        assert Proper(0.06).factor(24) == pytest.approx(0.2470, abs=1e-4)
        assert SignFlipHack(0.06).factor(24) == pytest.approx(0.2265, abs=1e-4)

    @given(st.floats(1e-6, 0.999), st.integers(1, 200))
    def test_hack_discounts_harder(self, d, n):
        assert SignFlipHack(d).factor(n) <= Proper(d).factor(n)

    @given(st.floats(0, 0.999), st.integers(0, 200))
    def test_equality_cases(self, d, n):
        if d == 0 or n == 0:
            assert SignFlipHack(d).factor(n) == Proper(d).factor(n)

    def test_proper_zero_equals_projection(self, demo):
        for s in scenario_set(demo):
            a = dcf_project(demo, s, demo.opening_balance, Proper(0.0))
            b = project(demo, s)
            assert np.array_equal(a.real_balance, b.real_balance)
            assert np.array_equal(a.breach, b.breach)

    def test_discounted_health(self, demo):
        r = dcf_project(demo, central(18_000), 110_000, Proper(0.06))
        assert r.first_breach_year is None
        assert r.balance_at(2050) == pytest.approx(357_537.52, abs=0.01)
        after_refurb = r.balance_at(2020)
        assert after_refurb == pytest.approx(
            110_000 + sum(18_000 / 1.06 ** k for k in range(5)) - 18_000 / 1.06 ** 4, rel=1e-12)
        assert after_refurb == pytest.approx(176_000, abs=500)
        assert r.real_balance.min() == 128_000  # first year, before any expense
        assert (r.nominal_safety == 30_000).all()

    def test_proper_matches_npv(self, demo):
        r = dcf_project(demo, central(18_000), 110_000, Proper(0.06))
        from cashplan.schedule import yearly_flow_table
        flows = [(y, 18_000 - x) for y, x in yearly_flow_table(demo).items()]
        assert r.balance_at(2050) == pytest.approx(110_000 + npv(flows, 2016, 0.06), rel=1e-12)

    def test_signflip_is_negative_inflation_projection(self, demo):
        s = central(18_000)
        hack = dcf_project(demo, s, 110_000, SignFlipHack(0.06))
        plain = project(demo.with_changes(inflation=-0.06), s, 110_000)
        assert np.array_equal(hack.nominal_balance, plain.nominal_balance)
        assert hack.nominal_balance[24] == pytest.approx(hack.real_balance[24] * 0.94 ** 24, rel=1e-12)

    def test_modes_validate(self):
        with pytest.raises(ValueError):
            Proper(-1.5)
        with pytest.raises(ValueError):
            SignFlipHack(1.0)
        with pytest.raises(TypeError):
            dcf_project(Model(HORIZON, 0, 0, 0, 0), central(0), 0, "proper")


def test_inflation_sensitivity(stress):
    model, s = stress
    points = inflation_sensitivity(model, [s], 0, [0.02, 0.03])
    assert [p.inflation for p in points] == [0.02, 0.03]
    assert points[0].required_opening_real == points[1].required_opening_real == 116_000
    assert points[1].peak_nominal_shortfall > points[0].peak_nominal_shortfall
    assert all(p.binding_year == 2050 for p in points)
    with pytest.raises(ValueError):
        inflation_sensitivity(model, [s], 0, [-1.0])


def test_edge_effect_is_value():
    e = EdgeEffect("a/x", "period 1 -> 2", 0.0, 0.0, 0, 0)
    assert e == EdgeEffect("a/x", "period 1 -> 2", 0.0, 0.0, 0, 0)
    assert not math.isnan(e.delta_peak_nominal)
