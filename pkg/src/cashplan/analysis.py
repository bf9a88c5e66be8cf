"""Test-script analytics over a projection.

Two "cash required" measures are provided:

``required_opening_real``
    The least opening balance that keeps the base-year balance at or
    above the safety level in every year. Inflation cannot move it.

``peak_nominal_shortfall``
    The worst single-year gap between the inflated safety row and the
    inflated balance row. This one grows with the inflation rate and with
    the size of a late expense, and it is the measure whose response to a
    period change of 30 -> 31 years on an £18k event at 2% is
    ``18000 * 1.02 ** 34`` (about £35.3k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union

import numpy as np

from .money import check_rate, discount_factor, growth_factor
from .projection import (IncomeScenario, ProjectionResult, _build,
                         cumulative_net, project)
from .schedule import (Model, RecurringEvent, iter_events, occurrence_count,
                       replace_event, yearly_flows)


@dataclass(frozen=True)
class Proper:
    """Conventional discounting, factor ``(1 + discount) ** -n``."""

    discount: float

    def __post_init__(self) -> None:
        check_rate(self.discount, "discount")

    def factor(self, years: int) -> float:
        return discount_factor(self.discount, years)


@dataclass(frozen=True)
class SignFlipHack:
    """A discount rate typed into the inflation cell as ``-rate``.

    The factor is ``(1 - rate) ** n``, which discounts harder than
    :class:`Proper` for any positive rate.
    """

    rate: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.rate) or not -1.0 < -self.rate:
            raise ValueError(f"rate must be finite and < 1, got {self.rate!r}")

    def factor(self, years: int) -> float:
        return growth_factor(-self.rate, years)


DiscountMode = Union[Proper, SignFlipHack]


@dataclass(frozen=True, eq=False)
class ShortfallReport:
    peak_nominal_shortfall: float
    binding_year: int | None
    start: int
    shortfall: np.ndarray

    @property
    def years(self) -> np.ndarray:
        return self.start + np.arange(len(self.shortfall))


@dataclass(frozen=True)
class EdgeEffect:
    item: str
    perturbation: str
    delta_required_real: float
    delta_peak_nominal: float
    events_entering: int
    events_leaving: int


@dataclass(frozen=True)
class SensitivityPoint:
    inflation: float
    scenario: IncomeScenario
    required_opening_real: float
    peak_nominal_shortfall: float
    binding_year: int | None


def required_opening_real(model: Model, scenario: IncomeScenario) -> float:
    """Least opening balance with no breach anywhere on the real track."""
    low = float(np.min(cumulative_net(model, scenario)))
    safety = model.safety_balance
    need = safety - low
    if need <= 0:
        return 0.0
    # safety - low + low can land one ulp under safety
    while need + low < safety:
        need = math.nextafter(need, math.inf)
    return need


def shortfall_report(result: ProjectionResult) -> ShortfallReport:
    gap = np.maximum(0.0, result.nominal_safety - result.nominal_balance)
    if gap.size == 0 or gap.max() <= 0:
        return ShortfallReport(0.0, None, result.start, gap)
    i = int(np.argmax(gap))  # first maximum wins
    return ShortfallReport(float(gap[i]), result.start + i, result.start, gap)


def peak_nominal_shortfall(model: Model, scenario: IncomeScenario,
                           opening: float) -> ShortfallReport:
    return shortfall_report(project(model, scenario, opening))


def _perturbations(event: RecurringEvent, width: int):
    for step in range(1, width + 1):
        for sign in (-1, +1):
            period = event.period_years + sign * step
            if period >= 1:
                yield (f"period {event.period_years} -> {period}",
                       replace(event, period_years=period))
        for sign in (-1, +1):
            offset = event.offset_years + sign * step
            if offset >= 0:
                yield (f"offset {event.offset_years} -> {offset}",
                       replace(event, offset_years=offset))


def edge_scan(model: Model, scenario: IncomeScenario, opening: float,
              width: int = 1) -> list[EdgeEffect]:
    """Shift every recurring event's period and offset by up to ``width`` years.

    Results are ordered by the size of the peak-shortfall change, largest
    first; equal sizes keep scan order.
    """
    if width < 1:
        raise ValueError("width must be >= 1")
    base_req = required_opening_real(model, scenario)
    base_peak = peak_nominal_shortfall(model, scenario, opening).peak_nominal_shortfall
    effects = []
    for asset, index, event in iter_events(model):
        base_count = occurrence_count(event, model.horizon)
        for description, moved in _perturbations(event, width):
            variant = replace_event(model, asset.name, index, moved)
            count = occurrence_count(moved, model.horizon)
            effects.append(EdgeEffect(
                item=f"{asset.name}/{event.label}",
                perturbation=description,
                delta_required_real=required_opening_real(variant, scenario) - base_req,
                delta_peak_nominal=(peak_nominal_shortfall(variant, scenario, opening)
                                    .peak_nominal_shortfall - base_peak),
                events_entering=max(0, count - base_count),
                events_leaving=max(0, base_count - count),
            ))
    effects.sort(key=lambda e: -abs(e.delta_peak_nominal))
    return effects


def inflation_sensitivity(model: Model, scenarios: Iterable[IncomeScenario],
                          opening: float, inflations: Sequence[float]) -> list[SensitivityPoint]:
    points = []
    for g in inflations:
        variant = replace(model, inflation=check_rate(g, "inflation"))
        for s in scenarios:
            report = peak_nominal_shortfall(variant, s, opening)
            points.append(SensitivityPoint(g, s, required_opening_real(variant, s),
                                           report.peak_nominal_shortfall,
                                           report.binding_year))
    return points


def npv(flows: Iterable[tuple[int, float]], base_year: int, discount: float) -> float:
    check_rate(discount, "discount")
    total = 0.0
    for year, amount in flows:
        if year < base_year:
            raise ValueError(f"flow year {year} before base year {base_year}")
        total += amount * discount_factor(discount, year - base_year)
    return total


def dcf_project(model: Model, scenario: IncomeScenario, opening: float,
                mode: DiscountMode) -> ProjectionResult:
    """Discounted balance track.

    ``Proper`` accumulates each year's net flow times ``(1 + d) ** -n`` on
    top of the opening balance and compares against the undiscounted
    safety level; the result carries inflation 0 so both rows coincide.
    ``SignFlipHack`` is the ordinary projection run with inflation set to
    ``-rate``, read off its nominal row.
    """
    if isinstance(mode, SignFlipHack):
        return project(replace(model, inflation=-mode.rate), scenario, opening)
    if not isinstance(mode, Proper):
        raise TypeError(f"unknown discount mode {mode!r}")
    n = len(model.horizon)
    net = scenario.annual_income - yearly_flows(model)
    factors = np.array([mode.factor(k) for k in range(n)])
    real = float(opening) + np.cumsum(net * factors)
    return _build(scenario, model, real, 0.0)
