"""Annual cash-flow projection.

Income and expense are booked once per year, the first year included.
Balances are carried in base-year money; the nominal row and the safety
row are both the base-year figures inflated by the same factor, so a
breach looks the same on either row.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .money import MoneyConvention, growth_factor
from .schedule import Model, yearly_flows


class IncomeLevel(enum.Enum):
    LOW = "low"
    CENTRAL = "central"
    HIGH = "high"


@dataclass(frozen=True)
class IncomeScenario:
    level: IncomeLevel
    annual_income: float

    @property
    def label(self) -> str:
        return self.level.name.capitalize()


class YearRecord(NamedTuple):
    year: int
    real_balance: float
    nominal_balance: float
    nominal_safety: float
    breach: bool


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """Per-year balance tracks for one income scenario.

    ``nominal_balance`` and ``nominal_safety`` are the real track and the
    safety level scaled by ``(1 + inflation) ** (year - start)``.
    """

    scenario: IncomeScenario
    start: int
    inflation: float
    safety_balance: float
    real_balance: np.ndarray
    nominal_balance: np.ndarray
    nominal_safety: np.ndarray
    breach: np.ndarray

    real_convention = MoneyConvention.BASE_YEAR_REAL
    nominal_convention = MoneyConvention.NOMINAL

    @property
    def years(self) -> np.ndarray:
        return self.start + np.arange(len(self.real_balance))

    @property
    def first_breach_year(self) -> int | None:
        hits = np.flatnonzero(self.breach)
        return int(self.start + hits[0]) if hits.size else None

    def records(self) -> Iterator[YearRecord]:
        for i in range(len(self.real_balance)):
            yield YearRecord(self.start + i, float(self.real_balance[i]),
                             float(self.nominal_balance[i]),
                             float(self.nominal_safety[i]), bool(self.breach[i]))

    def balance_at(self, year: int) -> float:
        return float(self.real_balance[year - self.start])


def scenario_set(model: Model) -> tuple[IncomeScenario, IncomeScenario, IncomeScenario]:
    c = model.income_central
    return (IncomeScenario(IncomeLevel.LOW, c * model.income_low_mult),
            IncomeScenario(IncomeLevel.CENTRAL, c),
            IncomeScenario(IncomeLevel.HIGH, c * model.income_high_mult))


def scenario(model: Model, level: IncomeLevel | str) -> IncomeScenario:
    level = IncomeLevel(level)
    return next(s for s in scenario_set(model) if s.level is level)


def inflation_factors(rate: float, n: int) -> np.ndarray:
    return np.array([growth_factor(rate, k) for k in range(n)])


def cumulative_net(model: Model, income: IncomeScenario) -> np.ndarray:
    """Running total of ``income - expense`` through each year."""
    return np.cumsum(income.annual_income - yearly_flows(model))


def _build(scenario_: IncomeScenario, model: Model, real: np.ndarray,
           inflation: float) -> ProjectionResult:
    factors = inflation_factors(inflation, len(real))
    return ProjectionResult(
        scenario=scenario_,
        start=model.horizon.start,
        inflation=inflation,
        safety_balance=model.safety_balance,
        real_balance=real,
        nominal_balance=real * factors,
        nominal_safety=model.safety_balance * factors,
        breach=real < model.safety_balance,
    )


def project(model: Model, scenario: IncomeScenario,
            opening_override: float | None = None) -> ProjectionResult:
    opening = model.opening_balance if opening_override is None else float(opening_override)
    real = opening + cumulative_net(model, scenario)
    return _build(scenario, model, real, model.inflation)


def project_all(model: Model, opening_override: float | None = None) -> list[ProjectionResult]:
    return [project(model, s, opening_override) for s in scenario_set(model)]
