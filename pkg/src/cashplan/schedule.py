"""Asset maintenance schedules and their expansion into yearly expenses.

A recurring event fires ``offset_years`` after the horizon start and then
every ``period_years``. Occurrences past the horizon end are dropped
without comment; that truncation is what the edge scan in
:mod:`cashplan.analysis` probes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from .money import Horizon, check_money, check_rate, check_year


@dataclass(frozen=True)
class RecurringEvent:
    label: str
    amount: float
    offset_years: int
    period_years: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "amount", check_money(self.amount, "event amount"))
        if self.amount < 0:
            raise ValueError(f"event {self.label!r}: amount must be >= 0")
        if self.offset_years < 0:
            raise ValueError(f"event {self.label!r}: offset must be >= 0")
        if self.period_years < 1:
            raise ValueError(f"event {self.label!r}: period must be >= 1")


@dataclass(frozen=True)
class OneOffEvent:
    label: str
    amount: float
    year: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "amount", check_money(self.amount, "one-off amount"))
        if self.amount < 0:
            raise ValueError(f"one-off {self.label!r}: amount must be >= 0")
        check_year(self.year)


@dataclass(frozen=True)
class AssetSchedule:
    name: str
    events: tuple[RecurringEvent, ...] = ()
    market_value: float = 0.0

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("asset name must be non-empty")
        object.__setattr__(self, "events", tuple(self.events))
        object.__setattr__(self, "market_value", check_money(self.market_value, "market value"))
        if self.market_value < 0:
            raise ValueError(f"asset {self.name!r}: market value must be >= 0")
        labels = [e.label for e in self.events]
        if len(set(labels)) != len(labels):
            raise ValueError(f"asset {self.name!r}: duplicate event labels")


@dataclass(frozen=True)
class OptionToggle:
    """A switchable purchase, e.g. the new asset with a £40k net cost."""

    name: str
    amount: float
    year: int
    enabled: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "amount", check_money(self.amount, "option amount"))
        if self.amount < 0:
            raise ValueError(f"option {self.name!r}: amount must be >= 0")
        check_year(self.year)


@dataclass(frozen=True)
class Model:
    """Complete scenario description for one planning run."""

    horizon: Horizon
    opening_balance: float
    inflation: float
    safety_balance: float
    income_central: float
    income_low_mult: float = 0.5
    income_high_mult: float = 1.5
    assets: tuple[AssetSchedule, ...] = ()
    oneoffs: tuple[OneOffEvent, ...] = ()
    options: tuple[OptionToggle, ...] = field(default=())

    def __post_init__(self) -> None:
        for name in ("opening_balance", "safety_balance", "income_central",
                     "income_low_mult", "income_high_mult"):
            object.__setattr__(self, name, check_money(getattr(self, name), name))
        object.__setattr__(self, "inflation", check_rate(self.inflation, "inflation"))
        for name in ("assets", "oneoffs", "options"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if self.safety_balance < 0:
            raise ValueError("safety balance must be >= 0")
        if not self.income_low_mult <= 1.0 <= self.income_high_mult:
            raise ValueError("income multipliers must satisfy low <= 1 <= high")
        names = [a.name for a in self.assets]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ValueError(f"duplicate asset names: {', '.join(dupes)}")
        for o in self.oneoffs:
            if o.year not in self.horizon:
                raise ValueError(f"one-off {o.label!r} year {o.year} outside horizon")

    def with_changes(self, **changes) -> Model:
        return replace(self, **changes)

    def asset(self, name: str) -> AssetSchedule:
        for a in self.assets:
            if a.name == name:
                return a
        raise KeyError(name)

    def set_option(self, name: str, enabled: bool) -> Model:
        if name not in {o.name for o in self.options}:
            raise KeyError(name)
        options = tuple(replace(o, enabled=enabled) if o.name == name else o
                        for o in self.options)
        return replace(self, options=options)


def occurrence_count(event: RecurringEvent, horizon: Horizon) -> int:
    n = len(horizon)
    if event.offset_years >= n:
        return 0
    return (n - 1 - event.offset_years) // event.period_years + 1


def expand_event(event: RecurringEvent, horizon: Horizon) -> list[tuple[int, float]]:
    first = horizon.start + event.offset_years
    return [(year, event.amount)
            for year in range(first, horizon.end + 1, event.period_years)]


def yearly_flows(model: Model) -> np.ndarray:
    """Total base-year expense for each horizon year, as a float array.

    Index ``i`` is year ``model.horizon.start + i``.
    """
    h = model.horizon
    flows = np.zeros(len(h))
    for asset in model.assets:
        for event in asset.events:
            for year, amount in expand_event(event, h):
                flows[year - h.start] += amount
    for oneoff in model.oneoffs:
        flows[oneoff.year - h.start] += oneoff.amount
    for option in model.options:
        if option.enabled and option.year in h:
            flows[option.year - h.start] += option.amount
    return flows


def yearly_flow_table(model: Model) -> dict[int, float]:
    return dict(zip(model.horizon.years, yearly_flows(model).tolist()))


def iter_events(model: Model) -> Iterable[tuple[AssetSchedule, int, RecurringEvent]]:
    for asset in model.assets:
        for i, event in enumerate(asset.events):
            yield asset, i, event


def replace_event(model: Model, asset_name: str, index: int,
                  event: RecurringEvent) -> Model:
    assets = []
    for a in model.assets:
        if a.name == asset_name:
            events = list(a.events)
            events[index] = event
            a = replace(a, events=tuple(events))
        assets.append(a)
    return replace(model, assets=tuple(assets))
