from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from cashplan import (AssetSchedule, Horizon, Model, OneOffEvent, OptionToggle,
                      RecurringEvent, load_demo)
from cashplan.projection import IncomeLevel, IncomeScenario


@pytest.fixture
def demo() -> Model:
    return load_demo()


@pytest.fixture
def stress(demo) -> tuple[Model, IncomeScenario]:
    """Demo schedule with no income and no opening cash."""
    return demo.with_changes(opening_balance=0.0), IncomeScenario(IncomeLevel.CENTRAL, 0.0)


def central(income: float) -> IncomeScenario:
    return IncomeScenario(IncomeLevel.CENTRAL, float(income))


@st.composite
def events(draw, max_offset=70, max_period=40):
    return RecurringEvent(
        label=draw(st.sampled_from(["refurbish", "replace", "overhaul", "repaint"])),
        amount=float(draw(st.integers(0, 100_000))),
        offset_years=draw(st.integers(0, max_offset)),
        period_years=draw(st.integers(1, max_period)),
    )


@st.composite
def models(draw, max_assets=5, max_events=4, max_len=60):
    start = draw(st.integers(1990, 2030))
    length = draw(st.integers(1, max_len))
    horizon = Horizon(start, start + length - 1)
    n_assets = draw(st.integers(0, max_assets))
    assets = []
    for i in range(n_assets):
        evs = draw(st.lists(events(), max_size=max_events, unique_by=lambda e: e.label))
        assets.append(AssetSchedule(f"asset-{i}", tuple(evs),
                                    float(draw(st.integers(0, 200_000)))))
    oneoffs = [OneOffEvent(f"oneoff-{j}", float(draw(st.integers(0, 50_000))),
                           draw(st.integers(horizon.start, horizon.end)))
               for j in range(draw(st.integers(0, 3)))]
    options = [OptionToggle("new-asset", float(draw(st.integers(0, 60_000))),
                            draw(st.integers(horizon.start, horizon.end)),
                            draw(st.booleans()))]
    return Model(
        horizon=horizon,
        opening_balance=float(draw(st.integers(-50_000, 200_000))),
        inflation=draw(st.floats(-0.1, 0.1)),
        safety_balance=float(draw(st.integers(0, 60_000))),
        income_central=float(draw(st.integers(0, 25_000))),
        assets=tuple(assets), oneoffs=tuple(oneoffs), options=tuple(options),
    )


def random_model(rng: np.random.Generator, max_assets=10, max_events=4, max_len=60) -> Model:
    """Plain-RNG model generator for the large oracle sweeps."""
    start = int(rng.integers(1990, 2031))
    horizon = Horizon(start, start + int(rng.integers(1, max_len + 1)) - 1)
    assets = []
    for i in range(int(rng.integers(0, max_assets + 1))):
        evs = tuple(RecurringEvent(f"event-{k}", float(rng.integers(0, 100_001)),
                                   int(rng.integers(0, 70)), int(rng.integers(1, 41)))
                    for k in range(int(rng.integers(0, max_events + 1))))
        assets.append(AssetSchedule(f"asset-{i}", evs))
    return Model(horizon=horizon, opening_balance=0.0, inflation=float(rng.uniform(-0.05, 0.08)),
                 safety_balance=float(rng.integers(0, 60_001)),
                 income_central=float(rng.integers(0, 25_001)), assets=tuple(assets))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
