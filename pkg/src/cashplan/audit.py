"""Machine-checkable review rules for a :class:`~cashplan.schedule.Model`.

==== ========= ======================================================
Rule Severity  Fires when
==== ========= ======================================================
R1   Warning   inflation is negative (a discount rate typed in as
               negative inflation)
R2   Warning   moving a recurring event by one year shifts a cash
               requirement by at least max(£10k, 5% of its base value)
R3   Warning   an asset has a market value the model never realises
R4   Error     historical profit per annum and central income differ
               by a factor of two or more, either way
R5   Warning   inflation below 2.5%
==== ========= ======================================================

R2 measures each asset's schedule on its own: income and opening cash
are set to zero and the other assets are left out, so the probe asks how
much cash that asset's expenses alone demand and how much of it hangs on
where the horizon ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .analysis import Proper, SignFlipHack, edge_scan, peak_nominal_shortfall, required_opening_real
from .diagnostics import Diagnostic, Severity
from .projection import IncomeLevel, IncomeScenario
from .schedule import Model

FLEXIBILITY_NOTE = (
    "note: the schedule treats every capital action as fixed. Whether work could be "
    "deferred or skipped, and whether an earlier sale or upgrade would do better, "
    "is outside what these rules can see."
)


@dataclass(frozen=True)
class AuditConfig:
    edge_floor: float = 10_000.0
    edge_fraction: float = 0.05
    divergence_factor: float = 2.0
    inflation_floor: float = 0.025
    edge_width: int = 1


def _r1(model: Model) -> list[Diagnostic]:
    if model.inflation >= 0:
        return []
    rate = -model.inflation
    n = len(model.horizon) - 1
    hack, proper = SignFlipHack(rate).factor(n), Proper(rate).factor(n)
    return [Diagnostic(
        "R1", Severity.WARNING,
        f"inflation {model.inflation:.4g} is negative: the inflated row is being used as a "
        f"discounted row with factor (1-{rate:.4g})^n, not (1+{rate:.4g})^-n; after {n} years "
        f"that is {hack:.4f} against {proper:.4f}",
        citing=(("inflation", model.inflation), ("hack_factor", hack),
                ("proper_factor", proper)),
    )]


def _r2(model: Model, config: AuditConfig) -> list[Diagnostic]:
    # each asset is probed alone so adding assets never hides a finding
    probe = IncomeScenario(IncomeLevel.CENTRAL, 0.0)
    out = []
    for asset in model.assets:
        solo = replace(model, assets=(asset,))
        base_req = required_opening_real(solo, probe)
        base_peak = peak_nominal_shortfall(solo, probe, 0.0).peak_nominal_shortfall
        req_bar = max(config.edge_floor, config.edge_fraction * base_req)
        peak_bar = max(config.edge_floor, config.edge_fraction * base_peak)
        effects = edge_scan(solo, probe, 0.0, config.edge_width)
        for event in asset.events:
            item = f"{asset.name}/{event.label}"
            hits = [e for e in effects if e.item == item and (
                abs(e.delta_peak_nominal) >= peak_bar or abs(e.delta_required_real) >= req_bar)]
            if not hits:
                continue
            worst = max(hits, key=lambda e: (abs(e.delta_peak_nominal), abs(e.delta_required_real)))
            out.append(Diagnostic(
                "R2", Severity.WARNING,
                f"{item}: {worst.perturbation} moves the peak nominal shortfall by "
                f"{_signed(worst.delta_peak_nominal)} and the required opening cash by "
                f"{_signed(worst.delta_required_real)}; the result depends on where the "
                f"horizon ends",
                subject=asset.name,
                citing=(("delta_peak_nominal", worst.delta_peak_nominal),
                        ("delta_required_real", worst.delta_required_real),
                        ("base_peak_nominal", base_peak), ("base_required_real", base_req)),
            ))
    return out


def _signed(x: float) -> str:
    return f"-£{-x:,.0f}" if x < 0 else f"£{x:,.0f}"


def _r3(model: Model) -> list[Diagnostic]:
    return [Diagnostic(
        "R3", Severity.WARNING,
        f"{a.name}: market value £{a.market_value:,.0f} never enters the cash flow "
        f"as sale proceeds",
        subject=a.name, citing=(("market_value", a.market_value),),
    ) for a in model.assets if a.market_value > 0]


def _r4(model: Model, historical: float | None, config: AuditConfig) -> list[Diagnostic]:
    if historical is None:
        return []
    central = model.income_central
    if central == historical:
        return []
    if central <= 0 or historical <= 0:
        ratio = math.inf
    else:
        ratio = historical / central
    if max(ratio, 1.0 / ratio) < config.divergence_factor:
        return []
    return [Diagnostic(
        "R4", Severity.ERROR,
        f"central income £{central:,.0f} differs from the historical £{historical:,.0f} "
        f"per annum by a factor of {max(ratio, 1.0 / ratio):.2f}",
        citing=(("income_central", central), ("historical_per_annum", historical),
                ("ratio", ratio)),
    )]


def _r5(model: Model, config: AuditConfig) -> list[Diagnostic]:
    if model.inflation >= config.inflation_floor:
        return []
    return [Diagnostic(
        "R5", Severity.WARNING,
        f"inflation {model.inflation:.4g} is below {config.inflation_floor:.4g}; nominal "
        f"figures may be understated",
        citing=(("inflation", model.inflation), ("floor", config.inflation_floor)),
    )]


def audit_model(model: Model, historical_per_annum: float | None = None,
                config: AuditConfig | None = None) -> list[Diagnostic]:
    config = config or AuditConfig()
    found = (_r1(model) + _r2(model, config) + _r3(model)
             + _r4(model, historical_per_annum, config) + _r5(model, config))
    return sorted(found, key=lambda d: d.sort_key)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)
