"""Historical balance-sheet checks, profit reconstruction, ROCE and cash drag."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, fields
from typing import NamedTuple

from .diagnostics import Diagnostic, Severity
from .money import annualized_growth, check_rate, growth_factor, real_rate

IDENTITY_TOLERANCE = 1000.0

# Sheet row label -> BalanceSheetYear field.
ROW_ALIASES = {
    "tangible_assets": "tangible_assets",
    "stock": "stock",
    "debtors": "debtors",
    "cash": "cash",
    "one_year": "creditors_one_year",
    "creditors_one_year": "creditors_one_year",
    "more_than_one_year": "creditors_long",
    "creditors_long": "creditors_long",
    "income_and_expenditure": "ie_reserve",
    "ie_reserve": "ie_reserve",
    "capital_reserve": "capital_reserve",
    "shareholders_funds": "shareholders_funds",
    "net_current_assets_liabilities": "reported_net_current",
    "reported_net_current": "reported_net_current",
    "total_assets": "reported_total_assets",
    "reported_total_assets": "reported_total_assets",
}

# Section heading rows carry no values and are skipped.
SECTION_ROWS = {"fixed_assets", "current_assets", "creditors", "capital_and_reserves"}


@dataclass(frozen=True)
class BalanceSheetYear:
    """One year of rounded statutory balance-sheet data; blanks are None.

    ``reported_net_current`` and ``reported_total_assets`` are the
    subtotals as printed. The net-current row is labelled
    "assets/liabilities" and is printed without sign, so it is checked by
    magnitude.
    """

    year: int
    tangible_assets: float | None = None
    stock: float | None = None
    debtors: float | None = None
    cash: float | None = None
    creditors_one_year: float | None = None
    creditors_long: float | None = None
    ie_reserve: float | None = None
    capital_reserve: float | None = None
    shareholders_funds: float | None = None
    reported_net_current: float | None = None
    reported_total_assets: float | None = None

    def value(self, name: str) -> float:
        v = getattr(self, name)
        return 0.0 if v is None else float(v)

    @property
    def net_current(self) -> float:
        return (self.value("stock") + self.value("debtors") + self.value("cash")
                - self.value("creditors_one_year"))

    @property
    def total_assets(self) -> float:
        return self.value("tangible_assets") + self.net_current

    @property
    def capital_employed(self) -> float:
        return self.value("shareholders_funds") + self.value("creditors_long")


def _identity(rule: str, year: int, what: str, left_name: str, left: float,
              right_name: str, right: float) -> Diagnostic:
    gap = left - right
    return Diagnostic(
        rule=rule, severity=Severity.ERROR, subject=str(year),
        message=(f"{year}: {what} does not balance: {left_name} £{left:,.0f} "
                 f"vs {right_name} £{right:,.0f} (gap £{gap:,.0f})"),
        citing=((left_name, left), (right_name, right), ("gap", gap)),
    )


def check_identities(sheet: BalanceSheetYear,
                     tolerance: float = IDENTITY_TOLERANCE) -> list[Diagnostic]:
    out = []
    total, employed = sheet.total_assets, sheet.capital_employed
    if abs(total - employed) > tolerance:
        out.append(_identity("B1", sheet.year, "total assets against funds plus long creditors",
                             "total_assets", total, "funds_plus_long_creditors", employed))
    if sheet.ie_reserve is not None or sheet.capital_reserve is not None:
        reserves = sheet.value("ie_reserve") + sheet.value("capital_reserve")
        funds = sheet.value("shareholders_funds")
        if abs(reserves - funds) > tolerance:
            out.append(_identity("B2", sheet.year, "reserves against shareholders' funds",
                                 "reserves", reserves, "shareholders_funds", funds))
    if sheet.reported_net_current is not None:
        derived = abs(sheet.net_current)
        if abs(derived - abs(sheet.reported_net_current)) > tolerance:
            out.append(_identity("B3", sheet.year, "net current assets subtotal",
                                 "derived_net_current", derived, "reported_net_current",
                                 abs(sheet.reported_net_current)))
    if sheet.reported_total_assets is not None:
        if abs(total - sheet.reported_total_assets) > tolerance:
            out.append(_identity("B4", sheet.year, "total assets subtotal",
                                 "derived_total_assets", total, "reported_total_assets",
                                 sheet.reported_total_assets))
    return out


def _normalise_label(label: str) -> str:
    label = label.strip().lower().replace("'", "").rstrip("*")
    return re.sub(r"[^a-z0-9]+", "_", label).strip("_")


def _amount(cell: str) -> float | None:
    cell = cell.strip().replace("£", "").replace(",", "").replace("_", "")
    return float(cell) if cell else None


def parse_sheets(text: str) -> list[BalanceSheetYear]:
    """Read a column-per-year table.

    The first row is ``field,<year>,<year>,...``; every later row starts
    with a row label. Tabs or commas separate cells, blank cells are
    absent values, ``#`` starts a comment line.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("balance-sheet table is empty")
    delimiter = "\t" if "\t" in lines[0] else ","
    rows = list(csv.reader(io.StringIO("\n".join(lines)), delimiter=delimiter))
    header = rows[0]
    try:
        years = [int(h) for h in header[1:]]
    except ValueError as exc:
        raise ValueError(f"line 1: header must list years: {exc}") from None
    columns: list[dict[str, float | None]] = [{} for _ in years]
    known = {f.name for f in fields(BalanceSheetYear)}
    for lineno, row in enumerate(rows[1:], start=2):
        label = _normalise_label(row[0])
        if label in SECTION_ROWS and not any(c.strip() for c in row[1:]):
            continue
        name = ROW_ALIASES.get(label)
        if name is None or name not in known:
            raise ValueError(f"line {lineno}: unknown row label {row[0]!r}")
        if len(row) - 1 > len(years):
            raise ValueError(f"line {lineno}: more cells than year columns")
        for i, cell in enumerate(row[1:]):
            try:
                columns[i][name] = _amount(cell)
            except ValueError:
                raise ValueError(f"line {lineno}: non-numeric cell {cell!r}") from None
    return [BalanceSheetYear(year=y, **col) for y, col in zip(years, columns)]


@dataclass(frozen=True)
class ProfitReconstruction:
    ie_movement: float
    cumulative_depreciation: float
    residual_asset_value: float
    uncapitalised_property: float
    period_years: int

    def __post_init__(self) -> None:
        if self.period_years < 1:
            raise ValueError("period_years must be >= 1")

    @property
    def total(self) -> float:
        return (self.ie_movement + self.cumulative_depreciation
                + self.residual_asset_value + self.uncapitalised_property)

    @property
    def per_annum(self) -> float:
        return self.total / self.period_years


def reconstruct_profit(ie_movement: float, cumulative_depreciation: float,
                       residual_asset_value: float, uncapitalised_property: float,
                       period_years: int) -> ProfitReconstruction:
    """Profit before depreciation over a period, adding back what the accounts hide."""
    return ProfitReconstruction(float(ie_movement), float(cumulative_depreciation),
                                float(residual_asset_value), float(uncapitalised_property),
                                int(period_years))


class Roce(NamedTuple):
    ratio: float
    nominal_annual: float
    real_annual: float


def roce(start_funds: float, end_funds_adjusted: float, years: int,
         inflation: float) -> Roce:
    if start_funds <= 0 or end_funds_adjusted <= 0:
        raise ValueError("funds must be positive")
    nominal = annualized_growth(start_funds, end_funds_adjusted, years)
    return Roce(end_funds_adjusted / start_funds, nominal, real_rate(nominal, inflation))


def cash_drag(cash: float, real_loss_rate: float, years: int) -> float:
    """Opportunity loss on idle cash: ``cash * ((1 + r) ** years - 1)``.

    The erosion reading ``cash * (1 - (1 + inflation) ** -years)`` gives a
    smaller number and is not what this returns.
    """
    check_rate(real_loss_rate, "real_loss_rate")
    return cash * (growth_factor(real_loss_rate, years) - 1.0)


def sheet_by_year(sheets: list[BalanceSheetYear], year: int) -> BalanceSheetYear:
    for s in sheets:
        if s.year == year:
            return s
    raise KeyError(year)
