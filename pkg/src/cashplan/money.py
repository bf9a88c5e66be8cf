"""Money, year and rate conventions.

Amounts are plain ``float`` pounds. They are never rounded internally;
:func:`round_pounds` is the single presentation rounding rule
(half away from zero, whole pounds).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

MIN_YEAR = 1900
MAX_YEAR = 2200


class MoneyConvention(enum.Enum):
    """Label carried by every reported money series."""

    BASE_YEAR_REAL = "base_year_real"
    NOMINAL = "nominal"


def check_money(amount: float, name: str = "amount") -> float:
    amount = float(amount)
    if not math.isfinite(amount):
        raise ValueError(f"{name} must be finite, got {amount!r}")
    return amount


def check_rate(rate: float, name: str = "rate") -> float:
    rate = float(rate)
    if not math.isfinite(rate) or rate <= -1.0:
        raise ValueError(f"{name} must be finite and > -1, got {rate!r}")
    return rate


def check_year(year: int, name: str = "year") -> int:
    if isinstance(year, bool) or int(year) != year:
        raise ValueError(f"{name} must be an integer, got {year!r}")
    year = int(year)
    if not MIN_YEAR <= year <= MAX_YEAR:
        raise ValueError(f"{name} {year} outside [{MIN_YEAR}, {MAX_YEAR}]")
    return year


@dataclass(frozen=True)
class Horizon:
    """Inclusive span of calendar years."""

    start: int
    end: int

    def __post_init__(self) -> None:
        check_year(self.start, "horizon start")
        check_year(self.end, "horizon end")
        if self.start > self.end:
            raise ValueError(f"horizon start {self.start} after end {self.end}")

    def __len__(self) -> int:
        return self.end - self.start + 1

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.start <= year <= self.end

    @property
    def years(self) -> range:
        return range(self.start, self.end + 1)


def round_pounds(amount: float) -> int:
    """Whole pounds, half away from zero."""
    check_money(amount)
    return int(Decimal(amount).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def growth_factor(rate: float, years: int) -> float:
    """Compound growth factor ``(1 + rate) ** years``.

    Discounting uses :func:`discount_factor`, not a negative ``years``.
    """
    check_rate(rate)
    if years < 0:
        raise ValueError(f"years must be >= 0, got {years}")
    return (1.0 + rate) ** years


def discount_factor(rate: float, years: int) -> float:
    """Present-value factor ``(1 + rate) ** -years``."""
    return 1.0 / growth_factor(rate, years)


def real_rate(nominal: float, inflation: float) -> float:
    """Fisher conversion: ``(1 + real) = (1 + nominal) / (1 + inflation)``."""
    check_rate(nominal, "nominal")
    check_rate(inflation, "inflation")
    return (1.0 + nominal) / (1.0 + inflation) - 1.0


def nominal_rate(real: float, inflation: float) -> float:
    """Inverse of :func:`real_rate`."""
    check_rate(real, "real")
    check_rate(inflation, "inflation")
    return (1.0 + real) * (1.0 + inflation) - 1.0


def annualized_growth(start: float, end: float, years: int) -> float:
    """Compound annual rate taking ``start`` to ``end`` over ``years``."""
    if start <= 0 or end <= 0:
        raise ValueError("start and end must both be positive")
    if years < 1:
        raise ValueError(f"years must be >= 1, got {years}")
    return (end / start) ** (1.0 / years) - 1.0
