from __future__ import annotations

import enum
from dataclasses import dataclass


class Severity(enum.Enum):
    WARNING = "Warning"
    ERROR = "Error"


@dataclass(frozen=True)
class Diagnostic:
    """One finding. ``citing`` holds ``(name, value)`` pairs in a fixed order."""

    rule: str
    severity: Severity
    message: str
    subject: str = ""
    citing: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "citing",
                           tuple((str(k), float(v)) for k, v in self.citing))

    def cited(self, name: str) -> float:
        return dict(self.citing)[name]

    @property
    def sort_key(self) -> tuple:
        head = self.rule[:1]
        num = int(self.rule[1:]) if self.rule[1:].isdigit() else 0
        return (head, num, self.subject)
