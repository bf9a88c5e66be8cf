"""Line-oriented model file format.

::

    # comment
    [model]
    horizon_start = 2016
    horizon_end = 2050
    opening_balance = 110000
    inflation = 0.02
    safety_balance = 30000
    income_central = 8000
    income_low_mult = 0.5          # optional
    income_high_mult = 1.5         # optional

    [asset "asset-one"]
    market_value = 150000          # optional
    event "refurbish" amount=18000 offset=4 period=30

    [oneoff "roof"]
    amount = 5000
    year = 2018

    [option "new-asset"]
    amount = 40000
    year = 2016
    enabled = false

Unknown sections and keys are errors. Every error carries the line
number and the offending token.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from .money import Horizon
from .schedule import AssetSchedule, Model, OneOffEvent, OptionToggle, RecurringEvent

MODEL_REQUIRED = ("horizon_start", "horizon_end", "opening_balance", "inflation",
                  "safety_balance", "income_central")
MODEL_OPTIONAL = ("income_low_mult", "income_high_mult")
SECTION_KEYS = {
    "model": set(MODEL_REQUIRED + MODEL_OPTIONAL),
    "asset": {"market_value"},
    "oneoff": {"amount", "year"},
    "option": {"amount", "year", "enabled"},
}
EVENT_KEYS = ("amount", "offset", "period")

_HEADER = re.compile(r'^\[\s*([A-Za-z_]+)\s*(?:"([^"]*)")?\s*\]$')
_KEYVALUE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_EVENT = re.compile(r'^event\s+"([^"]*)"\s*(.*)$')
_ATTR = re.compile(r"([A-Za-z_]+)=(\S+)")


class ModelFileError(ValueError):
    def __init__(self, line: int, token: str, message: str):
        self.line = line
        self.token = token
        super().__init__(f"line {line}: {message} (at {token!r})")


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _number(text: str, line: int) -> float:
    try:
        return float(int(text))
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise ModelFileError(line, text, "not a number") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ModelFileError(line, text, "not a finite number")
    return value


def _integer(text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ModelFileError(line, text, "not an integer") from None


def _boolean(text: str, line: int) -> bool:
    if text.lower() in ("true", "yes", "1"):
        return True
    if text.lower() in ("false", "no", "0"):
        return False
    raise ModelFileError(line, text, "not a boolean")


class _Section:
    def __init__(self, kind: str, name: str | None, line: int):
        self.kind, self.name, self.line = kind, name, line
        self.values: dict[str, tuple[str, int]] = {}
        self.events: list[tuple[str, dict[str, str], int]] = []


def _split_sections(text: str) -> list[_Section]:
    sections: list[_Section] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            kind, name = m.group(1), m.group(2)
            if kind not in SECTION_KEYS:
                raise ModelFileError(lineno, kind, "unknown section")
            if kind == "model" and name is not None:
                raise ModelFileError(lineno, name, "[model] takes no name")
            if kind != "model" and not name:
                raise ModelFileError(lineno, line, f"[{kind}] needs a quoted name")
            sections.append(_Section(kind, name, lineno))
            continue
        if not sections:
            raise ModelFileError(lineno, line.split()[0], "content before any section")
        sec = sections[-1]
        m = _EVENT.match(line)
        if m:
            if sec.kind != "asset":
                raise ModelFileError(lineno, "event", f"event line inside [{sec.kind}]")
            rest = m.group(2)
            attrs = dict(_ATTR.findall(rest))
            leftover = _ATTR.sub("", rest).strip()
            if leftover:
                raise ModelFileError(lineno, leftover.split()[0], "malformed event attribute")
            for key in attrs:
                if key not in EVENT_KEYS:
                    raise ModelFileError(lineno, key, "unknown event key")
            for key in EVENT_KEYS:
                if key not in attrs:
                    raise ModelFileError(lineno, m.group(1), f"event missing {key}=")
            sec.events.append((m.group(1), attrs, lineno))
            continue
        m = _KEYVALUE.match(line)
        if not m:
            raise ModelFileError(lineno, line.split()[0], "expected key = value")
        key, value = m.group(1), m.group(2).strip()
        if key not in SECTION_KEYS[sec.kind]:
            raise ModelFileError(lineno, key, f"unknown key in [{sec.kind}]")
        if key in sec.values:
            raise ModelFileError(lineno, key, "duplicate key")
        if not value:
            raise ModelFileError(lineno, key, "missing value")
        sec.values[key] = (value, lineno)
    return sections


def _require(sec: _Section, key: str) -> tuple[str, int]:
    if key not in sec.values:
        raise ModelFileError(sec.line, key, f"[{sec.kind}] missing {key}")
    return sec.values[key]


def parse_model_file(text: str) -> Model:
    sections = _split_sections(text)
    model_secs = [s for s in sections if s.kind == "model"]
    if not model_secs:
        raise ModelFileError(1, "[model]", "no [model] section")
    if len(model_secs) > 1:
        raise ModelFileError(model_secs[1].line, "[model]", "duplicate [model] section")
    ms = model_secs[0]

    def num(key: str) -> float:
        return _number(*_require(ms, key))

    try:
        horizon = Horizon(_integer(*_require(ms, "horizon_start")),
                          _integer(*_require(ms, "horizon_end")))
    except ModelFileError:
        raise
    except ValueError as exc:
        raise ModelFileError(ms.line, "horizon", str(exc)) from None

    assets, oneoffs, options = [], [], []
    seen: dict[tuple[str, str], int] = {}
    for sec in sections:
        if sec.kind == "model":
            continue
        if (sec.kind, sec.name) in seen:
            raise ModelFileError(sec.line, sec.name,
                                 f"duplicate {sec.kind} name (first at line {seen[sec.kind, sec.name]})")
        seen[sec.kind, sec.name] = sec.line
        try:
            if sec.kind == "asset":
                events = []
                labels: set[str] = set()
                for label, attrs, line in sec.events:
                    if label in labels:
                        raise ModelFileError(line, label, "duplicate event label")
                    labels.add(label)
                    try:
                        events.append(RecurringEvent(label, _number(attrs["amount"], line),
                                                     _integer(attrs["offset"], line),
                                                     _integer(attrs["period"], line)))
                    except ModelFileError:
                        raise
                    except ValueError as exc:
                        raise ModelFileError(line, label, str(exc)) from None
                mv = _number(*sec.values["market_value"]) if "market_value" in sec.values else 0.0
                assets.append(AssetSchedule(sec.name, tuple(events), mv))
            elif sec.kind == "oneoff":
                year_text, year_line = _require(sec, "year")
                year = _integer(year_text, year_line)
                if year not in horizon:
                    raise ModelFileError(year_line, year_text,
                                         f"one-off year outside horizon {horizon.start}-{horizon.end}")
                oneoffs.append(OneOffEvent(sec.name, _number(*_require(sec, "amount")), year))
            else:
                enabled = _boolean(*sec.values["enabled"]) if "enabled" in sec.values else False
                options.append(OptionToggle(sec.name, _number(*_require(sec, "amount")),
                                            _integer(*_require(sec, "year")), enabled))
        except ModelFileError:
            raise
        except ValueError as exc:
            raise ModelFileError(sec.line, sec.name, str(exc)) from None

    kwargs = {k: num(k) for k in MODEL_OPTIONAL if k in ms.values}
    try:
        return Model(horizon=horizon, opening_balance=num("opening_balance"),
                     inflation=num("inflation"), safety_balance=num("safety_balance"),
                     income_central=num("income_central"), assets=tuple(assets),
                     oneoffs=tuple(oneoffs), options=tuple(options), **kwargs)
    except ValueError as exc:
        if isinstance(exc, ModelFileError):
            raise
        raise ModelFileError(ms.line, "[model]", str(exc)) from None


def _fmt(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def serialize_model(model: Model) -> str:
    h = model.horizon
    lines = [
        "[model]",
        f"horizon_start = {h.start}",
        f"horizon_end = {h.end}",
        f"opening_balance = {_fmt(model.opening_balance)}",
        f"inflation = {model.inflation!r}",
        f"safety_balance = {_fmt(model.safety_balance)}",
        f"income_central = {_fmt(model.income_central)}",
        f"income_low_mult = {model.income_low_mult!r}",
        f"income_high_mult = {model.income_high_mult!r}",
    ]
    for a in model.assets:
        lines += ["", f'[asset "{a.name}"]', f"market_value = {_fmt(a.market_value)}"]
        lines += [f'event "{e.label}" amount={_fmt(e.amount)} offset={e.offset_years} '
                  f"period={e.period_years}" for e in a.events]
    for o in model.oneoffs:
        lines += ["", f'[oneoff "{o.label}"]', f"amount = {_fmt(o.amount)}", f"year = {o.year}"]
    for t in model.options:
        lines += ["", f'[option "{t.name}"]', f"amount = {_fmt(t.amount)}", f"year = {t.year}",
                  f"enabled = {'true' if t.enabled else 'false'}"]
    return "\n".join(lines) + "\n"


def load_model(path: str | Path) -> Model:
    return parse_model_file(Path(path).read_text(encoding="utf-8"))


def demo_path(name: str = "club.model") -> Path:
    return Path(str(resources.files("cashplan") / "demo" / name))


def load_demo() -> Model:
    return load_model(demo_path())
