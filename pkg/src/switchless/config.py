"""Declarative sweep configuration (INI syntax).

Example::

    [sweep]
    scenario = proposed        ; proposed | conventional
    db = 4:14:0.5              ; start:stop:step (inclusive) or a comma list
    n = 5, 10, 15, 20          ; proposed only
    eta = 1.0, 0.995           ; conventional only
    format = csv               ; csv | json
    output = fig5a.csv
    seed = 0

    [prep]
    p = 0.5, 0.735, 0.945, 1.0
    n = 5, 10, 15, 20
    model = at_least_two_per_side
    target = 0.9999
"""

from __future__ import annotations

import configparser
import math
from dataclasses import asdict, dataclass
from decimal import Decimal, InvalidOperation

from .qec import MODELS


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    scenario: str
    db: tuple[float, ...]
    n: tuple[int, ...] = ()
    eta: tuple[float, ...] = ()
    format: str = "csv"
    output: str | None = None
    seed: int = 0

    def params(self) -> tuple:
        return self.n if self.scenario == "proposed" else self.eta

    def echo(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PrepConfig:
    p: tuple[float, ...]
    n: tuple[int, ...]
    model: str = "at_least_two_per_side"
    target: float = 0.9999
    format: str = "csv"
    output: str | None = None


def _floats(text: str, key: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"field '{key}': {exc}") from None
    if not vals:
        raise ConfigError(f"field '{key}': empty list")
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(f"field '{key}': values must be finite")
    return vals


def _ints(text: str, key: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"field '{key}': {exc}") from None
    if not vals:
        raise ConfigError(f"field '{key}': empty list")
    if min(vals) < 1:
        raise ConfigError(f"field '{key}': values must be >= 1")
    return vals


def parse_grid(text: str, key: str = "db") -> tuple[float, ...]:
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    if ":" not in text:
        return _floats(text, key)
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"field '{key}': range must be start:stop:step")
    try:
        start, stop, step = (Decimal(p.strip()) for p in parts)
    except InvalidOperation:
        raise ConfigError(f"field '{key}': malformed range {text!r}") from None
    if not all(v.is_finite() for v in (start, stop, step)):
        raise ConfigError(f"field '{key}': range bounds must be finite")
    if step <= 0:
        raise ConfigError(f"field '{key}': step must be > 0")
    if stop < start:
        raise ConfigError(f"field '{key}': stop must be >= start")
    # decimal arithmetic keeps 4:14:0.5 at exactly 21 points
    count = int((stop - start) / step) + 1
    return tuple(float(start + i * step) for i in range(count))


def _read(path: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None
    return cp


def _section(cp: configparser.ConfigParser, name: str, allowed: set[str]):
    if not cp.has_section(name):
        raise ConfigError(f"missing [{name}] section")
    sec = cp[name]
    unknown = set(sec) - allowed
    if unknown:
        raise ConfigError(f"[{name}]: unknown field(s) {', '.join(sorted(unknown))}")
    return sec


def _fmt(sec, name) -> str:
    fmt = sec.get("format", "csv").strip().lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"[{name}] field 'format': expected csv or json, got {fmt!r}")
    return fmt


def load_sweep(path: str) -> SweepConfig:
    cp = _read(path)
    sec = _section(cp, "sweep", {"scenario", "db", "n", "eta", "format", "output", "seed"})
    scenario = sec.get("scenario", "").strip().lower()
    if scenario not in ("proposed", "conventional"):
        raise ConfigError(f"[sweep] field 'scenario': expected proposed or conventional, got {scenario!r}")
    if "db" not in sec:
        raise ConfigError("[sweep] field 'db' is required")
    db = parse_grid(sec["db"], "db")
    n: tuple[int, ...] = ()
    eta: tuple[float, ...] = ()
    if scenario == "proposed":
        if "n" not in sec:
            raise ConfigError("[sweep] field 'n' is required for the proposed scenario")
        n = _ints(sec["n"], "n")
        if any(v < 0 for v in db):
            raise ConfigError("[sweep] field 'db': squeezing must be >= 0 dB")
    else:
        if "eta" not in sec:
            raise ConfigError("[sweep] field 'eta' is required for the conventional scenario")
        eta = _floats(sec["eta"], "eta")
        if any(not 0 < v <= 1 for v in eta):
            raise ConfigError("[sweep] field 'eta': values must lie in (0, 1]")
        if any(v <= 0 for v in db):
            raise ConfigError("[sweep] field 'db': squeezing must be > 0 dB")
    try:
        seed = int(sec.get("seed", "0"))
    except ValueError:
        raise ConfigError("[sweep] field 'seed': expected an integer") from None
    if not 0 <= seed < 2**64:
        raise ConfigError("[sweep] field 'seed': must be an unsigned 64-bit integer")
    return SweepConfig(scenario, db, n, eta, _fmt(sec, "sweep"), sec.get("output"), seed)


def load_prep(path: str) -> PrepConfig:
    cp = _read(path)
    sec = _section(cp, "prep", {"p", "n", "model", "target", "format", "output"})
    for key in ("p", "n"):
        if key not in sec:
            raise ConfigError(f"[prep] field '{key}' is required")
    p = _floats(sec["p"], "p")
    if any(not 0 <= v <= 1 for v in p):
        raise ConfigError("[prep] field 'p': values must lie in [0, 1]")
    model = sec.get("model", "at_least_two_per_side").strip()
    if model not in MODELS:
        raise ConfigError(f"[prep] field 'model': expected one of {MODELS}, got {model!r}")
    try:
        target = float(sec.get("target", "0.9999"))
    except ValueError:
        raise ConfigError("[prep] field 'target': expected a number") from None
    if not 0 < target < 1:
        raise ConfigError("[prep] field 'target': must lie in (0, 1)")
    return PrepConfig(p, _ints(sec["n"], "n"), model, target, _fmt(sec, "prep"), sec.get("output"))
