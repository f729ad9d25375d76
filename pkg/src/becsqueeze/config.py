"""Flat key=value run configuration: parsing, canonical form, hashing.

The file format is one `key = value` pair per line; blank lines and lines
starting with '#' are ignored. Laboratory inputs use laboratory units
(cm^3, nm, 2pi MHz, 2pi GHz) and are converted to SI exactly once, here.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError
from .units import LabParameters

_LAB_KEYS = ("atom_mass_kg", "n0_atoms", "volume_cm3", "a_nm",
             "rabi_2pi_mhz", "detuning_2pi_ghz")

GRID_SPACINGS = ("log", "lin")


@dataclass(frozen=True)
class RunConfig:
    """Resolved run configuration (laboratory units, as in the file)."""

    atom_mass_kg: float
    n0_atoms: float
    volume_cm3: float
    a_nm: float
    rabi_2pi_mhz: float
    detuning_2pi_ghz: float
    channel: str = "a"
    grid: tuple[float, float, int, str] = (0.1, 5.0, 25, "log")
    times_s: tuple[float, ...] | None = None
    dy_over_y: float = 0.5

    def __post_init__(self):
        for key in _LAB_KEYS:
            value = getattr(self, key)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ConfigError(f"{key} must be a positive finite number, got {value!r}")
        if self.channel not in ("a", "b"):
            raise ConfigError(f'channel must be "a" or "b", got {self.channel!r}')
        lo, hi, count, spacing = self.grid
        if spacing not in GRID_SPACINGS:
            raise ConfigError(f"grid spacing must be one of {GRID_SPACINGS}, got {spacing!r}")
        if not (isinstance(count, int) and count >= 1):
            raise ConfigError(f"grid count must be an integer >= 1, got {count!r}")
        if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo <= hi):
            raise ConfigError(f"grid bounds must satisfy 0 < min <= max, got {lo!r}, {hi!r}")
        if count == 1 and lo != hi:
            raise ConfigError("a single-point grid needs min == max")
        if self.times_s is not None:
            if not self.times_s:
                raise ConfigError("times_s, when given, must contain at least one time")
            for t in self.times_s:
                if not (math.isfinite(t) and t >= 0.0):
                    raise ConfigError(f"times must be finite and >= 0, got {t!r}")
            if any(b <= a for a, b in zip(self.times_s, self.times_s[1:])):
                raise ConfigError("times_s must be strictly ascending")
        if not (isinstance(self.dy_over_y, (int, float)) and 0 < self.dy_over_y and
                math.isfinite(self.dy_over_y) and self.dy_over_y != 1.0):
            raise ConfigError(f"dy_over_y must be positive, finite and != 1, got {self.dy_over_y!r}")


def parse_grid(text: str) -> tuple[float, float, int, str]:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"grid must be min:max:count:spacing, got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"malformed grid {text!r}: {exc}") from None
    return (lo, hi, count, parts[3].strip())


def _parse_times(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ConfigError(f"malformed time list {text!r}: {exc}") from None


def parse_config(text: str) -> RunConfig:
    """Parse configuration text; unknown or missing keys are hard errors."""
    known = {f.name for f in fields(RunConfig)}
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()

    missing = [k for k in _LAB_KEYS if k not in raw]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")

    kwargs: dict = {}
    for key, value in raw.items():
        if key in _LAB_KEYS or key == "dy_over_y":
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ConfigError(f"{key} must be a number, got {value!r}") from None
        elif key == "channel":
            kwargs[key] = value
        elif key == "grid":
            kwargs[key] = parse_grid(value)
        elif key == "times_s":
            kwargs[key] = _parse_times(value)
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None


def serialize_config(cfg: RunConfig) -> str:
    """Canonical text form; parse(serialize(cfg)) == cfg exactly.

    Floats are written with repr, which round-trips bit-exactly in Python 3.
    """
    lines = []
    for f in fields(RunConfig):
        value = getattr(cfg, f.name)
        if f.name == "grid":
            lo, hi, count, spacing = value
            text = f"{lo!r}:{hi!r}:{count}:{spacing}"
        elif f.name == "times_s":
            if value is None:
                continue
            text = ",".join(repr(t) for t in value)
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"{f.name} = {text}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(serialize_config(cfg).encode("utf-8")).hexdigest()


def with_overrides(cfg: RunConfig, grid: str | None = None,
                   times: str | None = None) -> RunConfig:
    """Apply command-line --grid / --times strings on top of a config."""
    if grid is not None:
        cfg = replace(cfg, grid=parse_grid(grid))
    if times is not None:
        cfg = replace(cfg, times_s=_parse_times(times))
    return cfg


def to_lab_parameters(cfg: RunConfig) -> LabParameters:
    """Convert laboratory units to SI."""
    return LabParameters(
        atom_mass=cfg.atom_mass_kg,
        n_condensate=cfg.n0_atoms,
        volume=cfg.volume_cm3 * 1e-6,
        scattering_length=cfg.a_nm * 1e-9,
        rabi_frequency=2.0 * math.pi * 1e6 * cfg.rabi_2pi_mhz,
        detuning=2.0 * math.pi * 1e9 * cfg.detuning_2pi_ghz,
    )


def grid_values(cfg: RunConfig) -> tuple[float, ...]:
    lo, hi, count, spacing = cfg.grid
    if count == 1:
        return (lo,)
    if spacing == "log":
        step = (math.log(hi) - math.log(lo)) / (count - 1)
        return tuple(math.exp(math.log(lo) + i * step) for i in range(count))
    step = (hi - lo) / (count - 1)
    return tuple(lo + i * step for i in range(count))
