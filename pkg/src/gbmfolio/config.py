"""Run configuration: defaults, flat key=value config files, flag overrides."""

import datetime as dt
from dataclasses import dataclass, replace

from .errors import DataError
from .evaluation import DEFAULT_HORIZONS, HorizonSpec


@dataclass(frozen=True)
class RunConfig:
    data_dir: str = "data"
    out_dir: str = "out"
    calibration_start: dt.date = dt.date(2016, 1, 1)
    calibration_end: dt.date = dt.date(2018, 12, 31)
    evaluation_start: dt.date = dt.date(2019, 1, 1)
    evaluation_end: dt.date = dt.date(2019, 12, 31)
    risk_free: float = 0.019  # per year
    n_paths: int = 1000
    n_trials: int = 100_000
    seed: int = 0
    group_count: int = 6
    group_size: int = 13
    horizons: tuple = DEFAULT_HORIZONS
    mape_denominator: str = "forecast"

    def __post_init__(self):
        if self.calibration_end >= self.evaluation_start:
            raise DataError("calibration window must end before evaluation window starts")
        if self.n_paths < 1 or self.n_trials < 1:
            raise DataError("paths and trials must be >= 1")
        if self.group_count < 1 or self.group_size < 1:
            raise DataError("group count and size must be >= 1")


def parse_horizons(text):
    """Parse "1w:5,2w:10,..." into HorizonSpec tuples."""
    specs = []
    for part in text.split(","):
        label, _, days = part.strip().partition(":")
        if not days:
            raise DataError(f"bad horizon {part!r}, expected label:days")
        specs.append(HorizonSpec(label, int(days)))
    return tuple(specs)


_PARSERS = {
    "data_dir": str,
    "out_dir": str,
    "calibration_start": dt.date.fromisoformat,
    "calibration_end": dt.date.fromisoformat,
    "evaluation_start": dt.date.fromisoformat,
    "evaluation_end": dt.date.fromisoformat,
    "risk_free": float,
    "n_paths": int,
    "n_trials": int,
    "seed": int,
    "group_count": int,
    "group_size": int,
    "horizons": parse_horizons,
    "mape_denominator": str,
}


def load_config(path):
    """Flat "key = value" file; blank lines and # comments ignored."""
    overrides = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                key, eq, value = line.partition("=")
                key = key.strip()
                if not eq or key not in _PARSERS:
                    raise DataError(f"{path}:{lineno}: bad config line {line!r}")
                overrides[key] = _PARSERS[key](value.strip())
    except OSError as exc:
        raise DataError(f"cannot read config {path}: {exc}") from exc
    return RunConfig(**overrides)


def apply_overrides(config, **kwargs):
    """New config with the non-None keyword values applied."""
    changes = {k: v for k, v in kwargs.items() if v is not None}
    return replace(config, **changes) if changes else config
