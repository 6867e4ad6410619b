"""Solver configuration.

Natural units throughout: hbar = c = m = 1. Lengths (the ring radius a, r) are
in electron reduced Compton wavelengths, energies in units of the rest mass.
"""

import os
from dataclasses import dataclass, field, fields, replace

WORKERS_ENV = "ZGKN_WORKERS"


def workers_from_env(default=1):
    """Worker count for scans, read from $ZGKN_WORKERS."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{WORKERS_ENV} must be at least 1, got {value}")
    return value


@dataclass(frozen=True)
class Tolerances:
    ode_rel: float = 1e-10
    ode_abs: float = 1e-12
    lambda_tol: float = 1e-9
    energy_tol: float = 1e-11
    tail_tol: float = 1e-8
    epsilon: float = 1e-6

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not value > 0:
                raise ValueError(f"tolerance {f.name} must be positive, got {value}")
        if self.epsilon >= 1e-3:
            raise ValueError(f"epsilon must lie in (0, 1e-3), got {self.epsilon}")

    def halved(self):
        """Copy with both ODE tolerances halved."""
        return replace(self, ode_rel=self.ode_rel / 2, ode_abs=self.ode_abs / 2)


@dataclass(frozen=True)
class BracketConfig:
    """Search window for the angular eigenvalue.

    The walk starts at `center` (exact_k of the matching a=0 state when None)
    and moves in steps of `step` up to `half_width` away; on failure both are
    multiplied by `growth`, at most `max_widenings` times.
    """

    center: float = None
    half_width: float = 2.0
    step: float = 0.25
    growth: float = 2.0
    max_widenings: int = 8

    def __post_init__(self):
        if self.half_width <= 0 or self.step <= 0:
            raise ValueError("bracket half_width and step must be positive")
        if self.growth <= 1:
            raise ValueError("bracket growth must exceed 1")
        if self.max_widenings < 0:
            raise ValueError("max_widenings must be non-negative")

    def centered(self, center):
        return replace(self, center=center)


@dataclass(frozen=True)
class ScanConfig:
    """Energy scan: `points` values log-spaced in 1 - E."""

    points: int = 64
    one_minus_e_min: float = 1e-6
    one_minus_e_max: float = 0.5
    workers: int = field(default_factory=workers_from_env)

    def __post_init__(self):
        if self.points < 2:
            raise ValueError(f"scan needs at least 2 points, got {self.points}")
        if not 0 < self.one_minus_e_min < self.one_minus_e_max < 1:
            raise ValueError("scan range must satisfy 0 < min < max < 1 in 1 - E")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class SolverConfig:
    tolerances: Tolerances = field(default_factory=Tolerances)
    bracket: BracketConfig = field(default_factory=BracketConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)

    @classmethod
    def from_mapping(cls, values):
        """Build from a flat mapping such as parsed CLI flags or a JSON config.

        Keys are matched against the field names of the three parts; unknown
        keys and None values are ignored.
        """
        def pick(kind):
            names = {f.name for f in fields(kind)}
            return {k: v for k, v in values.items() if k in names and v is not None}

        return cls(
            tolerances=Tolerances(**pick(Tolerances)),
            bracket=BracketConfig(**pick(BracketConfig)),
            scan=ScanConfig(**pick(ScanConfig)),
        )

    def as_dict(self):
        return {
            "tolerances": {f.name: getattr(self.tolerances, f.name) for f in fields(Tolerances)},
            "scan": {f.name: getattr(self.scan, f.name) for f in fields(ScanConfig)},
        }
