"""Adaptive integration of scalar angle equations with a continuous lift.

All shooting in the package goes through `integrate_lifted`: an embedded
Dormand-Prince 5(4) pair with PI step-size control. The dependent variable is
the lifted angle itself (never reduced mod 2pi), and accepted steps are capped
so the lift moves by less than `max_angle_step`, which keeps consecutive nodes
on one branch. Dense output is a cubic Hermite spline through the accepted
nodes.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline

from .errors import (
    DomainBoundary,
    MaxStepsExceeded,
    NonFiniteField,
    NotNearTarget,
    StepSizeUnderflow,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Dormand-Prince 5(4) tableau, Hairer, Norsett & Wanner (1993), p. 178
C2, C3, C4, C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
A21 = 1.0 / 5.0
A31, A32 = 3.0 / 40.0, 9.0 / 40.0
A41, A42, A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
A51, A52, A53, A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
A61, A62, A63, A64, A65 = (
    9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0,
)
B1, B3, B4, B5, B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# fifth-order weights minus the embedded fourth-order ones
E1, E3, E4, E5, E6, E7 = (
    71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0,
)

SAFETY = 0.9
PI_ALPHA = 0.7 / 5.0
PI_BETA = 0.4 / 5.0
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


@dataclass(frozen=True)
class AngleField:
    """Right-hand side of a scalar angle equation on a closed interval."""

    rhs: Callable[[float, float], float]
    lower: float
    upper: float
    name: str = "field"

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"empty domain [{self.lower}, {self.upper}] for {self.name}")

    def __call__(self, t, y):
        return self.rhs(t, y)

    def contains(self, t):
        return self.lower <= t <= self.upper

    def periodicity_defect(self, ts, ys):
        """Largest |rhs(t, y + 2pi) - rhs(t, y)| over the sample pairs."""
        return max(abs(self.rhs(t, y + TWO_PI) - self.rhs(t, y)) for t in ts for y in ys)


@dataclass(frozen=True, eq=False)
class LiftedTrajectory:
    """Accepted nodes of an integration, stored in increasing t.

    `forward` records the direction the curve was integrated in, so `initial`
    and `final` refer to the integration start and end.
    """

    t: np.ndarray
    lift: np.ndarray
    slope: np.ndarray
    rel_tol: float
    abs_tol: float
    forward: bool = True

    def __post_init__(self):
        if len(self.t) < 2:
            raise ValueError("a trajectory needs at least two nodes")
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("trajectory nodes must be strictly increasing in t")

    @property
    def start_t(self):
        return float(self.t[0] if self.forward else self.t[-1])

    @property
    def end_t(self):
        return float(self.t[-1] if self.forward else self.t[0])

    @property
    def initial(self):
        return float(self.lift[0] if self.forward else self.lift[-1])

    @property
    def final(self):
        return float(self.lift[-1] if self.forward else self.lift[0])

    @property
    def delta(self):
        return self.final - self.initial

    @cached_property
    def interpolant(self):
        return CubicHermiteSpline(self.t, self.lift, self.slope, extrapolate=False)

    def __call__(self, t):
        return self.interpolant(t)

    def __len__(self):
        return len(self.t)

    def nodes(self):
        return list(zip(self.t.tolist(), self.lift.tolist()))

    def is_continuous(self):
        return bool(np.all(np.abs(np.diff(self.lift)) < math.pi))

    def shifted(self, offset):
        return LiftedTrajectory(
            self.t, self.lift + offset, self.slope, self.rel_tol, self.abs_tol, self.forward
        )

    def window(self, lo, hi):
        """Nodes with lo <= t <= hi, as (t, lift) arrays."""
        mask = (self.t >= lo) & (self.t <= hi)
        return self.t[mask], self.lift[mask]

    @classmethod
    def stitch(cls, left, right):
        """Join a piece ending at the match point with one starting there.

        The match node of `right` is dropped; the result is treated as a
        forward curve from left's first node to right's last.
        """
        keep = right.t > left.t[-1]
        return cls(
            np.concatenate([left.t, right.t[keep]]),
            np.concatenate([left.lift, right.lift[keep]]),
            np.concatenate([left.slope, right.slope[keep]]),
            max(left.rel_tol, right.rel_tol),
            max(left.abs_tol, right.abs_tol),
            True,
        )


def _evaluate(field, t, y):
    value = field.rhs(t, y)
    if not math.isfinite(value):
        raise NonFiniteField(t, y, value)
    return value


def _initial_step(field, t0, y0, f0, direction, span, rel_tol, abs_tol):
    scale = abs_tol + abs(y0) * rel_tol
    d0 = abs(y0) / scale
    d1 = abs(f0) / scale
    if d0 < 1e-5 or d1 < 1e-5:
        h0 = 1e-6
    else:
        h0 = 0.01 * d0 / d1
    h0 = min(h0, span)
    f1 = _evaluate(field, t0 + direction * h0, y0 + direction * h0 * f0)
    d2 = abs(f1 - f0) / scale / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100.0 * h0, h1, span)


def integrate_lifted(field, t0, t1, y0, rel_tol, abs_tol, max_angle_step=math.pi / 4,
                     max_steps=1_000_000, first_step=None):
    """Integrate `field` from (t0, y0) to t1 and return the lifted trajectory.

    t1 may lie on either side of t0. The integration fails with
    StepSizeUnderflow when the controller asks for a step below
    1e-14 * |t1 - t0| and with NonFiniteField when the right-hand side stops
    being finite.
    """
    if not (rel_tol > 0 and abs_tol > 0):
        raise ValueError("tolerances must be positive")
    span = abs(t1 - t0)
    if span == 0:
        raise ValueError("integration interval is empty")
    if not (field.contains(t0) and field.contains(t1)):
        raise DomainBoundary(
            f"[{min(t0, t1)}, {max(t0, t1)}] leaves the domain "
            f"[{field.lower}, {field.upper}] of {field.name}"
        )

    direction = 1.0 if t1 > t0 else -1.0
    h_min = 1e-14 * span

    t, y = float(t0), float(y0)
    f = _evaluate(field, t, y)
    if first_step is not None:
        h = min(abs(first_step), span)
    else:
        h = _initial_step(field, t, y, f, direction, span, rel_tol, abs_tol)

    ts, ys, fs = [t], [y], [f]
    err_prev = 1e-4
    rejected = False
    steps = 0
    rejections = 0

    while direction * (t1 - t) > 0:
        if steps >= max_steps:
            raise MaxStepsExceeded(f"{field.name}: {max_steps} steps taken without reaching t={t1}")
        remaining = abs(t1 - t)
        last = h >= remaining
        if last:
            h = remaining
        elif h < h_min:
            raise StepSizeUnderflow(t, h, span)

        hs = direction * h
        k1 = f
        k2 = _evaluate(field, t + C2 * hs, y + hs * (A21 * k1))
        k3 = _evaluate(field, t + C3 * hs, y + hs * (A31 * k1 + A32 * k2))
        k4 = _evaluate(field, t + C4 * hs, y + hs * (A41 * k1 + A42 * k2 + A43 * k3))
        k5 = _evaluate(field, t + C5 * hs, y + hs * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4))
        t_new = t1 if last else t + hs
        k6 = _evaluate(field, t_new, y + hs * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5))
        y_new = y + hs * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
        k7 = _evaluate(field, t_new, y_new)

        err_est = hs * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)
        scale = abs_tol + rel_tol * max(abs(y), abs(y_new))
        err = abs(err_est) / scale

        if err <= 1.0 and abs(y_new - y) <= max_angle_step:
            t, y, f = t_new, y_new, k7
            ts.append(t)
            ys.append(y)
            fs.append(f)
            steps += 1
            if err == 0.0:
                factor = MAX_FACTOR
            else:
                factor = SAFETY * err ** (-PI_ALPHA) * err_prev ** PI_BETA
                factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
            if rejected:
                factor = min(factor, 1.0)
            err_prev = max(err, 1e-4)
            rejected = False
            h *= factor
        else:
            rejections += 1
            if err > 1.0:
                factor = max(MIN_FACTOR, SAFETY * err ** -0.2)
            else:
                factor = 0.5
            h *= factor
            rejected = True
            if h < h_min:
                raise StepSizeUnderflow(t, h, span)

    logger.debug(
        f"{field.name}: {t0:.6g} -> {t1:.6g} in {steps} steps ({rejections} rejected), "
        f"lift {y0:.12g} -> {y:.12g}"
    )

    ts, ys, fs = np.asarray(ts), np.asarray(ys), np.asarray(fs)
    forward = direction > 0
    if not forward:
        ts, ys, fs = ts[::-1], ys[::-1], fs[::-1]
    return LiftedTrajectory(ts, ys, fs, rel_tol, abs_tol, forward)


@dataclass(frozen=True)
class WindingConvention:
    """Map between lift changes and winding numbers.

    theta:      target(N) = -(2N + 1) pi
    omega:      target(N) = pi - 2 arccos(E) - 2 pi N
    half_line:  target(N) = -arccos(E) - start - 2 pi N   (a = 0 radial shot on r > 0)
    """

    kind: str
    energy: float = None
    start: float = None
    tolerance: float = 0.3

    def __post_init__(self):
        if self.kind not in ("theta", "omega", "half_line"):
            raise ValueError(f"unknown winding convention {self.kind!r}")
        if self.kind != "theta":
            if self.energy is None or not 0.0 < self.energy < 1.0:
                raise DomainBoundary(f"{self.kind} windings need E in (0, 1), got {self.energy}")
        if self.kind == "half_line" and self.start is None:
            raise ValueError("half_line windings need the start value of the lift")

    @classmethod
    def theta(cls):
        return cls("theta")

    @classmethod
    def omega(cls, energy):
        return cls("omega", energy=energy)

    @classmethod
    def half_line(cls, energy, start):
        return cls("half_line", energy=energy, start=start)

    def _base(self):
        if self.kind == "theta":
            return -math.pi
        if self.kind == "omega":
            return math.pi - 2.0 * math.acos(self.energy)
        return -math.acos(self.energy) - self.start

    def _period(self):
        return TWO_PI

    def target(self, winding):
        return self._base() - self._period() * winding

    def raw_winding(self, delta_lift):
        return (self._base() - delta_lift) / self._period()


def lift_to_winding(delta_lift, convention):
    """Integer winding whose target lies within the convention's tolerance of delta_lift."""
    winding = int(round(convention.raw_winding(delta_lift)))
    distance = abs(delta_lift - convention.target(winding))
    if distance > convention.tolerance:
        raise NotNearTarget(delta_lift, winding, distance)
    return winding


def cumulative_quad(f, origin, grid):
    """Integral of f from `origin` to each grid point, summed piecewise outward."""
    grid = np.asarray(grid, dtype=float)
    values = np.empty_like(grid)
    order = np.argsort(grid)
    sorted_grid = grid[order]
    out = np.empty_like(sorted_grid)
    split = np.searchsorted(sorted_grid, origin)
    total, prev = 0.0, origin
    for i in range(split, len(sorted_grid)):
        total += quad(f, prev, sorted_grid[i], limit=200)[0]
        out[i], prev = total, sorted_grid[i]
    total, prev = 0.0, origin
    for i in range(split - 1, -1, -1):
        total += quad(f, prev, sorted_grid[i], limit=200)[0]
        out[i], prev = total, sorted_grid[i]
    values[order] = out
    return values
