"""Radial Prufer equation on the whole line, and its a=0 restriction to r > 0.

    dOmega/dr = 2 (r/w) cos(Omega) + 2 (lambda/w) sin(Omega) + 2 (a kappa + gamma r)/w^2 - 2E,
    w = sqrt(r^2 + a^2)

The connector runs from the saddle-node at r = -inf (Omega = -pi + arccos E)
to the one at r = +inf (Omega = -arccos E). Approach to both is algebraic, so
the cutoff values carry first-order 1/r0 tail corrections. The connector is
shot inward from both cutoffs and matched at r = 0.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import brentq

from .config import ScanConfig, Tolerances
from .errors import CutoffTooSmall, DomainBoundary, NoRootInGap, NonDecayingTail
from .hydrogen import origin_branch
from .odeflow import (
    AngleField,
    LiftedTrajectory,
    WindingConvention,
    cumulative_quad,
    integrate_lifted,
    lift_to_winding,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
TAIL_SLOPE_TOLERANCE = 0.1
# doubling r0 may move the lift (fixed shot) or E (converged state) by this many tail_tol
TAIL_LIMIT_FACTOR = 100.0


def _check_energy(E):
    if not 0.0 < E < 1.0:
        raise DomainBoundary(f"E={E} is outside the spectral gap (0, 1)")


def default_cutoff(E):
    """r0 = max(200, 40/eta)."""
    _check_energy(E)
    return max(200.0, 40.0 / math.sqrt(1.0 - E * E))


@dataclass(frozen=True)
class RadialContext:
    a: float
    gamma: float
    two_kappa: int
    lam: float
    E: float

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError(f"ring radius a must be non-negative, got {self.a}")
        if int(self.two_kappa) != self.two_kappa or self.two_kappa % 2 == 0:
            raise ValueError(f"two_kappa must be an odd integer, got {self.two_kappa}")
        _check_energy(self.E)

    @property
    def kappa(self):
        return self.two_kappa / 2

    @property
    def eta(self):
        return math.sqrt((1.0 - self.E) * (1.0 + self.E))

    def left_tail(self, r0):
        """Start value at r = -r0."""
        return -math.pi + math.acos(self.E) - (self.lam + self.gamma / self.eta) / r0

    def right_tail(self, r0):
        """Zero-winding value at r = +r0."""
        return -math.acos(self.E) + (self.lam - self.gamma / self.eta) / r0


@dataclass(frozen=True, eq=False)
class RadialShot:
    delta_lift: float
    omega_profile: LiftedTrajectory
    cutoff: float
    tail_residual: float
    context: RadialContext

    @cached_property
    def winding(self):
        """N_omega; raises NotNearTarget when the shot is not a connector."""
        return lift_to_winding(self.delta_lift, WindingConvention.omega(self.context.E))

    @property
    def miss(self):
        return self.delta_lift - WindingConvention.omega(self.context.E).target(self.winding)


@dataclass(frozen=True, eq=False)
class RadialAmplitude:
    r: np.ndarray
    Omega: np.ndarray
    R: np.ndarray
    u: np.ndarray
    v: np.ndarray
    tail_slopes: tuple
    eta: float


def omega_rhs(r, Omega_lift, ctx):
    w = math.hypot(r, ctx.a)
    return (
        2.0 * (r / w) * math.cos(Omega_lift)
        + 2.0 * (ctx.lam / w) * math.sin(Omega_lift)
        + 2.0 * (ctx.a * ctx.kappa + ctx.gamma * r) / (w * w)
        - 2.0 * ctx.E
    )


def omega_field(ctx, r0):
    return AngleField(lambda t, y: omega_rhs(t, y, ctx), -r0, r0, name=f"omega(E={ctx.E:.12g})")


def _shoot_pieces(ctx, r0, tols):
    field = omega_field(ctx, r0)
    left = integrate_lifted(field, -r0, 0.0, ctx.left_tail(r0), tols.ode_rel, tols.ode_abs)
    right = integrate_lifted(field, r0, 0.0, ctx.right_tail(r0), tols.ode_rel, tols.ode_abs)
    delta = math.pi - 2.0 * math.acos(ctx.E) + left.final - right.final
    return delta, left, right


def shoot_omega(ctx, cutoff_r0=None, tols=None, check_tail=True):
    """Shoot the Omega-connector candidate between the two saddle-nodes.

    At a connector delta_lift equals pi - 2 arccos(E) - 2 pi N_omega. The miss
    delta_lift - (pi - 2 arccos(E)) is continuous and decreasing in E at fixed
    lambda. With `check_tail` the shot is repeated at 2 r0 and the change is
    kept as tail_residual.
    """
    tols = tols or Tolerances()
    if not ctx.a > 0:
        raise DomainBoundary("the whole-line radial shot needs a > 0; use half_line_shot at a = 0")
    r0 = default_cutoff(ctx.E) if cutoff_r0 is None else float(cutoff_r0)
    if r0 <= 10.0 * max(1.0 / ctx.eta, ctx.a):
        raise CutoffTooSmall(f"cutoff r0={r0:.6g} must exceed 10 max(1/eta, a) = {10.0 * max(1.0 / ctx.eta, ctx.a):.6g}")

    delta, left, right = _shoot_pieces(ctx, r0, tols)
    tail_residual = None
    if check_tail:
        doubled = _shoot_pieces(ctx, 2.0 * r0, tols)[0]
        tail_residual = abs(doubled - delta)
        logger.debug(f"tail residual {tail_residual:.3e} at r0={r0:.6g}")
        if tail_residual > TAIL_LIMIT_FACTOR * tols.tail_tol:
            raise CutoffTooSmall(
                f"doubling r0={r0:.6g} moved the lift by {tail_residual:.3e} "
                f"(limit {TAIL_LIMIT_FACTOR * tols.tail_tol:.3e})"
            )
    shift = TWO_PI * round((left.final - right.final) / TWO_PI)
    profile = LiftedTrajectory.stitch(left, right.shifted(shift))
    return RadialShot(delta, profile, r0, tail_residual, ctx)


def _log_r_slope(ctx, r, Omega):
    w = math.hypot(r, ctx.a)
    return (r / w) * math.sin(Omega) - (ctx.lam / w) * math.cos(Omega)


def radial_amplitude(ctx, shot, r=None, points=801):
    """R(r) with R(0) = 1 and the spinor components u, v along a converged connector.

    Raises NonDecayingTail when the outward log-slope of R at either cutoff
    is more than 10% away from -eta.
    """
    profile = shot.omega_profile
    lo, hi = float(profile.t[0]), float(profile.t[-1])
    if r is None:
        r = np.linspace(lo, hi, points)
    r = np.asarray(r, dtype=float)
    if np.any(r < lo) or np.any(r > hi):
        raise DomainBoundary(f"amplitude grid leaves the profile range [{lo:.6g}, {hi:.6g}]")

    eta = ctx.eta
    outward_left = -_log_r_slope(ctx, lo, float(profile.lift[0]))
    outward_right = _log_r_slope(ctx, hi, float(profile.lift[-1]))
    for side, slope in (("left", outward_left), ("right", outward_right)):
        if abs(slope + eta) > TAIL_SLOPE_TOLERANCE * eta:
            raise NonDecayingTail(f"{side} tail log-slope {slope:.6g} is not within 10% of -eta = {-eta:.6g}")

    log_r = cumulative_quad(lambda t: _log_r_slope(ctx, t, float(profile(t))), 0.0, r)
    Omega = np.asarray(profile(r), dtype=float)
    R = np.exp(log_r)
    u = math.sqrt(2.0) * R * np.cos(Omega / 2.0)
    v = math.sqrt(2.0) * R * np.sin(Omega / 2.0)
    return RadialAmplitude(r=r, Omega=Omega, R=R, u=u, v=v, tail_slopes=(outward_left, outward_right), eta=eta)


# a = 0: Dirac-Coulomb on r > 0 with lambda = k

@dataclass(frozen=True, eq=False)
class HalfLineShot:
    k: int
    gamma: float
    E: float
    delta_lift: float
    start: float
    profile: LiftedTrajectory
    cutoff: float

    @property
    def convention(self):
        return WindingConvention.half_line(self.E, self.start)

    @property
    def winding(self):
        return lift_to_winding(self.delta_lift, self.convention)


def _half_line_rhs(k, gamma, E):
    def rhs(r, Omega):
        return 2.0 * math.cos(Omega) + 2.0 * (k * math.sin(Omega) + gamma) / r - 2.0 * E
    return rhs


def _half_line_pieces(k, gamma, E, r0, tols):
    if k == 0 or not gamma ** 2 < k ** 2:
        raise ValueError(f"half-line shot needs k != 0 and gamma^2 < k^2, got k={k}, gamma={gamma}")
    eta = math.sqrt((1.0 - E) * (1.0 + E))
    start = origin_branch(k, gamma)
    rho = math.sqrt(k * k - gamma * gamma)
    slope = 2.0 * (math.cos(start) - E) / (1.0 + 2.0 * rho)
    eps = tols.epsilon
    match = 1.0 / eta
    field = AngleField(_half_line_rhs(k, gamma, E), 0.0, r0, name=f"half_line(k={k}, E={E:.12g})")
    left = integrate_lifted(field, eps, match, start + slope * eps, tols.ode_rel, tols.ode_abs)
    end = -math.acos(E) + (k - gamma / eta) / r0
    right = integrate_lifted(field, r0, match, end, tols.ode_rel, tols.ode_abs)
    delta = -math.acos(E) - start + left.final - right.final
    return delta, start, left, right


def half_line_shot(k, gamma, E, tols=None, cutoff_r0=None):
    """Shoot the a=0 radial connector from the Frobenius start at r = 0+."""
    tols = tols or Tolerances()
    r0 = default_cutoff(E) if cutoff_r0 is None else float(cutoff_r0)
    delta, start, left, right = _half_line_pieces(k, gamma, E, r0, tols)
    shift = TWO_PI * round((left.final - right.final) / TWO_PI)
    profile = LiftedTrajectory.stitch(left, right.shifted(shift))
    return HalfLineShot(k, gamma, E, delta, start, profile, r0)


def energy_grid(scan):
    """Energies with 1 - E log-spaced over the scan range, increasing."""
    one_minus_e = np.logspace(math.log10(scan.one_minus_e_max), math.log10(scan.one_minus_e_min), scan.points)
    return 1.0 - one_minus_e


def solve_half_line_energy(k, gamma, M, tols=None, scan=None):
    """Energy of the a=0 state with M radial nodes, by shooting on r > 0.

    The miss is decreasing in E, so the bracket is found by bisection over
    the scan grid and polished with brentq.
    """
    tols = tols or Tolerances()
    scan = scan or ScanConfig(workers=1)
    grid = energy_grid(scan)

    def miss(E):
        delta, start, _, _ = _half_line_pieces(k, gamma, E, default_cutoff(E), tols)
        return delta - WindingConvention.half_line(E, start).target(M)

    lo, hi = 0, len(grid) - 1
    f_lo, f_hi = miss(grid[lo]), miss(grid[hi])
    if not (f_lo > 0 > f_hi):
        raise NoRootInGap(
            f"half-line miss for k={k}, M={M} does not change sign on [{grid[lo]:.6g}, {grid[hi]:.12g}]"
        )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if miss(grid[mid]) > 0:
            lo = mid
        else:
            hi = mid
    E = brentq(miss, grid[lo], grid[hi], xtol=tols.energy_tol)
    logger.info(f"half-line state k={k}, M={M}, gamma={gamma}: E={E:.15g}")
    return half_line_shot(k, gamma, E, tols)
