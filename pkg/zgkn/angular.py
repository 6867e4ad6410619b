"""Angular eigenvalue problem: the Theta-equation on 0 < theta < pi.

    dTheta/dtheta = -2a cos(theta) cos(Theta) + 2(aE sin(theta) - kappa/sin(theta)) sin(Theta) + 2 lambda

A connector leaves the saddle at theta = 0 (Theta = 0 for kappa > 0, pi for
kappa < 0) and enters the saddle at theta = pi. Both saddles repel the
connector in the direction of integration, so it is shot from both ends and
matched at theta = pi/2.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import roots_jacobi

from .config import BracketConfig, Tolerances
from .errors import BracketNotFound, DomainBoundary, NotNearTarget, WindingMismatch, ZeroN
from .hydrogen import jacobi_P
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
MATCH_THETA = math.pi / 2


def _abs_two_kappa(kappa):
    two = 2.0 * abs(kappa)
    if not (two.is_integer() and int(two) % 2 == 1):
        raise ValueError(f"kappa must be a half-integer, got {kappa}")
    return int(two)


@dataclass(frozen=True)
class AngularContext:
    a: float
    E: float
    two_kappa: int

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError(f"ring radius a must be non-negative, got {self.a}")
        if int(self.two_kappa) != self.two_kappa or self.two_kappa % 2 == 0:
            raise ValueError(f"two_kappa must be an odd integer, got {self.two_kappa}")

    @property
    def kappa(self):
        return self.two_kappa / 2

    @property
    def theta_start(self):
        """Lift of the left saddle: 0 for kappa > 0, pi for kappa < 0."""
        return 0.0 if self.two_kappa > 0 else math.pi

    @property
    def theta_end_base(self):
        """Lift of the right saddle reached with zero winding."""
        return self.theta_start - math.pi

    def frobenius_slope(self, lam):
        return (2.0 * lam - 2.0 * self.a * math.cos(self.theta_start)) / (1.0 + abs(self.two_kappa))


@dataclass(frozen=True, eq=False)
class AngularSolution:
    lam: float
    winding: int
    theta_profile: LiftedTrajectory
    residual: float
    delta_lift: float
    context: AngularContext
    epsilon: float


@dataclass(frozen=True, eq=False)
class AngularAmplitude:
    theta: np.ndarray
    Theta: np.ndarray
    S: np.ndarray


def theta_rhs(theta, Theta_lift, ctx, lam):
    if not 0.0 < theta < math.pi:
        raise DomainBoundary(f"theta={theta} is on the boundary of (0, pi)")
    s = math.sin(theta)
    return (
        -2.0 * ctx.a * math.cos(theta) * math.cos(Theta_lift)
        + 2.0 * (ctx.a * ctx.E * s - ctx.kappa / s) * math.sin(Theta_lift)
        + 2.0 * lam
    )


def theta_field(ctx, lam):
    return AngleField(
        lambda t, y: theta_rhs(t, y, ctx, lam), 0.0, math.pi, name=f"theta(lambda={lam:.12g})"
    )


def _shoot_pieces(ctx, lam, epsilon, tols):
    field = theta_field(ctx, lam)
    c = ctx.frobenius_slope(lam)
    left = integrate_lifted(
        field, epsilon, MATCH_THETA, ctx.theta_start + c * epsilon, tols.ode_rel, tols.ode_abs
    )
    right = integrate_lifted(
        field, math.pi - epsilon, MATCH_THETA, ctx.theta_end_base - c * epsilon, tols.ode_rel, tols.ode_abs
    )
    delta = -math.pi + left.final - right.final
    return delta, left, right


def shoot_theta(ctx, lam, epsilon=None, tols=None):
    """Lift change of the Theta-connector candidate for `lam`.

    Returns (delta_lift, profile). delta_lift is measured between the ideal
    boundary values and is continuous and increasing in lam; at a connector
    it equals -(2 N_theta + 1) pi.
    """
    tols = tols or Tolerances()
    epsilon = tols.epsilon if epsilon is None else epsilon
    if not 0.0 < epsilon < 1e-3:
        raise ValueError(f"epsilon must lie in (0, 1e-3), got {epsilon}")
    delta, left, right = _shoot_pieces(ctx, lam, epsilon, tols)
    shift = TWO_PI * round((left.final - right.final) / TWO_PI)
    profile = LiftedTrajectory.stitch(left, right.shifted(shift))
    return delta, profile


def _bracket(miss, center, search):
    f_center = miss(center)
    if f_center == 0.0:
        return center, center
    direction = 1.0 if f_center < 0 else -1.0
    step, half_width = search.step, search.half_width
    prev_x, prev_f = center, f_center
    for _ in range(search.max_widenings + 1):
        while abs(prev_x + direction * step - center) <= half_width:
            x = prev_x + direction * step
            fx = miss(x)
            logger.debug(f"lambda bracket walk: miss({x:.6g}) = {fx:.6g}")
            if fx == 0.0 or (fx > 0) != (prev_f > 0):
                return (prev_x, x) if prev_x < x else (x, prev_x)
            prev_x, prev_f = x, fx
        step *= search.growth
        half_width *= search.growth
        logger.debug(f"widening lambda bracket to half width {half_width:.6g}")
    raise BracketNotFound(
        f"no sign change of the angular miss within {half_width / search.growth:.6g} of lambda={center:.6g}"
    )


def solve_lambda(ctx, n_theta, search=None, tols=None):
    """Angular eigenvalue whose Theta-connector winds n_theta times."""
    search = search or BracketConfig()
    tols = tols or Tolerances()
    target = WindingConvention.theta().target(n_theta)
    center = search.center
    if center is None:
        center = float(exact_k(n_from_winding(n_theta), ctx.kappa))

    def miss(lam):
        return _shoot_pieces(ctx, lam, tols.epsilon, tols)[0] - target

    lo, hi = _bracket(miss, center, search)
    lam = lo if lo == hi else brentq(miss, lo, hi, xtol=tols.lambda_tol)
    delta, profile = shoot_theta(ctx, lam, tols.epsilon, tols)
    try:
        winding = lift_to_winding(delta, WindingConvention.theta())
    except NotNearTarget as e:
        raise WindingMismatch(f"angular root lambda={lam:.12g} is not a connector: {e}")
    if winding != n_theta:
        raise WindingMismatch(f"angular root lambda={lam:.12g} has N_theta={winding}, wanted {n_theta}")
    logger.debug(f"lambda={lam:.12g} for N_theta={n_theta}, a={ctx.a}, E={ctx.E}, 2kappa={ctx.two_kappa}")
    return AngularSolution(
        lam=lam,
        winding=winding,
        theta_profile=profile,
        residual=abs(delta - target),
        delta_lift=delta,
        context=ctx,
        epsilon=tols.epsilon,
    )


def exact_k(N, kappa):
    """a=0 angular eigenvalue k = -sgn(N)(|N| + |kappa| - 1/2)."""
    if N == 0:
        raise ZeroN("N must be a nonzero integer")
    half = (_abs_two_kappa(kappa) - 1) // 2
    sign = 1 if N > 0 else -1
    return -sign * (abs(N) + half)


def n_from_k(k, kappa):
    """Inverse of exact_k: N = -sgn(k)(|k| - |kappa| + 1/2)."""
    half = (_abs_two_kappa(kappa) - 1) // 2
    if k == 0 or abs(k) <= half:
        raise ValueError(f"k={k} is not an eigenvalue for kappa={kappa}")
    sign = 1 if k > 0 else -1
    return -sign * (abs(k) - half)


def n_from_winding(n_theta):
    return n_theta + 1 if n_theta >= 0 else n_theta


def winding_from_n(N):
    if N == 0:
        raise ZeroN("N must be a nonzero integer")
    return N - 1 if N > 0 else N


def _jacobi_pair(N, kappa, x):
    abs_kappa = _abs_two_kappa(kappa) / 2
    degree = abs(N) - 1
    p_a = jacobi_P(degree, abs_kappa + 0.5, abs_kappa - 0.5, x)
    p_b = jacobi_P(degree, abs_kappa - 0.5, abs_kappa + 0.5, x)
    return p_a, p_b, degree, abs_kappa


def _check_open_interval(theta):
    if np.any(theta <= 0.0) or np.any(theta >= math.pi):
        raise DomainBoundary("exact angular profiles are defined for 0 < theta < pi")


def exact_theta_profile(N, kappa, theta):
    """Continuous lift of the a=0 connector for eigenvalue exact_k(N, kappa).

    Starts from 0 (kappa > 0) or pi (kappa < 0) at theta = 0 and gains 2pi each
    time cos(theta) passes a zero of the lower Jacobi polynomial.
    """
    if N == 0:
        raise ZeroN("N must be a nonzero integer")
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    _check_open_interval(theta)
    x = np.cos(theta)
    p_a, p_b, degree, abs_kappa = _jacobi_pair(N, kappa, x)
    half_tan = np.tan(theta / 2.0)
    g = 2.0 * np.arctan2(p_a * half_tan * np.sign(p_b), np.abs(p_b))
    if degree > 0:
        zeros = roots_jacobi(degree, abs_kappa - 0.5, abs_kappa + 0.5)[0]
        g = g + TWO_PI * np.sum(zeros[None, :] > x[:, None], axis=1)
    start = 0.0 if kappa > 0 else math.pi
    profile = start - (1 if N > 0 else -1) * g
    return float(profile[0]) if scalar else profile


def exact_amplitude(N, kappa, theta):
    """|S| of the a=0 angular eigenvector, up to a constant factor."""
    if N == 0:
        raise ZeroN("N must be a nonzero integer")
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    _check_open_interval(theta)
    p_a, p_b, _, abs_kappa = _jacobi_pair(N, kappa, np.cos(theta))
    half_tan = np.tan(theta / 2.0)
    squared = np.sin(theta) ** (2.0 * abs_kappa + 1.0) * (p_b ** 2 / half_tan + p_a ** 2 * half_tan)
    amplitude = np.sqrt(squared)
    return float(amplitude[0]) if scalar else amplitude


def angular_amplitude(ctx, solution, theta=None, points=201):
    """Integrate ln S along a converged connector, S(pi/2) = 1.

    `theta` defaults to a uniform grid over the profile's range.
    """
    profile = solution.theta_profile
    lo, hi = float(profile.t[0]), float(profile.t[-1])
    if theta is None:
        theta = np.linspace(lo, hi, points)
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < lo) or np.any(theta > hi):
        raise DomainBoundary(f"amplitude grid leaves the profile range [{lo}, {hi}]")

    def log_slope(t):
        Theta = float(profile(t))
        s = math.sin(t)
        return -ctx.a * math.cos(t) * math.sin(Theta) - (ctx.a * ctx.E * s - ctx.kappa / s) * math.cos(Theta)

    log_s = cumulative_quad(log_slope, MATCH_THETA, theta)
    return AngularAmplitude(theta=theta, Theta=np.asarray(profile(theta), dtype=float), S=np.exp(log_s))
