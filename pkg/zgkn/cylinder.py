"""The Theta- and Omega-equations as smooth flows on closed cylinders.

Theta-system, d/dtau with dtheta/dtau = sin(theta):
    (sin th, -2a sin th cos th cos T + 2aE sin^2 th sin T - 2 kappa sin T + 2 lambda sin th)
Omega-system in xi = arctan(r/a), with dxi/dtau = cos^2(xi):
    (cos^2 xi, 2a sin xi cos W + 2 lambda cos xi sin W + 2 gamma sin xi cos xi + 2 kappa cos^2 xi - 2aE)

Connectors join the saddles on the two boundary circles. Only the
classification of equilibria and the portrait samples use these forms; the
shooting integrates in theta and r.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
ZERO_EIGENVALUE = 1e-12


@dataclass(frozen=True)
class CylinderSystem:
    name: str
    x_range: tuple
    rhs: Callable
    jacobian: Callable
    chart: Callable


@dataclass(frozen=True)
class Equilibrium:
    name: str
    x: float
    y: float
    eigenvalues: tuple
    kind: str


def theta_cylinder(ctx, lam):
    a, E, kappa = ctx.a, ctx.E, ctx.kappa

    def rhs(th, T):
        s, c = math.sin(th), math.cos(th)
        return s, -2 * a * s * c * math.cos(T) + 2 * a * E * s * s * math.sin(T) - 2 * kappa * math.sin(T) + 2 * lam * s

    def jacobian(th, T):
        s, c = math.sin(th), math.cos(th)
        d_th = -2 * a * math.cos(2 * th) * math.cos(T) + 4 * a * E * s * c * math.sin(T) + 2 * lam * c
        d_T = 2 * a * s * c * math.sin(T) + 2 * a * E * s * s * math.cos(T) - 2 * kappa * math.cos(T)
        return np.array([[c, 0.0], [d_th, d_T]])

    return CylinderSystem("theta", (0.0, math.pi), rhs, jacobian, lambda t: t)


def omega_cylinder(ctx):
    a, E, kappa, gamma, lam = ctx.a, ctx.E, ctx.kappa, ctx.gamma, ctx.lam
    if not a > 0:
        raise ValueError("the Omega cylinder needs a > 0")

    def rhs(xi, W):
        s, c = math.sin(xi), math.cos(xi)
        return c * c, (
            2 * a * s * math.cos(W) + 2 * lam * c * math.sin(W) + 2 * gamma * s * c + 2 * kappa * c * c - 2 * a * E
        )

    def jacobian(xi, W):
        s, c = math.sin(xi), math.cos(xi)
        d_xi = 2 * a * c * math.cos(W) - 2 * lam * s * math.sin(W) + 2 * gamma * math.cos(2 * xi) - 4 * kappa * s * c
        d_W = -2 * a * s * math.sin(W) + 2 * lam * c * math.cos(W)
        return np.array([[-2 * s * c, 0.0], [d_xi, d_W]])

    return CylinderSystem("omega", (-math.pi / 2, math.pi / 2), rhs, jacobian, lambda r: np.arctan(np.asarray(r) / a))


def classify(eigenvalues, side):
    """saddle/source/sink, or the saddle-node variants when one eigenvalue vanishes.

    `side` is "left" or "right"; it fixes the direction of the flow along the
    boundary circle's normal when that eigenvalue is zero.
    """
    values = sorted(float(np.real(v)) for v in eigenvalues)
    zero = [v for v in values if abs(v) <= ZERO_EIGENVALUE]
    if zero:
        other = [v for v in values if abs(v) > ZERO_EIGENVALUE]
        if not other:
            return "degenerate"
        h = other[0]
        if side == "left":
            return "saddle-node" if h < 0 else "source-node"
        return "saddle-node" if h > 0 else "sink-node"
    if values[0] < 0 < values[1]:
        return "saddle"
    return "source" if values[0] > 0 else "sink"


def _equilibrium(system, name, x, y, side):
    eigenvalues = tuple(float(v) for v in np.real(np.linalg.eigvals(system.jacobian(x, y))))
    return Equilibrium(name, x, y, eigenvalues, classify(eigenvalues, side))


def _named(system, points):
    """Label the saddle on each boundary S-/S+ and the other point N-/N+."""
    named = []
    for side, sign, candidates in points:
        found = [_equilibrium(system, "", x, y, side) for x, y in candidates]
        for eq in found:
            prefix = "S" if eq.kind.startswith("saddle") else "N"
            named.append(Equilibrium(prefix + sign, eq.x, eq.y, eq.eigenvalues, eq.kind))
    return named


def theta_equilibria(ctx, lam):
    """Boundary equilibria of the Theta-system: theta in {0, pi}, Theta in {0, pi}."""
    system = theta_cylinder(ctx, lam)
    return _named(system, [
        ("left", "-", [(0.0, 0.0), (0.0, math.pi)]),
        ("right", "+", [(math.pi, -math.pi), (math.pi, 0.0)]),
    ])


def omega_equilibria(ctx):
    """Boundary equilibria of the Omega-system: cos(Omega) = -E at xi = -pi/2, E at xi = pi/2."""
    system = omega_cylinder(ctx)
    acos_e = math.acos(ctx.E)
    return _named(system, [
        ("left", "-", [(-math.pi / 2, -math.pi + acos_e), (-math.pi / 2, math.pi - acos_e)]),
        ("right", "+", [(math.pi / 2, -acos_e), (math.pi / 2, acos_e)]),
    ])


def wrap(angle):
    """Angle reduced to [-pi, pi)."""
    return (np.asarray(angle) + math.pi) % TWO_PI - math.pi


def sample_portrait(system, nx, ny):
    """Vector field on an nx by ny grid covering the closed cylinder.

    Rows are dicts with kind="field", x, y, dx, dy.
    """
    if nx < 1 or ny < 1:
        raise ValueError(f"portrait grid must be at least 1x1, got {nx}x{ny}")
    lo, hi = system.x_range
    xs = np.linspace(lo, hi, nx) if nx > 1 else np.array([(lo + hi) / 2])
    ys = np.linspace(-math.pi, math.pi, ny, endpoint=False)
    rows = []
    for x in xs:
        for y in ys:
            dx, dy = system.rhs(float(x), float(y))
            rows.append({"kind": "field", "x": float(x), "y": float(y), "dx": float(dx), "dy": float(dy)})
    logger.debug(f"sampled {len(rows)} points of the {system.name} portrait")
    return rows


def connector_orbit(system, profile):
    """A solved connector in cylinder coordinates, one row per integrator node."""
    x = system.chart(profile.t)
    return [
        {"kind": "orbit", "x": float(xi), "y": float(wrap(lift)), "lift": float(lift)}
        for xi, lift in zip(np.atleast_1d(x), profile.lift)
    ]
