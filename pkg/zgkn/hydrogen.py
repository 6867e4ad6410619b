"""Exact a -> 0 oracle: the Dirac-Coulomb problem on the half line r > 0.

Energies follow the Sommerfeld formula, eigenfunctions Gordon's terminating
confluent hypergeometric series, and the Prufer angle Omega(r) is rebuilt
from them with a continuous lift (-2pi at each pole of the tan argument).
Angular eigenvectors use Jacobi polynomials, evaluated here by recurrence.
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainBoundary, ExcludedState, NonTerminating

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
# -sqrt(3)/2 < gamma < 0 keeps the radial operator essentially self-adjoint
THALLER_GAMMA_MIN = -math.sqrt(3.0) / 2.0


@dataclass(frozen=True)
class HydrogenState:
    """A Dirac-Coulomb bound state, M = n - |k| radial nodes, spin-orbit number k."""

    M: int
    k: int
    gamma: float

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 0:
            raise ValueError(f"M must be a non-negative integer, got {self.M}")
        if int(self.k) != self.k or self.k == 0:
            raise ValueError(f"k must be a nonzero integer, got {self.k}")
        if self.k > 0 and self.M == 0:
            raise ExcludedState(f"k={self.k} > 0 with M=0 is not a bound state")
        if not self.gamma ** 2 < self.k ** 2:
            raise ValueError(f"gamma={self.gamma} violates gamma^2 < k^2 for k={self.k}")

    @classmethod
    def from_n(cls, n, k, gamma):
        return cls(n - abs(k), k, gamma)

    @property
    def n(self):
        return self.M + abs(self.k)

    @property
    def rho(self):
        return math.sqrt(self.k ** 2 - self.gamma ** 2)

    @cached_property
    def energy(self):
        return sommerfeld_energy(self)

    @property
    def in_thaller_window(self):
        return THALLER_GAMMA_MIN < self.gamma < 0.0


@dataclass(frozen=True)
class GordonAux:
    rho: float
    eta: float
    c1: float
    c2: float

    @property
    def beta(self):
        return 2.0 * self.rho + 1.0


def sommerfeld_energy(state):
    """E = 1 / sqrt(1 + (gamma / (M + rho))^2)."""
    ratio = state.gamma / (state.M + state.rho)
    return 1.0 / math.sqrt(1.0 + ratio * ratio)


def gordon_aux(state):
    E = state.energy
    eta = math.sqrt((1.0 - E) * (1.0 + E))
    if eta == 0.0:
        raise DomainBoundary(f"{state} has E = 1; Gordon's eigenfunctions need E < 1")
    return GordonAux(rho=state.rho, eta=eta, c1=float(state.M), c2=state.k + state.gamma / eta)


def _check_terminating(alpha):
    if not (float(alpha).is_integer() and alpha <= 0):
        raise NonTerminating(f"F(alpha, beta, x) only terminates for alpha in 0, -1, -2, ...; got {alpha}")
    return int(-alpha)


def confluent_F(alpha, beta, x):
    """Terminating confluent hypergeometric series F(alpha, beta, x), alpha = 0, -1, -2, ...

    Summed term by term with t_{m+1} = t_m (alpha + m) x / ((beta + m)(m + 1)).
    Accepts scalar or array x.
    """
    degree = _check_terminating(alpha)
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for m in range(degree):
        term = term * (alpha + m) * x / ((beta + m) * (m + 1))
        total = total + term
    return total if total.ndim else float(total)


def _confluent_coefficients(alpha, beta):
    degree = _check_terminating(alpha)
    coeffs = [1.0]
    for m in range(degree):
        coeffs.append(coeffs[-1] * (alpha + m) / ((beta + m) * (m + 1)))
    return np.array(coeffs)


def jacobi_P(n, alpha, beta, x):
    """Jacobi polynomial P_n^(alpha, beta)(x) by the three-term recurrence."""
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev if p_prev.ndim else float(p_prev)
    p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x
    ab = alpha + beta
    for m in range(2, int(n) + 1):
        s = 2.0 * m + ab
        a1 = 2.0 * m * (m + ab) * (s - 2.0)
        a2 = (s - 1.0) * (alpha * alpha - beta * beta)
        a3 = (s - 2.0) * (s - 1.0) * s
        a4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * s
        p_prev, p = p, ((a2 + a3 * x) * p - a4 * p_prev) / a1
    return p if p.ndim else float(p)


def _series_pair(state, aux, x):
    """(F(-M+1, b, x), F(-M, b, x)); the first is zero when c1 = 0."""
    f0 = confluent_F(-state.M, aux.beta, x)
    if aux.c1 == 0.0:
        f1 = np.zeros_like(np.asarray(x, dtype=float))
        f1 = f1 if f1.ndim else 0.0
    else:
        f1 = confluent_F(-state.M + 1, aux.beta, x)
    return f1, f0


def gordon_radial(state, r):
    """Closed-form (phi1, phi2, u, v) at r > 0 with c1 = M, c2 = k + gamma/eta."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainBoundary("Gordon's eigenfunctions are evaluated on r > 0")
    aux = gordon_aux(state)
    E = state.energy
    envelope = np.exp(-aux.eta * r) * r ** aux.rho
    f1, f0 = _series_pair(state, aux, 2.0 * aux.eta * r)
    phi1 = aux.c1 * envelope * f1
    phi2 = aux.c2 * envelope * f0
    u = math.sqrt(1.0 + E) * (phi1 + phi2)
    v = math.sqrt(1.0 - E) * (phi1 - phi2)
    return phi1, phi2, u, v


def _denominator(state, aux):
    poly = aux.c2 * Polynomial(_confluent_coefficients(-state.M, aux.beta))
    if aux.c1 != 0.0:
        poly = poly + aux.c1 * Polynomial(_confluent_coefficients(-state.M + 1, aux.beta))
    return poly


def denominator_roots(state):
    """Positive r where c1 F(-M+1, .) + c2 F(-M, .) vanishes, ascending."""
    aux = gordon_aux(state)
    poly = _denominator(state, aux)
    if poly.degree() < 1:
        return np.array([])
    roots = poly.roots()
    real = roots[np.abs(roots.imag) <= 1e-9 * np.maximum(1.0, np.abs(roots))].real
    return np.sort(real[real > 0.0]) / (2.0 * aux.eta)


def count_denominator_zeros(state):
    return int(len(denominator_roots(state)))


def origin_branch(k, gamma):
    """Branch value of Omega(0+): arcsin(-gamma/k) for k < 0, -pi - arcsin(-gamma/k) for k > 0."""
    base = math.asin(-gamma / k)
    return base if k < 0 else -math.pi - base


def omega_at_origin(state):
    return origin_branch(state.k, state.gamma)


def omega_at_infinity(state):
    return -TWO_PI * state.M - math.acos(state.energy)


def gordon_omega_profile(state, r):
    """Continuous lift of Omega(r) = 2 atan(sqrt((1-E)/(1+E)) (c1 F1 - c2 F0)/(c1 F1 + c2 F0)).

    The principal value is moved onto the branch fixed by `omega_at_origin`
    and loses 2pi each time r passes a zero of the denominator.
    """
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    aux = gordon_aux(state)
    E = state.energy
    s = math.sqrt((1.0 - E) / (1.0 + E))

    def principal(x):
        f1, f0 = _series_pair(state, aux, x)
        num = aux.c1 * f1 - aux.c2 * f0
        den = aux.c1 * f1 + aux.c2 * f0
        return 2.0 * np.arctan2(s * num * np.sign(den), np.abs(den))

    at_origin = float(principal(np.zeros(1))[0])
    offset = TWO_PI * round((omega_at_origin(state) - at_origin) / TWO_PI)
    poles = denominator_roots(state)
    crossed = np.searchsorted(poles, r, side="right")
    lift = principal(2.0 * aux.eta * r) + offset - TWO_PI * crossed
    return float(lift[0]) if scalar else lift


def enumerate_states(nmax, gamma):
    """All (M, k) with n <= nmax, k = -n, ..., -1, 1, ..., n-1, ordered by n then k."""
    states = []
    for n in range(1, nmax + 1):
        for k in range(-n, n):
            if k == 0:
                continue
            states.append(HydrogenState.from_n(n, k, gamma))
    return states
