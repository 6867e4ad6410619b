"""Model parameters and state indices shared by the spectrum and label modules.

Half-integers (kappa, j, m_j) are stored as doubled integers.
"""

import math
from dataclasses import dataclass, replace

A_MAX = 1.0 - 1.0 / math.sqrt(2.0)
GAMMA_MIN = -0.5


def _check_two_kappa(two_kappa):
    if int(two_kappa) != two_kappa or two_kappa % 2 == 0:
        raise ValueError(f"two_kappa must be an odd integer, got {two_kappa}")


@dataclass(frozen=True)
class ModelParams:
    """Ring radius a, coupling gamma = -eQ, and the default 2*kappa for scans."""

    a: float
    gamma: float
    two_kappa: int = 1

    def __post_init__(self):
        if not self.a >= 0:
            raise ValueError(f"ring radius a must be non-negative, got {self.a}")
        _check_two_kappa(self.two_kappa)

    @property
    def kappa(self):
        return self.two_kappa / 2

    @property
    def in_window(self):
        """True when existence is guaranteed: 0 < a < 1 - 1/sqrt(2) and -1/2 < gamma < 0."""
        return 0.0 < self.a < A_MAX and GAMMA_MIN < self.gamma < 0.0

    def with_two_kappa(self, two_kappa):
        return replace(self, two_kappa=two_kappa)

    def as_dict(self):
        return {"a": self.a, "gamma": self.gamma, "two_kappa": self.two_kappa}


@dataclass(frozen=True, order=True)
class StateIndex:
    """Winding numbers of the two connectors plus 2*kappa."""

    n_theta: int
    n_omega: int
    two_kappa: int

    def __post_init__(self):
        _check_two_kappa(self.two_kappa)
        if int(self.n_theta) != self.n_theta or int(self.n_omega) != self.n_omega:
            raise ValueError("winding numbers must be integers")

    @property
    def kappa(self):
        return self.two_kappa / 2

    @property
    def admissible(self):
        """Bound states exist for N_theta >= 0, N_omega >= 0 and for N_theta <= -1, N_omega >= 1."""
        if self.n_theta >= 0:
            return self.n_omega >= 0
        return self.n_omega >= 1

    def mirrored(self):
        """Same windings, opposite kappa."""
        return replace(self, two_kappa=-self.two_kappa)

    def as_dict(self):
        return {"n_theta": self.n_theta, "n_omega": self.n_omega, "two_kappa": self.two_kappa}
