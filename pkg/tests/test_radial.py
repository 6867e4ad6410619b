import math

import numpy as np
import pytest

from zgkn.config import ScanConfig, Tolerances
from zgkn.errors import CutoffTooSmall, DomainBoundary, NoRootInGap
from zgkn.hydrogen import HydrogenState, enumerate_states, gordon_omega_profile
from zgkn.odeflow import WindingConvention
from zgkn.radial import (
    RadialContext,
    default_cutoff,
    energy_grid,
    half_line_shot,
    omega_rhs,
    shoot_omega,
    solve_half_line_energy,
)


def ctx(lam=0.0, E=0.5, a=1.0, gamma=-0.3, two_kappa=1):
    return RadialContext(a=a, gamma=gamma, two_kappa=two_kappa, lam=lam, E=E)


def test_omega_rhs_examples():
    assert omega_rhs(0.0, math.pi / 2, ctx()) == pytest.approx(0.0, abs=1e-15)
    assert omega_rhs(0.0, 0.0, ctx(lam=1.0)) == pytest.approx(0.0, abs=1e-15)
    assert omega_rhs(1.0, 0.0, ctx(lam=1.0)) == pytest.approx(0.61421, abs=1e-5)


def test_tail_start_values():
    c = ctx(lam=-1.0, E=0.6)
    assert c.eta == pytest.approx(0.8)
    assert c.left_tail(100.0) == pytest.approx(-math.pi + math.acos(0.6) - (-1.0 - 0.375) / 100.0)
    assert c.right_tail(100.0) == pytest.approx(-math.acos(0.6) + (-1.0 + 0.375) / 100.0)


@pytest.mark.parametrize("E", [0.0, 1.0, 1.2])
def test_energy_outside_gap(E):
    with pytest.raises(DomainBoundary):
        ctx(E=E)


def test_default_cutoff():
    assert default_cutoff(0.6) == 200.0
    E = 0.9999
    assert default_cutoff(E) == pytest.approx(40.0 / math.sqrt(1 - E * E))


def test_energy_grid_is_increasing():
    grid = energy_grid(ScanConfig(points=64, workers=1))
    assert len(grid) == 64
    assert np.all(np.diff(grid) > 0)
    assert grid[0] == pytest.approx(0.5)
    assert grid[-1] == pytest.approx(1.0 - 1e-6, abs=1e-15)


def test_omega_miss_is_decreasing_in_energy():
    energies = (0.5, 0.8, 0.9, 0.92, 0.95, 0.97, 0.99)
    misses = []
    for E in energies:
        shot = shoot_omega(ctx(lam=-1.0, E=E, a=0.1), check_tail=False)
        misses.append(shot.delta_lift - WindingConvention.omega(E).target(0))
    assert all(a > b for a, b in zip(misses, misses[1:]))


def test_shoot_omega_needs_positive_radius():
    with pytest.raises(DomainBoundary):
        shoot_omega(ctx(a=0.0))


def test_cutoff_precheck():
    with pytest.raises(CutoffTooSmall):
        shoot_omega(ctx(lam=-1.0, E=0.9, a=0.1), cutoff_r0=5.0)


def test_tail_residual_is_small():
    shot = shoot_omega(ctx(lam=-1.0, E=0.95, a=0.1))
    assert shot.tail_residual is not None
    assert shot.tail_residual <= 100 * Tolerances().tail_tol
    assert shot.cutoff == default_cutoff(0.95)
    assert shot.omega_profile.is_continuous()


def test_cutoff_doubling_converges():
    c = ctx(lam=-2.3, E=0.985, a=0.1)
    r0 = default_cutoff(c.E)
    deltas = [shoot_omega(c, cutoff_r0=r0 * 2 ** i, check_tail=False).delta_lift for i in range(4)]
    changes = [abs(b - a) for a, b in zip(deltas, deltas[1:])]
    assert changes[0] < 1e-9
    assert changes[0] > changes[1] > changes[2]


def test_unchecked_tail_has_no_residual():
    assert shoot_omega(ctx(lam=-1.0, E=0.95, a=0.1), check_tail=False).tail_residual is None


@pytest.mark.slow
@pytest.mark.parametrize("state", enumerate_states(3, -0.2), ids=lambda s: f"M{s.M}k{s.k}")
def test_half_line_energies(state):
    shot = solve_half_line_energy(state.k, state.gamma, state.M)
    assert shot.E == pytest.approx(state.energy, rel=1e-8)
    assert shot.winding == state.M


@pytest.mark.parametrize("M, k", [(0, -1), (1, -1), (1, 1)])
def test_half_line_profile_matches_gordon(M, k):
    state = HydrogenState(M, k, -0.2)
    shot = half_line_shot(k, state.gamma, state.energy)
    eta = math.sqrt(1 - state.energy ** 2)
    t = shot.profile.t
    mask = (t >= 1e-3) & (t <= 20.0 / eta)
    assert shot.profile.lift[mask] == pytest.approx(gordon_omega_profile(state, t[mask]), abs=1e-6)
    assert shot.winding == M


def test_half_line_without_state():
    with pytest.raises(NoRootInGap):
        solve_half_line_energy(-1, -0.2, 0, scan=ScanConfig(points=8, one_minus_e_min=0.1, one_minus_e_max=0.5, workers=1))


def test_half_line_rejects_supercritical_coupling():
    with pytest.raises(ValueError):
        half_line_shot(-1, -1.2, 0.5)
