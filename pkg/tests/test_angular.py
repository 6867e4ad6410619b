import math

import numpy as np
import pytest

from zgkn.angular import (
    AngularContext,
    angular_amplitude,
    exact_amplitude,
    exact_k,
    exact_theta_profile,
    n_from_k,
    n_from_winding,
    shoot_theta,
    solve_lambda,
    theta_rhs,
    winding_from_n,
)
from zgkn.config import BracketConfig, Tolerances
from zgkn.errors import BracketNotFound, DomainBoundary, ZeroN

ORACLE_N = [1, -1, 2, -2, 3, -3, 4, -4]
ORACLE_TWO_KAPPA = [1, -1, 3, -3, 5, -5]


def test_theta_rhs_examples():
    assert theta_rhs(1.0, 0.0, AngularContext(0.0, 0.9, 1), 0.0) == 0.0
    assert theta_rhs(math.pi / 2, math.pi / 2, AngularContext(0.0, 0.9, 1), 1.0) == pytest.approx(1.0)
    assert theta_rhs(math.pi / 4, math.pi / 2, AngularContext(0.1, 0.9, 1), 1.0) == pytest.approx(0.7130657, abs=1e-6)


@pytest.mark.parametrize("theta", [0.0, math.pi, -0.1])
def test_theta_rhs_outside_interval(theta):
    with pytest.raises(DomainBoundary):
        theta_rhs(theta, 0.0, AngularContext(0.0, 0.9, 1), 0.0)


@pytest.mark.parametrize("two_kappa, lam, expected", [
    (1, -1.0, -math.pi),
    (-1, -1.0, -math.pi),
    (-1, 1.0, math.pi),
    (1, 1.0, math.pi),
])
def test_shoot_theta_connectors_at_zero_radius(two_kappa, lam, expected):
    delta, _ = shoot_theta(AngularContext(0.0, 0.9, two_kappa), lam)
    assert delta == pytest.approx(expected, abs=1e-6)


def test_shoot_theta_between_eigenvalues():
    delta, _ = shoot_theta(AngularContext(0.0, 0.9, 1), 0.0)
    assert -math.pi < delta < math.pi


def test_shoot_theta_is_increasing_in_lambda():
    ctx = AngularContext(0.1, 0.9, 1)
    deltas = [shoot_theta(ctx, lam)[0] for lam in np.linspace(-3.0, 3.0, 13)]
    assert all(a < b for a, b in zip(deltas, deltas[1:]))


def test_shoot_theta_checks_epsilon():
    with pytest.raises(ValueError):
        shoot_theta(AngularContext(0.0, 0.9, 1), -1.0, epsilon=1e-2)


@pytest.mark.parametrize("two_kappa, n_theta, expected", [
    (1, 0, -1.0),
    (3, 1, -3.0),
    (1, -1, 1.0),
])
def test_solve_lambda_at_zero_radius(two_kappa, n_theta, expected):
    solution = solve_lambda(AngularContext(0.0, 0.9, two_kappa), n_theta)
    assert solution.lam == pytest.approx(expected, abs=1e-8)
    assert solution.winding == n_theta
    assert solution.residual < 1e-6


@pytest.mark.slow
@pytest.mark.parametrize("two_kappa", ORACLE_TWO_KAPPA)
@pytest.mark.parametrize("N", ORACLE_N)
def test_solve_lambda_matches_exact_eigenvalues(N, two_kappa):
    ctx = AngularContext(0.0, 0.9, two_kappa)
    solution = solve_lambda(ctx, winding_from_n(N))
    assert solution.lam == pytest.approx(exact_k(N, ctx.kappa), abs=1e-8)


@pytest.mark.parametrize("N, two_kappa", [(1, 1), (2, 1), (-1, 3), (-2, -1)])
def test_profile_matches_exact_connector(N, two_kappa):
    assert_profile_matches(N, two_kappa)


@pytest.mark.slow
@pytest.mark.parametrize("two_kappa", ORACLE_TWO_KAPPA)
@pytest.mark.parametrize("N", ORACLE_N)
def test_profile_oracle_grid(N, two_kappa):
    assert_profile_matches(N, two_kappa)


def assert_profile_matches(N, two_kappa):
    ctx = AngularContext(0.0, 0.9, two_kappa)
    solution = solve_lambda(ctx, winding_from_n(N))
    t = solution.theta_profile.t
    nodes = t[(t >= 1e-3) & (t <= math.pi - 1e-3)]
    assert solution.theta_profile.lift[(t >= 1e-3) & (t <= math.pi - 1e-3)] == pytest.approx(
        exact_theta_profile(N, ctx.kappa, nodes), abs=1e-6
    )


def test_solve_lambda_with_ring():
    ctx = AngularContext(0.1, 0.95, 1)
    solution = solve_lambda(ctx, 0)
    assert solution.winding == 0
    assert solution.delta_lift == pytest.approx(-math.pi, abs=1e-6)
    assert solution.lam != pytest.approx(-1.0, abs=1e-6)


def test_epsilon_halving_moves_lambda_little():
    ctx = AngularContext(0.1, 0.9, 1)
    coarse = solve_lambda(ctx, 0, tols=Tolerances(lambda_tol=1e-12, epsilon=1e-6))
    fine = solve_lambda(ctx, 0, tols=Tolerances(lambda_tol=1e-12, epsilon=5e-7))
    assert abs(coarse.lam - fine.lam) < 1e-9


def test_kappa_reflection_at_zero_radius():
    for n_theta in (0, 1, -1):
        plus = solve_lambda(AngularContext(0.0, 0.9, 3), n_theta).lam
        minus = solve_lambda(AngularContext(0.0, 0.9, -3), n_theta).lam
        assert plus == pytest.approx(minus, abs=1e-8)


def test_bracket_too_narrow():
    search = BracketConfig(half_width=0.1, step=0.05, max_widenings=0)
    with pytest.raises(BracketNotFound):
        solve_lambda(AngularContext(0.0, 0.9, 1), 3, search=search.centered(-1.0))


@pytest.mark.parametrize("N, kappa, k", [(1, 0.5, -1), (-2, 1.5, 3), (1, -0.5, -1), (2, 1.5, -3)])
def test_exact_k(N, kappa, k):
    assert exact_k(N, kappa) == k
    assert n_from_k(k, kappa) == N


def test_index_maps():
    assert [n_from_winding(n) for n in (-2, -1, 0, 1)] == [-2, -1, 1, 2]
    assert [winding_from_n(N) for N in (-2, -1, 1, 2)] == [-2, -1, 0, 1]
    with pytest.raises(ZeroN):
        exact_k(0, 0.5)
    with pytest.raises(ZeroN):
        winding_from_n(0)
    with pytest.raises(ValueError):
        n_from_k(1, 1.5)
    with pytest.raises(ValueError):
        exact_k(1, 1.0)


def test_exact_profile_examples():
    theta = np.linspace(0.1, math.pi - 0.1, 9)
    assert exact_theta_profile(1, 0.5, theta) == pytest.approx(-theta, abs=1e-14)
    assert exact_theta_profile(-1, 0.5, math.pi / 2) == pytest.approx(math.pi / 2)
    assert exact_theta_profile(1, -0.5, math.pi / 2) == pytest.approx(math.pi / 2)
    assert exact_theta_profile(1, 0.5, math.pi - 1e-9) == pytest.approx(-math.pi, abs=1e-6)
    assert exact_theta_profile(2, 0.5, math.pi - 1e-9) == pytest.approx(-3 * math.pi, abs=1e-6)


def test_exact_profile_domain():
    with pytest.raises(DomainBoundary):
        exact_theta_profile(1, 0.5, 0.0)
    with pytest.raises(ZeroN):
        exact_theta_profile(0, 0.5, 1.0)


def test_exact_amplitude_of_ground_state():
    theta = np.linspace(0.1, math.pi - 0.1, 9)
    assert exact_amplitude(1, 0.5, theta) == pytest.approx(math.sqrt(2.0) * np.sqrt(np.sin(theta)))


def test_amplitude_along_ground_connector():
    ctx = AngularContext(0.0, 0.9, 1)
    solution = solve_lambda(ctx, 0)
    theta = np.linspace(0.1, math.pi - 0.1, 25)
    amplitude = angular_amplitude(ctx, solution, theta)
    assert amplitude.S == pytest.approx(np.sqrt(np.sin(theta)), abs=1e-6)
    assert amplitude.Theta == pytest.approx(-theta, abs=1e-6)
    assert float(angular_amplitude(ctx, solution, [math.pi / 2]).S[0]) == pytest.approx(1.0, abs=1e-12)


def test_amplitude_stays_finite_with_ring():
    ctx = AngularContext(0.1, 0.9, 1)
    amplitude = angular_amplitude(ctx, solve_lambda(ctx, 0), points=101)
    assert np.all(np.isfinite(amplitude.S))
    assert amplitude.theta[0] > 0 and amplitude.theta[-1] < math.pi


def test_amplitude_grid_must_stay_in_range():
    ctx = AngularContext(0.0, 0.9, 1)
    with pytest.raises(DomainBoundary):
        angular_amplitude(ctx, solve_lambda(ctx, 0), [0.0, 1.0])
