import math

import numpy as np
import pytest

from zgkn.errors import DomainBoundary, IntegrationError, NonFiniteField, NotNearTarget
from zgkn.odeflow import (
    AngleField,
    LiftedTrajectory,
    WindingConvention,
    cumulative_quad,
    integrate_lifted,
    lift_to_winding,
)


def field(rhs, lower=-10.0, upper=10.0):
    return AngleField(rhs, lower, upper)


def test_zero_field_keeps_the_lift():
    traj = integrate_lifted(field(lambda t, y: 0.0), 0.0, 1.0, 1.5, 1e-10, 1e-12)
    assert traj.final == pytest.approx(1.5, abs=1e-15)
    assert traj.delta == pytest.approx(0.0, abs=1e-15)


def test_constant_field_is_linear():
    traj = integrate_lifted(field(lambda t, y: 0.7), 0.0, 3.0, 0.0, 1e-10, 1e-12)
    assert traj.final == pytest.approx(2.1, rel=1e-10)


def test_angular_ground_state_connector():
    # y' = -2 kappa sin(y)/sin(t) + 2 lambda with kappa = 1/2, lambda = -1 has the connector y = -t
    eps = 1e-6
    angular = AngleField(lambda t, y: -math.sin(y) / math.sin(t) - 2.0, 0.0, math.pi)
    slope = 2.0 * -1.0 / (1.0 + 1.0)
    traj = integrate_lifted(angular, eps, math.pi - eps, slope * eps, 1e-10, 1e-12)
    assert traj.final == pytest.approx(-(math.pi - eps), abs=1e-7)


def test_backward_integration_stores_increasing_nodes():
    traj = integrate_lifted(field(lambda t, y: t), 2.0, 0.0, 1.0, 1e-10, 1e-12)
    assert not traj.forward
    assert np.all(np.diff(traj.t) > 0)
    assert traj.start_t == 2.0 and traj.end_t == 0.0
    assert traj.initial == 1.0
    assert traj.final == pytest.approx(1.0 - 2.0, abs=1e-9)


def test_reversibility_on_smooth_field():
    smooth = field(lambda t, y: math.cos(t) + 0.5 * math.sin(y))
    there = integrate_lifted(smooth, 0.0, 3.0, 0.3, 1e-11, 1e-13)
    back = integrate_lifted(smooth, 3.0, 0.0, there.final, 1e-11, 1e-13)
    assert back.final == pytest.approx(0.3, abs=1e-8)


def test_periodic_shift_is_exact():
    smooth = field(lambda t, y: math.cos(t) + 0.5 * math.sin(y))
    a = integrate_lifted(smooth, 0.0, 4.0, 0.2, 1e-10, 1e-12)
    b = integrate_lifted(smooth, 0.0, 4.0, 0.2 + 2 * math.pi, 1e-10, 1e-12)
    assert b.final - a.final == pytest.approx(2 * math.pi, abs=1e-8)


def test_halving_tolerances_changes_little():
    smooth = field(lambda t, y: math.cos(t) + 0.5 * math.sin(y))
    loose = integrate_lifted(smooth, 0.0, 5.0, 0.1, 1e-8, 1e-10)
    tight = integrate_lifted(smooth, 0.0, 5.0, 0.1, 5e-9, 5e-11)
    assert abs(loose.final - tight.final) < 10 * 1e-8 * max(1.0, abs(loose.final))


def test_lift_stays_continuous_on_fast_rotation():
    traj = integrate_lifted(field(lambda t, y: 40.0), 0.0, 1.0, 0.0, 1e-10, 1e-12)
    assert traj.is_continuous()
    assert traj.final == pytest.approx(40.0, rel=1e-10)


def test_dense_output_matches_nodes():
    traj = integrate_lifted(field(lambda t, y: math.cos(t)), 0.0, 2.0, 0.0, 1e-10, 1e-12)
    assert traj(traj.t[3]) == pytest.approx(traj.lift[3])
    assert float(traj(1.0)) == pytest.approx(math.sin(1.0), abs=1e-6)


def test_domain_is_checked():
    with pytest.raises(DomainBoundary):
        integrate_lifted(AngleField(lambda t, y: 0.0, 0.0, 1.0), 0.0, 2.0, 0.0, 1e-10, 1e-12)


def test_non_finite_field_is_reported():
    with pytest.raises(NonFiniteField):
        integrate_lifted(field(lambda t, y: math.nan), 0.0, 1.0, 0.0, 1e-10, 1e-12)


def test_blow_up_stops_the_integrator():
    with pytest.raises(IntegrationError):
        integrate_lifted(AngleField(lambda t, y: 1.0 / (1.0 - t) ** 2 if t < 1.0 else math.inf, 0.0, 1.0), 0.0, 1.0, 0.0, 1e-10, 1e-12)


def test_stitch_and_shift():
    smooth = field(lambda t, y: 1.0)
    left = integrate_lifted(smooth, 0.0, 1.0, 0.0, 1e-10, 1e-12)
    right = integrate_lifted(smooth, 2.0, 1.0, 2.0 + 2 * math.pi, 1e-10, 1e-12)
    shift = 2 * math.pi * round((left.final - right.final) / (2 * math.pi))
    joined = LiftedTrajectory.stitch(left, right.shifted(shift))
    assert np.all(np.diff(joined.t) > 0)
    assert joined.initial == 0.0
    assert joined.final == pytest.approx(2.0)
    assert joined.is_continuous()
    ts, ys = joined.window(0.5, 1.5)
    assert ts.min() >= 0.5 and ts.max() <= 1.5 and len(ts) == len(ys)


def test_periodicity_defect_of_angle_field():
    f = AngleField(lambda t, y: math.cos(y) + math.sin(t) * math.sin(y), 0.0, 1.0)
    assert f.periodicity_defect(np.linspace(0, 1, 5), np.linspace(-3, 3, 7)) < 1e-12


@pytest.mark.parametrize("delta, expected", [
    (-math.pi, 0),
    (math.pi, -1),
    (-3 * math.pi, 1),
    (-math.pi + 0.2, 0),
])
def test_theta_windings(delta, expected):
    assert lift_to_winding(delta, WindingConvention.theta()) == expected


def test_omega_winding():
    E = 0.9
    assert lift_to_winding(math.pi - 2 * math.acos(E), WindingConvention.omega(E)) == 0
    assert lift_to_winding(math.pi - 2 * math.acos(E) - 4 * math.pi, WindingConvention.omega(E)) == 2


def test_half_line_winding():
    convention = WindingConvention.half_line(0.95, start=-0.3)
    assert lift_to_winding(convention.target(3), convention) == 3


def test_lift_far_from_targets():
    with pytest.raises(NotNearTarget) as info:
        lift_to_winding(0.0, WindingConvention.theta())
    assert info.value.distance == pytest.approx(math.pi)


def test_omega_convention_needs_energy_in_gap():
    with pytest.raises(DomainBoundary):
        WindingConvention.omega(1.0)


def test_cumulative_quad_from_interior_origin():
    grid = np.array([0.0, 0.5, 1.0, 2.0])
    values = cumulative_quad(math.cos, 1.0, grid)
    assert values == pytest.approx(np.sin(grid) - math.sin(1.0), abs=1e-10)
