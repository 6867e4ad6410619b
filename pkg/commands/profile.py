import logging

import numpy as np

from utils import UsageError, add_output_arguments, add_solver_arguments, add_state_arguments, emit, require, require_positive
from zgkn.angular import angular_amplitude
from zgkn.model import ModelParams, StateIndex
from zgkn.radial import radial_amplitude
from zgkn.spectrum import solve_bound_state


def setup_parser(subparsers):
    """Sets up the argparse subcommand for the radial and angular profiles of one state."""
    profile_parser = subparsers.add_parser(
        'profile',
        description='Radial (r, Omega, R, u, v) and angular (theta, Theta, S) profiles of one bound state',
        help='Emit the profiles of one state'
    )
    add_state_arguments(profile_parser)
    profile_parser.add_argument('--rmax', type=float, default=20.0, help='Radial samples cover [-rmax, rmax] (default: 20)')
    profile_parser.add_argument('--points', dest='samples', type=int, default=201, help='Samples per section (default: 201)')
    add_solver_arguments(profile_parser)
    add_output_arguments(profile_parser, default='csv')
    profile_parser.set_defaults(func=profile)


def profile_rows(state, rmax, samples):
    shot = state.radial
    r0 = shot.cutoff
    if rmax > r0:
        logging.warning(f"--rmax {rmax} exceeds the cutoff r0={r0:.6g}; clipping")
        rmax = r0
    radial = radial_amplitude(shot.context, shot, np.linspace(-rmax, rmax, samples))
    angular = angular_amplitude(state.angular.context, state.angular, points=samples)

    rows = [
        {"section": "radial", "x": r, "phase": w, "amplitude": R, "u": u, "v": v}
        for r, w, R, u, v in zip(radial.r, radial.Omega, radial.R, radial.u, radial.v)
    ]
    rows.extend(
        {"section": "angular", "x": t, "phase": T, "amplitude": S, "u": None, "v": None}
        for t, T, S in zip(angular.theta, angular.Theta, angular.S)
    )
    return [{key: (float(value) if value is not None and key != "section" else value)
             for key, value in row.items()} for row in rows]


def profile(args, config):
    require(args, 'a', 'gamma', 'two_kappa', 'n_theta', 'n_omega')
    require_positive(args, 'a')
    if args.rmax <= 0 or args.samples < 2:
        raise UsageError("--rmax must be positive and --points at least 2")
    params = ModelParams(args.a, args.gamma, args.two_kappa)
    state = solve_bound_state(params, StateIndex(args.n_theta, args.n_omega, args.two_kappa), config)
    emit(profile_rows(state, args.rmax, args.samples), args)
    return 0
