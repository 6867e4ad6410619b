import logging
import re

from utils import UsageError, add_output_arguments, add_solver_arguments, add_state_arguments, emit, require
from zgkn.angular import AngularContext, shoot_theta, solve_lambda
from zgkn.cylinder import (
    connector_orbit,
    omega_cylinder,
    omega_equilibria,
    sample_portrait,
    theta_cylinder,
    theta_equilibria,
)
from zgkn.radial import RadialContext, shoot_omega

GRID_RE = re.compile(r"^(\d+)x(\d+)$")


def setup_parser(subparsers):
    """Sets up the argparse subcommand for phase-portrait samples."""
    portrait_parser = subparsers.add_parser(
        'portrait',
        description='Sample the Theta or Omega flow on its cylinder, with boundary equilibria and one orbit',
        help='Emit phase-portrait data'
    )
    portrait_parser.add_argument('--system', choices=['theta', 'omega'], help='Which cylinder to sample')
    add_state_arguments(portrait_parser)
    portrait_parser.add_argument('--energy', type=float, help='Trial energy E in (0, 1)')
    portrait_parser.add_argument('--lambda', dest='lam', type=float, help='Angular eigenvalue (solved from --ntheta when omitted)')
    portrait_parser.add_argument('--grid', default='16x16', help='Samples as NxM (default: 16x16)')
    add_solver_arguments(portrait_parser)
    add_output_arguments(portrait_parser, default='csv')
    portrait_parser.set_defaults(func=portrait)


def parse_grid(text):
    match = GRID_RE.match(text.strip())
    if match is None:
        raise UsageError(f"--grid must look like 16x16, got {text!r}")
    nx, ny = int(match.group(1)), int(match.group(2))
    if nx < 1 or ny < 1:
        raise UsageError(f"--grid must be at least 1x1, got {text!r}")
    return nx, ny


def _lambda(args, config, angular_ctx):
    if args.lam is not None:
        return args.lam
    require(args, 'n_theta')
    return solve_lambda(angular_ctx, args.n_theta, config.bracket, config.tolerances).lam


def portrait_rows(args, config):
    nx, ny = parse_grid(args.grid)
    if args.system == 'omega':
        require(args, 'energy', 'gamma')
    # E only enters the Theta-system through a E sin(theta)
    energy = args.energy if args.energy is not None else 0.0
    angular_ctx = AngularContext(args.a, energy, args.two_kappa)
    lam = _lambda(args, config, angular_ctx)

    if args.system == 'theta':
        system = theta_cylinder(angular_ctx, lam)
        equilibria = theta_equilibria(angular_ctx, lam)
        _, orbit = shoot_theta(angular_ctx, lam, tols=config.tolerances)
    else:
        radial_ctx = RadialContext(args.a, args.gamma, args.two_kappa, lam, args.energy)
        system = omega_cylinder(radial_ctx)
        equilibria = omega_equilibria(radial_ctx)
        orbit = shoot_omega(radial_ctx, tols=config.tolerances, check_tail=False).omega_profile

    rows = sample_portrait(system, nx, ny)
    rows.extend(
        {"kind": "equilibrium", "name": eq.name, "x": eq.x, "y": eq.y, "type": eq.kind}
        for eq in equilibria
    )
    rows.extend(connector_orbit(system, orbit))
    logging.info(f"{args.system} portrait at lambda={lam:.12g}: {len(rows)} rows")
    return rows


def portrait(args, config):
    require(args, 'system', 'a', 'two_kappa')
    emit(portrait_rows(args, config), args)
    return 0
