import logging

from utils import add_output_arguments, add_solver_arguments, add_state_arguments, emit, require, require_positive
from zgkn.errors import MultipleRoots
from zgkn.model import ModelParams, StateIndex
from zgkn.spectrum import solve_bound_state


def setup_parser(subparsers):
    """Sets up the argparse subcommand for a single bound state."""
    solve_parser = subparsers.add_parser(
        'solve',
        description='Solve one bound state by its winding numbers (N_theta, N_omega, 2 kappa)',
        help='Solve one bound state'
    )
    add_state_arguments(solve_parser)
    add_solver_arguments(solve_parser)
    add_output_arguments(solve_parser, default='json')
    solve_parser.set_defaults(func=solve_state)


def solve_state(args, config):
    """Solves the state and writes one record {params, index, label, E, lambda, status, residuals, solver}.

    When the scan finds several roots, every converged state is written as a
    list of records before the error is passed on.
    """
    require(args, 'a', 'gamma', 'two_kappa', 'n_theta', 'n_omega')
    require_positive(args, 'a')
    params = ModelParams(args.a, args.gamma, args.two_kappa)
    index = StateIndex(args.n_theta, args.n_omega, args.two_kappa)
    logging.info(f"Solving {index} at a={params.a}, gamma={params.gamma}")

    try:
        state = solve_bound_state(params, index, config)
    except MultipleRoots as e:
        emit([s.as_record(config) for s in e.states], args)
        raise
    emit(state.as_record(config), args)
    return 0
