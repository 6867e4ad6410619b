import logging

from utils import UsageError, add_output_arguments, add_solver_arguments, add_state_arguments, emit, require
from zgkn.model import A_MAX, ModelParams, StateIndex
from zgkn.spectrum import solve_bound_state

OUTSIDE_WINDOW = "outside-theorem-window"


def setup_parser(subparsers):
    """Sets up the argparse subcommand for following one state across ring radii."""
    sweep_parser = subparsers.add_parser(
        'sweep',
        description='Follow one bound state across a list of ring radii a',
        help='Sweep a for one state'
    )
    add_state_arguments(sweep_parser)
    sweep_parser.add_argument('--a-list', help='Comma-separated ring radii, e.g. 0.02,0.01,0.005')
    add_solver_arguments(sweep_parser)
    add_output_arguments(sweep_parser, default='csv')
    sweep_parser.set_defaults(func=sweep_state)


def parse_a_list(text):
    """Parses '0.02,0.01' into floats; an empty string gives an empty list."""
    values = []
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        try:
            value = float(item)
        except ValueError:
            raise UsageError(f"--a-list entry {item!r} is not a number")
        if value <= 0:
            raise UsageError(f"--a-list entries must be positive, got {value}")
        values.append(value)
    return values


def sweep_state(args, config):
    require(args, 'gamma', 'two_kappa', 'n_theta', 'n_omega', 'a_list')
    radii = parse_a_list(args.a_list)
    index = StateIndex(args.n_theta, args.n_omega, args.two_kappa)

    rows = []
    for a in radii:
        state = solve_bound_state(ModelParams(a, args.gamma, args.two_kappa), index, config)
        flag = OUTSIDE_WINDOW if a >= A_MAX else ""
        rows.append({"a": a, "E": state.E, "lambda": state.lam, "flag": flag})
        logging.info(f"a={a}: E={state.E:.15g}")
    emit(rows, args)
    return 0
