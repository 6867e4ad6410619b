import logging
import math

from utils import UsageError, add_output_arguments, emit, require
from zgkn.hydrogen import THALLER_GAMMA_MIN, count_denominator_zeros, enumerate_states
from zgkn.labels import SpectroLabel


def setup_parser(subparsers):
    """Sets up the argparse subcommand for the exact a = 0 (Dirac-Coulomb) table."""
    hydrogen_parser = subparsers.add_parser(
        'hydrogen',
        description='Exact Sommerfeld energies of the a = 0 limit',
        help='Tabulate the a = 0 oracle'
    )
    hydrogen_parser.add_argument('--gamma', type=float, help='Coupling gamma in (-sqrt(3)/2, 0]')
    hydrogen_parser.add_argument('--nmax', type=int, help='Largest principal quantum number')
    add_output_arguments(hydrogen_parser)
    hydrogen_parser.set_defaults(func=list_hydrogen)


def hydrogen_rows(gamma, nmax):
    rows = []
    for state in enumerate_states(nmax, gamma):
        k = state.k
        l = abs(k) if k > 0 else abs(k) - 1
        two_j = 2 * abs(k) - 1
        rows.append({
            "n": state.n,
            "k": k,
            "M": state.M,
            "term": SpectroLabel(state.n, l, two_j, two_j).term,
            "E": state.energy,
            # the pole count needs E < 1
            "poles": count_denominator_zeros(state) if gamma < 0 else None,
        })
    return rows


def list_hydrogen(args, config):
    require(args, 'gamma', 'nmax')
    if not THALLER_GAMMA_MIN < args.gamma <= 0.0:
        raise UsageError(f"--gamma must lie in (-sqrt(3)/2, 0] = ({THALLER_GAMMA_MIN:.6f}, 0], got {args.gamma}")
    if args.nmax < 0:
        raise UsageError(f"--nmax must be non-negative, got {args.nmax}")
    rows = hydrogen_rows(args.gamma, args.nmax)
    if math.isclose(args.gamma, 0.0):
        logging.info("gamma = 0 is the free limit; every energy is 1")
    emit(rows, args)
    return 0
