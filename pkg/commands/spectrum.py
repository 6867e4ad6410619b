import logging

from utils import UsageError, add_output_arguments, add_solver_arguments, add_state_arguments, emit, require, require_positive
from zgkn.errors import NoRootInGap, ZgknError
from zgkn.labels import enumerate_labels, label_to_winding
from zgkn.model import ModelParams
from zgkn.spectrum import solve_bound_state


def setup_parser(subparsers):
    """Sets up the argparse subcommand for the labelled spectrum up to a principal number."""
    spectrum_parser = subparsers.add_parser(
        'spectrum',
        description='Solve every labelled state n l_j (m_j) with n <= nmax',
        help='Tabulate the labelled spectrum'
    )
    add_state_arguments(spectrum_parser, windings=False)
    spectrum_parser.add_argument('--nmax', type=int, help='Largest principal quantum number')
    add_solver_arguments(spectrum_parser)
    add_output_arguments(spectrum_parser)
    spectrum_parser.set_defaults(func=list_spectrum)


def spectrum_rows(params, nmax, config):
    """One row per label; states that fail to converge are kept with their status."""
    rows = []
    for label in enumerate_labels(nmax):
        index = label_to_winding(label)
        row = {
            "term": label.term,
            "mj": label.mj,
            "n_theta": index.n_theta,
            "n_omega": index.n_omega,
            "two_kappa": index.two_kappa,
            "E": None,
            "lambda": None,
            "status": "found",
        }
        try:
            state = solve_bound_state(params.with_two_kappa(index.two_kappa), index, config)
            row["E"], row["lambda"] = state.E, state.lam
        except NoRootInGap as e:
            logging.warning(f"{label.term} (mj={label.mj}): {str(e)}")
            row["status"] = "not-found"
        except ZgknError as e:
            logging.error(f"{label.term} (mj={label.mj}): {str(e)}")
            row["status"] = "error"
        rows.append(row)
    return rows


def list_spectrum(args, config):
    require(args, 'a', 'gamma', 'nmax')
    require_positive(args, 'a')
    if args.nmax < 0:
        raise UsageError(f"--nmax must be non-negative, got {args.nmax}")
    params = ModelParams(args.a, args.gamma)
    rows = spectrum_rows(params, args.nmax, config)
    logging.info(f"Solved {len(rows)} labelled states")
    emit(rows, args)
    return 0
