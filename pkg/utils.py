import csv
import io
import json
import logging
import math
import sys

from tabulate import tabulate


class UsageError(Exception):
    """Raised by command handlers for invalid or missing flags; reported like an argparse error."""


def setup_logging(verbosity, quiet=False):
    """
    Sets up logging based on the verbosity level.
    Args:
        verbosity (int): The verbosity level. 0 means WARNING, 1 means INFO, 2 means DEBUG, 3 means NOTSET (all messages).
        quiet (bool): Only report errors, whatever the verbosity.
    """
    # Map verbosity to logging levels
    if quiet:
        log_level = logging.ERROR
    elif verbosity == 0:
        log_level = logging.WARNING
    elif verbosity == 1:
        log_level = logging.INFO
    elif verbosity == 2:
        log_level = logging.DEBUG
    else:
        log_level = logging.NOTSET

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )


def flatten_json(nested_json, parent_key='', sep='.'):
    """
    Flattens a nested JSON object into a single-level dictionary with dot notation.

    Args:
        nested_json (dict): The nested JSON object to flatten.
        parent_key (str): The base key to prepend (used in recursion).
        sep (str): The separator between parent and child keys.

    Returns:
        dict: A flattened dictionary with dot notation for nested keys.
    """
    items = []
    for key, value in nested_json.items():
        new_key = f"{parent_key}{sep}{key}" if parent_key else key
        if isinstance(value, dict):
            items.extend(flatten_json(value, new_key, sep=sep).items())
        else:
            items.append((new_key, value))
    return dict(items)


def format_value(value):
    """Render floats with 17 significant digits so identical runs give identical files."""
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, float):
        return float(format(value, ".17g"))
    return value


def _columns(rows):
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def render(data, output):
    """
    Renders a record (dict) or a list of records as text.

    Args:
        data (dict or list): What to render. Nested records are flattened for table and csv.
        output (str): One of 'table', 'csv' or 'json'.

    Returns:
        str: The rendered text; empty when there are no rows and the format is csv.
    """
    if output == 'json':
        return json.dumps(_json_value(data), indent=4) + "\n"

    rows = [data] if isinstance(data, dict) else list(data)
    rows = [flatten_json(row) for row in rows]
    if not rows:
        return ""
    columns = _columns(rows)
    if output == 'csv':
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(column)) for column in columns])
        return buffer.getvalue()
    return tabulate([[row.get(column) for column in columns] for row in rows], headers=columns) + "\n"


def emit(data, args):
    """Writes the rendered data to --out, or to stdout."""
    text = render(data, args.output)
    if getattr(args, 'out', None):
        with open(args.out, "w") as f:
            f.write(text)
        logging.info(f"Wrote {args.out}")
    else:
        sys.stdout.write(text)


def load_config_file(path):
    """
    Reads a JSON config file whose keys mirror the long flag names (dashes as underscores).

    Returns:
        dict: The parsed mapping.
    """
    try:
        with open(path) as f:
            values = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config file {path}: {e}")
    if not isinstance(values, dict):
        raise UsageError(f"config file {path} must hold a JSON object")
    return {key.replace('-', '_'): value for key, value in values.items()}


def require(args, *names):
    """Raises UsageError naming the first flag in `names` that is unset."""
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"the following argument is required: --{name.replace('_', '-')}")


def require_positive(args, name):
    """Raises UsageError unless the flag `name` is set to a positive number."""
    value = getattr(args, name)
    if not value > 0:
        raise UsageError(f"--{name.replace('_', '-')} must be positive, got {value}")


def add_output_arguments(parser, default='table'):
    parser.add_argument('--output', '-o', choices=['table', 'csv', 'json'], default=default, help=f'Output format (default: {default})')
    parser.add_argument('--out', help='Write to this file instead of stdout')


def add_solver_arguments(parser):
    """Tolerance and scan overrides shared by every command that runs the shooting solver."""
    group = parser.add_argument_group('solver options')
    group.add_argument('--ode-rel', type=float, help='Relative tolerance of the integrator (default 1e-10)')
    group.add_argument('--ode-abs', type=float, help='Absolute tolerance of the integrator (default 1e-12)')
    group.add_argument('--lambda-tol', type=float, help='Root tolerance on lambda (default 1e-9)')
    group.add_argument('--tol-e', dest='energy_tol', type=float, help='Root tolerance on E (default 1e-11)')
    group.add_argument('--tail-tol', type=float, help='Cutoff-doubling tolerance (default 1e-8)')
    group.add_argument('--epsilon', type=float, help='Distance of the angular start from the poles (default 1e-6)')
    group.add_argument('--scan-points', dest='points', type=int, help='Points of the energy scan (default 64)')
    group.add_argument('--workers', type=int, help='Worker processes for scans (default $ZGKN_WORKERS or 1)')


def add_state_arguments(parser, windings=True):
    parser.add_argument('--a', type=float, help='Ring radius in reduced Compton wavelengths')
    parser.add_argument('--gamma', type=float, help='Coupling gamma = -eQ (attractive for gamma < 0)')
    parser.add_argument('--kappa2', dest='two_kappa', type=int, help='Twice the azimuthal quantum number kappa (odd)')
    if windings:
        parser.add_argument('--ntheta', dest='n_theta', type=int, help='Winding number of the Theta connector')
        parser.add_argument('--nomega', dest='n_omega', type=int, help='Winding number of the Omega connector')
