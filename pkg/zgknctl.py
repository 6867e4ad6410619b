#!/usr/bin/env python3

import argparse
import logging
import sys

from utils import UsageError, load_config_file, setup_logging
from commands import solve, spectrum, hydrogen, sweep, portrait, profile
from zgkn.config import SolverConfig
from zgkn.errors import MultipleRoots, NoRootInGap, ZgknError


# Enable tab completion if installed
try:
    import argcomplete
except ImportError:
    pass

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3
EXIT_NUMERICAL = 4


class CustomArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        """
        Override the default error method to provide better error message formatting.
        """
        # Print a custom error message
        sys.stderr.write(f"\nError: {message}\n\n")

        # Print usage message
        self.print_usage(sys.stderr)

        # Print available commands in a more readable format (top-level parser only)
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                sys.stderr.write("\nAvailable subcommands:\n")
                for choice, subparser in action.choices.items():
                    sys.stderr.write(f"  - {choice}: {subparser.description}\n")
        sys.exit(EXIT_USAGE)


def build_parser():
    parser = CustomArgumentParser(
        description="zgknctl: Bound states of the Dirac equation on the zero-gravity Kerr-Newman spacetime. "
                    "Units: hbar = c = m = 1; the ring radius a is in electron reduced Compton wavelengths, "
                    "so the existence bound a_max = 1 - 1/sqrt(2) reads (1 - 1/sqrt(2)) hbar/(mc)."
    )

    # Global options
    parser.add_argument('-v', '--verbose', action='count', default=0, help='Increase verbosity (can be used multiple times)')
    parser.add_argument('--quiet', action='store_true', help='Enable quiet mode (errors only)')
    parser.add_argument('--config', help='JSON file of flag defaults (keys are long flag names); explicit flags win')

    # Create subparsers for commands
    subparsers = parser.add_subparsers(dest='command', help='Command to run', parser_class=CustomArgumentParser)
    subparsers.required = True  # Ensure a subcommand is required to be provided

    # Register command subparsers by calling their setup function
    solve.setup_parser(subparsers)
    spectrum.setup_parser(subparsers)
    hydrogen.setup_parser(subparsers)
    sweep.setup_parser(subparsers)
    portrait.setup_parser(subparsers)
    profile.setup_parser(subparsers)
    return parser, subparsers


def main(argv=None):
    parser, subparsers = build_parser()

    # Enable tab completion if available
    if 'argcomplete' in globals():
        argcomplete.autocomplete(parser)

    args = parser.parse_args(argv)

    # Values from --config become defaults, then the command line is read again so flags win
    if args.config:
        try:
            values = load_config_file(args.config)
        except UsageError as e:
            parser.error(str(e))
        values.pop('func', None)
        for subparser in subparsers.choices.values():
            subparser.set_defaults(**values)
        args = parser.parse_args(argv)

    # Setup logging based on verbose and quiet flags
    setup_logging(args.verbose, args.quiet)

    try:
        config = SolverConfig.from_mapping(vars(args))
    except ValueError as e:
        parser.error(str(e))

    try:
        return args.func(args, config) or EXIT_OK
    except UsageError as e:
        subparsers.choices[args.command].error(str(e))
    except NoRootInGap as e:
        logging.error(f"No bound state: {str(e)}")
        return EXIT_NOT_FOUND
    except MultipleRoots as e:
        logging.error(f"Several bound states: {str(e)}")
        return EXIT_NUMERICAL
    except ZgknError as e:
        logging.error(f"Numerical failure: {str(e)}")
        return EXIT_NUMERICAL
    except ValueError as e:
        subparsers.choices[args.command].error(str(e))
    except Exception as e:
        logging.error(f"Error: {str(e)}")
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
