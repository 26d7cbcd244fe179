"""
Command line argument parsing for the Lie-algebra QRT laboratory.
Handles subcommands, global flags and flag-conflict validation.
"""

import argparse
import logging
import re
import sys
from typing import List

from ..config import get_config
from ..errors import UsageError

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "thm1", "fig2", "fig3", "scan", "structures")

# Flags taking grids or number lists whose first entry may be negative
NUMERIC_VALUE_FLAGS = ("--alpha", "--eta", "--m")
_NUMERIC_VALUE = re.compile(r"^-?(\d|\.\d)")


def join_numeric_values(argv: List[str]) -> List[str]:
    """
    Attach a value starting with "-" to its flag ("--alpha -2:2:41" to
    "--alpha=-2:2:41") so argparse does not read it as an option.
    """
    joined = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in NUMERIC_VALUE_FLAGS and index + 1 < len(argv) and _NUMERIC_VALUE.match(argv[index + 1]):
            joined.append(f"{token}={argv[index + 1]}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


class _RaisingParser(argparse.ArgumentParser):
    """argparse parser that prints usage to stderr and raises UsageError instead of exiting."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


class ArgumentParser:
    """Handles command line argument parsing for the laboratory."""

    def __init__(self):
        """Initialize argument parser."""
        self.parser = _RaisingParser(
            prog='lie-qrt',
            description='Numerical laboratory for Lie-algebra quantum resource theories'
        )
        self._setup_arguments()
        logger.debug("Initialized ArgumentParser")

    def _common_parser(self) -> argparse.ArgumentParser:
        run = get_config().run
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--seed', type=int, default=0, help='Root seed (unsigned 64-bit)')
        common.add_argument('--out', help='Output file path')
        common.add_argument('--format', choices=['csv', 'json'], default=run.output_format,
                            help='Output format')
        common.add_argument('--workers', type=int, default=run.workers, help='Worker threads')
        common.add_argument('--tolerance', type=float, default=1e-8,
                            help='Report-only flagging tolerance (never loosens hard invariants)')
        common.add_argument('--log-level', default=run.log_level,
                            choices=['debug', 'info', 'warning', 'error'], help='Logging level')
        return common

    @staticmethod
    def _add_rep_arguments(parser: argparse.ArgumentParser, with_rep: bool = True) -> None:
        if with_rep:
            parser.add_argument('--rep', choices=['su2', 'so2n', 'local'], default='su2',
                                help='Representation family')
            parser.add_argument('--modes', type=int, help='Fermionic modes n for so2n (default 8)')
            parser.add_argument('--dims', help='Local dimensions dA,dB for local (default 2,2)')
        parser.add_argument('--spin', help='Spin s for su2, e.g. 5 or 5/2 (default 5)')

    def _setup_arguments(self):
        """Set up subcommands and their arguments."""
        common = self._common_parser()
        subparsers = self.parser.add_subparsers(dest='command', parser_class=_RaisingParser,
                                                help='Available commands')

        subparsers.add_parser('verify', parents=[common], help='Run all invariant suites')
        subparsers.add_parser('structures', parents=[common], help='Structure-catalogue witness report')

        thm1 = subparsers.add_parser('thm1', parents=[common], help='CFOs map free states to free states')
        self._add_rep_arguments(thm1)
        thm1.add_argument('--trials', type=int, default=1000, help='Number of trials')
        thm1.add_argument('--scale', type=float, default=1.0, help='CFO coefficient range')
        thm1.add_argument('--epsilon', type=float, default=0.02, help='Weak-measurement strength (0 disables)')
        thm1.add_argument('--steps', type=int, default=5, help='Weak-measurement steps N')

        fig2 = subparsers.add_parser('fig2', parents=[common], help='Weight-state purity under GL(2) CFOs')
        self._add_rep_arguments(fig2, with_rep=False)
        fig2.add_argument('--trials', type=int, default=10000, help='Samples per weight')
        fig2.add_argument('--m', help='Comma-separated weights (default: all m >= 0)')

        fig3 = subparsers.add_parser('fig3', parents=[common], help='Average purity under weak-measurement channels')
        self._add_rep_arguments(fig3)
        fig3.add_argument('--trials', type=int, default=150, help='Number of random states')
        fig3.add_argument('--epsilon', type=float, default=0.02, help='Weak-measurement strength')
        fig3.add_argument('--steps', type=int, default=5, help='Weak-measurement steps N')

        scan = subparsers.add_parser('scan', parents=[common], help='Closed-form vs direct purity surface')
        self._add_rep_arguments(scan, with_rep=False)
        scan.add_argument('--alpha', default='-2:2:41', help='Alpha grid lo:hi:count')
        scan.add_argument('--eta', default='0:3:61', help='|eta| grid lo:hi:count')
        scan.add_argument('--m', help='Comma-separated weights (default: all m >= 0)')

    def parse_args(self, args=None):
        """
        Parse command line arguments.

        Args:
            args: List of arguments to parse (defaults to sys.argv)

        Returns:
            Parsed arguments namespace

        Raises:
            UsageError: For unknown flags, a missing subcommand or conflicting flags
        """
        argv = list(sys.argv[1:] if args is None else args)
        parsed_args = self.parser.parse_args(join_numeric_values(argv))
        if parsed_args.command is None:
            self.parser.print_usage(sys.stderr)
            raise UsageError("a subcommand is required")
        self._check_conflicts(parsed_args)
        logger.debug(f"Parsed arguments: command={parsed_args.command}")
        return parsed_args

    @staticmethod
    def _check_conflicts(args) -> None:
        rep = getattr(args, 'rep', 'su2')
        if getattr(args, 'modes', None) is not None and rep != 'so2n':
            raise UsageError("--modes requires --rep so2n")
        if getattr(args, 'dims', None) is not None and rep != 'local':
            raise UsageError("--dims requires --rep local")
        if getattr(args, 'spin', None) is not None and rep != 'su2':
            raise UsageError(f"--spin conflicts with --rep {rep}")
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        if args.tolerance <= 0:
            raise UsageError("--tolerance must be positive")

    def print_help(self):
        """Print help message."""
        self.parser.print_help()
