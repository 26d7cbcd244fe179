"""
Main entry point for the Lie-algebra QRT laboratory.
Handles CLI parsing, logging setup and exit-status mapping.
"""

import logging
import sys
from typing import List, Optional

from .cli.argument_parser import ArgumentParser
from .cli.command_handler import CommandHandler
from .config import get_config
from .errors import EXIT_SUCCESS, LieQRTError, UsageError, exit_status_for
from .shared.logging_config import setup_logging

logger = logging.getLogger(__name__)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one laboratory command.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit status: 0 success, 1 usage, 2 invariant violation, 3 numerical failure
    """
    config = get_config()
    setup_logging(config.run.log_level, config.run.structured_logs)
    try:
        args = ArgumentParser().parse_args(argv)
        setup_logging(args.log_level, config.run.structured_logs)
        logger.info(f"Starting lie-qrt with command: {args.command}")
        CommandHandler().handle_command(args)
        return EXIT_SUCCESS
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        print("\nOperation cancelled by user", file=sys.stderr)
        return exit_status_for(UsageError("interrupted"))
    except (LieQRTError, FloatingPointError) as e:
        status = exit_status_for(e)
        logger.error(f"{type(e).__name__}: {e}", extra={"exit_status": status})
        print(f"error: {e}", file=sys.stderr)
        return status
    except Exception as e:
        status = exit_status_for(e)
        logger.error(f"Unexpected error in main: {type(e).__name__}: {e}", exc_info=True)
        print(f"Unexpected error: {e}", file=sys.stderr)
        return status


if __name__ == '__main__':
    sys.exit(main())
