"""
Command handling logic for the laboratory CLI.
Turns parsed arguments into an ExperimentConfig, runs it and writes the report.
"""

import logging
from fractions import Fraction
from typing import Any, Dict

from pydantic import ValidationError

from ..errors import UsageError
from ..experiments.output import summary_line, write_report
from ..experiments.runners import (
    CLOSED_FORM_TOL,
    FREE_PURITY_TOL,
    MARGIN_TOL,
    WEIGHT_BOUND_SLACK,
    run_experiment,
)
from ..experiments.schemas import ExperimentConfig, ExperimentReport
from ..shared.utils import parse_number_list

logger = logging.getLogger(__name__)

HARD_TOLERANCES = {
    "thm1": FREE_PURITY_TOL,
    "fig2": WEIGHT_BOUND_SLACK,
    "fig3": MARGIN_TOL,
    "scan": CLOSED_FORM_TOL,
    "structures": 0.0,
    "verify": 0.0,
}


class CommandHandler:
    """Handles execution of laboratory commands."""

    def __init__(self, output=print):
        """
        Initialize command handler.

        Args:
            output: Callable receiving the one-line summary
        """
        self.output = output
        logger.debug("Initialized CommandHandler")

    @staticmethod
    def build_config(args: Any) -> ExperimentConfig:
        """
        Translate parsed arguments into a validated ExperimentConfig.

        Raises:
            UsageError: If a value fails validation
        """
        values: Dict[str, Any] = {
            "experiment": args.command,
            "seed": args.seed,
            "workers": args.workers,
            "tolerance": args.tolerance,
        }
        rep = getattr(args, 'rep', 'su2')
        values["rep_kind"] = rep
        if getattr(args, 'spin', None) is not None:
            try:
                values["spin"] = float(Fraction(args.spin))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"invalid --spin '{args.spin}'")
        if getattr(args, 'modes', None) is not None:
            values["modes"] = args.modes
        if getattr(args, 'dims', None) is not None:
            dims = parse_number_list(args.dims) or []
            if len(dims) != 2 or any(d != int(d) for d in dims):
                raise UsageError(f"--dims must be two integers dA,dB, got '{args.dims}'")
            values["local_dims"] = (int(dims[0]), int(dims[1]))
        for attr, key in (("trials", "trials"), ("epsilon", "epsilon"), ("steps", "steps"),
                          ("scale", "cfo_scale"), ("alpha", "alpha_grid"), ("eta", "eta_grid")):
            if getattr(args, attr, None) is not None:
                values[key] = getattr(args, attr)
        if getattr(args, 'm', None):
            values["m_values"] = parse_number_list(args.m)
        try:
            return ExperimentConfig(**values)
        except ValidationError as e:
            raise UsageError(f"invalid arguments: {e.errors()[0]['msg']}")

    def handle_command(self, args: Any) -> ExperimentReport:
        """
        Run the experiment named by args.command.

        The report is written before any violation is raised, so the data of a
        failing run is kept.

        Args:
            args: Parsed command line arguments

        Returns:
            The finished report

        Raises:
            InvariantViolationError: If the report contains violations
        """
        logger.info(f"Routing command: {args.command}")
        cfg = self.build_config(args)
        report = run_experiment(cfg)

        if args.out:
            write_report(report, args.out, args.format)
        self.output(summary_line(report))
        report.raise_for_violations(HARD_TOLERANCES[cfg.experiment])
        logger.info(f"{args.command} completed", extra={"violations": report.violation_count})
        return report
