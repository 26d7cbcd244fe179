"""
Experiment drivers, report models and writers.
"""

from .output import OutputSchema, summary_line, write_report
from .runners import (
    run_closed_form_scan,
    run_experiment,
    run_fig2,
    run_fig3,
    run_structures_suite,
    run_thm1,
    run_verify,
)
from .schemas import ExperimentConfig, ExperimentReport, ExperimentSummary, TrialRecord
