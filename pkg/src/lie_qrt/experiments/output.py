"""
Report serialization.
CSV files hold the header row and the data rows only; their metadata goes to a
"<out>.meta.json" sidecar. JSON files hold one object with "meta" and "rows".
"""

import csv
import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Union

from ..errors import UsageError
from .schemas import FORMAT_VERSION, ExperimentReport

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class OutputSchema:
    """Output format and the fixed column order of one experiment."""
    format: str
    columns: List[str]
    version: str = FORMAT_VERSION

    def __post_init__(self):
        if self.format not in SUPPORTED_FORMATS:
            raise UsageError(f"unsupported output format '{self.format}'")


def report_meta(report: ExperimentReport) -> Dict[str, Any]:
    """Deterministic metadata: schema version, config echo, seed, design choices and summary."""
    return {
        "schema_version": report.format_version,
        "experiment": report.config.experiment,
        "rep": report.config.rep_label if report.config.uses_rep else None,
        "seed": report.config.seed,
        "config": report.config.model_dump(mode="json"),
        "choices": report.choices,
        "summary": report.summary.model_dump(mode="json"),
        "violation_count": report.violation_count,
    }


def _ordered_rows(report: ExperimentReport, schema: OutputSchema) -> List[Dict[str, Any]]:
    return [{column: row[column] for column in schema.columns} for row in report.rows]


def meta_path_for(path: Union[str, Path]) -> Path:
    """Sidecar metadata path of a CSV report, e.g. fig3.csv -> fig3.csv.meta.json."""
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


def write_csv(report: ExperimentReport, path: Union[str, Path]) -> Path:
    """
    Write the report as RFC-4180 CSV with the header on the first line.

    The metadata is written to meta_path_for(path). Neither file carries the
    timestamp or runtime, so reruns are byte-identical.
    """
    schema = OutputSchema("csv", report.columns)
    path = Path(path)
    meta = report_meta(report)
    meta["columns"] = schema.columns
    with meta_path_for(path).open("w", encoding="utf-8") as handle:
        json.dump(meta, handle, indent=2, sort_keys=True)
        handle.write("\n")
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=schema.columns)
        writer.writeheader()
        writer.writerows(_ordered_rows(report, schema))
    logger.info(f"Wrote {len(report.rows)} rows to {path}", extra={"format": "csv"})
    return path


def write_json(report: ExperimentReport, path: Union[str, Path]) -> Path:
    """Write the report as JSON; run-specific values live under meta["run"]."""
    schema = OutputSchema("json", report.columns)
    meta = report_meta(report)
    meta["columns"] = schema.columns
    meta["run"] = {
        "generated_at": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
        "runtime_seconds": report.runtime_seconds,
    }
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        json.dump({"meta": meta, "rows": _ordered_rows(report, schema)}, handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info(f"Wrote {len(report.rows)} rows to {path}", extra={"format": "json"})
    return path


def write_report(report: ExperimentReport, path: Union[str, Path], fmt: str) -> Path:
    """Write the report in the requested format."""
    if fmt == "csv":
        return write_csv(report, path)
    if fmt == "json":
        return write_json(report, path)
    raise UsageError(f"unsupported output format '{fmt}'")


def summary_line(report: ExperimentReport) -> str:
    """One-line human summary printed by the CLI."""
    s = report.summary
    parts = [report.config.experiment]
    if report.config.uses_rep:
        parts.append(report.config.rep_label)
    parts.append(f"rows={len(report.rows)}")
    if s.min_margin is not None:
        parts.append(f"min_margin={s.min_margin:.3e}")
    if s.max_deviation is not None:
        parts.append(f"max_deviation={s.max_deviation:.3e}")
    parts.append(f"violations={report.violation_count}")
    parts.append(f"runtime={report.runtime_seconds:.2f}s")
    return " ".join(parts)
