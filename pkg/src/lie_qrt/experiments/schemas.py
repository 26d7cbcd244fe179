"""
Experiment configuration and report models.
Defines the validated inputs and the row/summary structure of every run.
"""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from ..errors import InvalidInputError, InvariantViolationError, MarginViolationError
from ..shared.utils import parse_grid, parse_half_integer

FORMAT_VERSION = "1"

ExperimentName = Literal["verify", "thm1", "fig2", "fig3", "scan", "structures"]
RepKind = Literal["su2", "so2n", "local"]


class ExperimentConfig(BaseModel):
    """Validated parameters of one experiment run."""
    model_config = ConfigDict(frozen=True)

    experiment: ExperimentName = Field(description="Experiment to run")
    rep_kind: RepKind = Field(default="su2", description="Representation family")
    spin: float = Field(default=5.0, ge=0, le=8, description="Spin s of the su(2) irrep")
    modes: int = Field(default=8, ge=1, le=10, description="Fermionic modes n of so(2n)")
    local_dims: Tuple[int, int] = Field(default=(2, 2), description="Subsystem dimensions (dA, dB)")
    seed: int = Field(default=0, ge=0, lt=2 ** 64, description="Root seed of the run")
    trials: int = Field(default=150, ge=1, description="Number of random trials")
    epsilon: float = Field(default=0.02, ge=0, description="Weak-measurement strength")
    steps: int = Field(default=5, ge=1, le=12, description="Weak-measurement steps N")
    cfo_scale: float = Field(default=1.0, ge=0, description="Coefficient range of sampled CFOs")
    m_values: Optional[List[float]] = Field(default=None, description="Weights m; all m >= 0 if omitted")
    alpha_grid: str = Field(default="-2:2:41", description="Grid lo:hi:count for alpha")
    eta_grid: str = Field(default="0:3:61", description="Grid lo:hi:count for |eta|")
    workers: int = Field(default=1, ge=1, le=256, description="Worker threads")
    tolerance: float = Field(default=1e-8, gt=0, description="Report-only flagging tolerance")

    @field_validator("spin")
    @classmethod
    def _spin_is_half_integer(cls, value: float) -> float:
        try:
            parse_half_integer(value, "spin")
        except InvalidInputError as e:
            raise ValueError(str(e))
        return float(value)

    @field_validator("alpha_grid", "eta_grid")
    @classmethod
    def _grid_parses(cls, value: str) -> str:
        try:
            parse_grid(value)
        except InvalidInputError as e:
            raise ValueError(str(e))
        return value

    @field_validator("local_dims")
    @classmethod
    def _local_dims_in_range(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if min(value) < 2 or value[0] * value[1] > 16:
            raise ValueError(f"local dims must be >= 2 with dA*dB <= 16, got {value}")
        return value

    @property
    def uses_rep(self) -> bool:
        """False for the suites that build their own fixed representations."""
        return self.experiment not in ("structures", "verify")

    @property
    def rep_label(self) -> str:
        if self.rep_kind == "su2":
            return f"su2(s={self.spin:g})"
        if self.rep_kind == "so2n":
            return f"so2n(n={self.modes})"
        return f"local(dA={self.local_dims[0]},dB={self.local_dims[1]})"


class TrialRecord(BaseModel):
    """One per-trial record; the violation flag uses the fixed hard threshold."""
    trial: int
    purity_before: Optional[float] = None
    purity_after: Optional[float] = None
    margin: Optional[float] = None
    min_pk: Optional[float] = None
    violation: bool = False
    detail: Optional[str] = None


class ExperimentSummary(BaseModel):
    """Aggregate statistics over the per-trial records."""
    min_margin: Optional[float] = None
    mean_margin: Optional[float] = None
    max_deviation: Optional[float] = None
    flagged_at_tolerance: int = 0
    extra: Dict[str, Any] = Field(default_factory=dict)


class ExperimentReport(BaseModel):
    """Rows, per-trial records and summary of a finished experiment."""
    format_version: str = FORMAT_VERSION
    config: ExperimentConfig
    columns: List[str]
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    records: List[TrialRecord] = Field(default_factory=list)
    summary: ExperimentSummary = Field(default_factory=ExperimentSummary)
    choices: Dict[str, str] = Field(default_factory=dict)
    runtime_seconds: float = 0.0

    @computed_field
    @property
    def violation_count(self) -> int:
        return sum(1 for record in self.records if record.violation)

    def first_violation(self) -> Optional[TrialRecord]:
        return next((record for record in self.records if record.violation), None)

    def raise_for_violations(self, hard_tolerance: float) -> None:
        """
        Raise if any record violates its invariant.

        Raises:
            MarginViolationError: For a negative average-purity margin
            InvariantViolationError: For any other violated record
        """
        record = self.first_violation()
        if record is None:
            return
        if self.config.experiment == "fig3" and record.margin is not None:
            raise MarginViolationError(record.trial, record.margin, hard_tolerance)
        raise InvariantViolationError(
            f"{self.config.experiment}: {self.violation_count} violation(s), first at trial "
            f"{record.trial}{': ' + record.detail if record.detail else ''}"
        )
