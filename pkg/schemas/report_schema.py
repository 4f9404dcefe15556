"""
Report schemas written by the CLI.

Reports are deterministic given config and seed; generated_at is the only
volatile field.
"""
from datetime import datetime, timezone
from typing import Any, List, Optional, Tuple

from pydantic import Field

from config.constants import NATS_PER_BIT
from models.enums import FinitenessVerdict, InformationUnit
from models.phases import TwoSymmetryVerdict
from models.results import CapacityResult, FinitenessReport, MIEstimate, VerificationReport
from schemas.base_schema import BaseSchema
from schemas.channel_schema import ChannelSchema
from schemas.matrix_schema import MatrixLiteral, format_matrix_literal

Row = Tuple[Any, ...]


def information_scale(units: InformationUnit) -> float:
    """Factor applied to information values: 1 for nats, 1/ln 2 for bits"""
    return 1.0 / NATS_PER_BIT if units == InformationUnit.BITS else 1.0


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


class ReportSchema(BaseSchema):
    """Common report fields and the key/value CSV layout"""

    generated_at: str = Field(default_factory=_timestamp, description="Only volatile field")
    seed: Optional[int] = Field(default=None)

    def csv_header(self) -> Row:
        return ("quantity", "value")

    def csv_rows(self) -> List[Row]:
        document = self.model_dump(mode="json", exclude={"generated_at"})
        return [(key, document[key]) for key in sorted(document)]


class MIEstimateSchema(BaseSchema):
    value: float
    std_error: float = Field(..., ge=0)
    n: int = Field(..., ge=1, description="Samples behind the estimate")
    seed: Optional[int] = None

    @classmethod
    def from_estimate(cls, estimate: MIEstimate, units: InformationUnit = InformationUnit.NATS) -> "MIEstimateSchema":
        scale = information_scale(units)
        return cls(
            value=estimate.value * scale,
            std_error=estimate.std_error * scale,
            n=estimate.n_samples,
            seed=estimate.seed,
        )


class CapacityReportSchema(ReportSchema):
    channel: Optional[ChannelSchema] = None
    group: str
    reduced_set: str
    capacity: MIEstimateSchema
    saa_value: float
    q_star: MatrixLiteral
    iterations: int = Field(..., ge=0)
    converged: bool
    objective_history: List[float] = Field(default_factory=list)
    units: InformationUnit = InformationUnit.NATS

    @classmethod
    def from_result(
        cls,
        result: CapacityResult,
        reduced_set: str,
        channel: Optional[ChannelSchema] = None,
        units: InformationUnit = InformationUnit.NATS,
    ) -> "CapacityReportSchema":
        scale = information_scale(units)
        return cls(
            channel=channel,
            group=result.group,
            reduced_set=reduced_set,
            capacity=MIEstimateSchema.from_estimate(result.capacity, units),
            saa_value=result.saa_value * scale,
            q_star=result.q_star.matrix,
            iterations=result.iterations,
            converged=result.converged,
            objective_history=[value * scale for value in result.objective_history],
            units=units,
            seed=result.capacity.seed,
        )

    def csv_rows(self) -> List[Row]:
        rows: List[Row] = [
            ("capacity", self.capacity.value),
            ("std_error", self.capacity.std_error),
            ("n", self.capacity.n),
            ("saa_value", self.saa_value),
            ("iterations", self.iterations),
            ("converged", self.converged),
            ("group", self.group),
            ("reduced_set", self.reduced_set),
            ("units", self.units.value),
            ("seed", self.seed),
        ]
        for i, row in enumerate(format_matrix_literal(self.q_star)):
            for j, entry in enumerate(row):
                rows.append((f"q_star[{i}][{j}]", entry if isinstance(entry, float) else complex(*entry)))
        return rows


class AverageReportSchema(ReportSchema):
    group: str
    matrix: MatrixLiteral
    averaged: MatrixLiteral
    reduced_set: str


class SymmetryCheckSchema(BaseSchema):
    name: str
    passed: bool
    detail: str = ""


class SymcheckReportSchema(ReportSchema):
    verdict: str = Field(..., description="isotropic_optimal or inconclusive")
    reason: Optional[str] = None
    checks: List[SymmetryCheckSchema] = Field(default_factory=list)
    min_entry: Optional[float] = None
    intersection: str
    v1: MatrixLiteral
    v2: MatrixLiteral

    @classmethod
    def from_verdict(cls, verdict: TwoSymmetryVerdict, intersection: str, v1, v2, seed: Optional[int]) -> "SymcheckReportSchema":
        return cls(
            verdict="isotropic_optimal" if verdict.isotropic_optimal else "inconclusive",
            reason=verdict.reason,
            checks=[SymmetryCheckSchema.model_validate(check) for check in verdict.checks],
            min_entry=verdict.min_entry,
            intersection=intersection,
            v1=v1,
            v2=v2,
            seed=seed,
        )

    def csv_header(self) -> Row:
        return ("check", "pass", "detail")

    def csv_rows(self) -> List[Row]:
        return [(check.name, check.passed, check.detail) for check in self.checks] + [("verdict", self.verdict == "isotropic_optimal", self.reason or "")]


class FinitenessReportSchema(ReportSchema):
    channel: Optional[ChannelSchema] = None
    verdict: FinitenessVerdict
    slope: float = Field(..., description="Growth of the truncated means per e-fold of n")
    running_means: List[Tuple[int, float]]
    raw_means: List[Tuple[int, float]] = Field(default_factory=list)
    upper_bound: Optional[float] = None
    units: InformationUnit = InformationUnit.NATS

    @classmethod
    def from_report(
        cls,
        report: FinitenessReport,
        channel: Optional[ChannelSchema] = None,
        units: InformationUnit = InformationUnit.NATS,
    ) -> "FinitenessReportSchema":
        scale = information_scale(units)
        return cls(
            channel=channel,
            verdict=report.verdict,
            slope=report.slope * scale,
            running_means=[(n, value * scale) for n, value in report.running_means],
            raw_means=[(n, value * scale) for n, value in report.raw_means],
            upper_bound=None if report.upper_bound is None else report.upper_bound * scale,
            units=units,
            seed=report.seed,
        )

    def csv_header(self) -> Row:
        return ("n", "truncated_mean", "raw_mean", "units")

    def csv_rows(self) -> List[Row]:
        raw = dict(self.raw_means)
        return [(n, value, raw.get(n), self.units.value) for n, value in self.running_means]


class CheckSchema(BaseSchema):
    check: str
    passed: bool
    margin: float
    units: Optional[InformationUnit] = Field(default=None, description="Set when the margin is an information value")


class VerificationReportSchema(ReportSchema):
    suite: str
    checks: List[CheckSchema] = Field(default_factory=list)
    overall_pass: bool
    units: InformationUnit = InformationUnit.NATS

    @classmethod
    def from_report(
        cls, report: VerificationReport, units: InformationUnit = InformationUnit.NATS
    ) -> "VerificationReportSchema":
        """Information-valued margins are scaled to units; residual margins are left alone"""
        scale = information_scale(units)
        checks = [
            CheckSchema(
                check=check.check,
                passed=check.passed,
                margin=check.margin * scale if check.information else check.margin,
                units=units if check.information else None,
            )
            for check in report.checks
        ]
        return cls(suite=report.suite, checks=checks, overall_pass=report.overall_pass, units=units, seed=report.seed)

    def csv_header(self) -> Row:
        return ("suite", "check", "pass", "margin", "seed", "units")

    def csv_rows(self) -> List[Row]:
        return [
            (self.suite, check.check, check.passed, check.margin, self.seed, check.units.value if check.units else None)
            for check in self.checks
        ]
