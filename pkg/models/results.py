"""
Result types produced by the estimators, the optimizer and the verification suites.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from models.enums import FinitenessVerdict
from models.matrices import CovarianceMatrix
from models.reduced_sets import ReducedSet


@dataclass(frozen=True)
class MIEstimate:
    """Mutual information in nats with its Monte Carlo standard error"""
    value: float
    std_error: float
    n_samples: int
    seed: Optional[int] = None

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError(f"std_error must be non-negative, got {self.std_error}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be positive, got {self.n_samples}")


@dataclass(frozen=True)
class PairedDifference:
    """Mean and standard error of I(Q_a) - I(Q_b) on common draws"""
    value: float
    std_error: float
    n_samples: int


@dataclass
class MembershipReport:
    """
    Outcome of the symmetry membership probe

    consistent is a necessary-condition pass; statistic and p_value belong to the
    probe with the smallest p-value.
    """
    consistent: bool
    statistic: float
    p_value: float
    threshold: float
    n_samples: int
    n_probes: int


@dataclass
class FinitenessReport:
    """
    Running estimates of E log(1 + ||H||) on nested samples

    running_means holds the truncated means used for the slope fit, raw_means
    the plain running means on the same nesting.
    """
    running_means: List[Tuple[int, float]]
    verdict: FinitenessVerdict
    slope: float
    raw_means: List[Tuple[int, float]] = field(default_factory=list)
    upper_bound: Optional[float] = None
    seed: Optional[int] = None

    def __post_init__(self):
        sizes = [n for n, _ in self.running_means]
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"Sample sizes must be strictly increasing, got {sizes}")


@dataclass(eq=False)
class CapacityResult:
    q_star: CovarianceMatrix
    capacity: MIEstimate
    saa_value: float
    reduced_set: ReducedSet
    iterations: int
    converged: bool
    group: str = ""
    objective_history: List[float] = field(default_factory=list)


@dataclass
class CheckResult:
    """
    One verification check; margin is positive when the check passes with room

    information marks margins measured in nats (mutual information or log-mean
    differences); other margins are dimensionless residuals.
    """
    check: str
    passed: bool
    margin: float
    information: bool = False


@dataclass
class VerificationReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def overall_pass(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, check: str, passed: bool, margin: float, information: bool = False) -> CheckResult:
        result = CheckResult(check=check, passed=bool(passed), margin=float(margin), information=information)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport", prefix: Optional[str] = None):
        """Merge the checks of another report, prefixing their descriptions"""
        for check in other.checks:
            name = f"{prefix}: {check.check}" if prefix else check.check
            self.checks.append(CheckResult(name, check.passed, check.margin, check.information))
