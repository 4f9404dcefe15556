"""
Eigenphase vectors and the verdicts of the standard-symmetry checks.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from models.matrices import UnitaryMatrix


@dataclass(frozen=True)
class PhaseVector:
    """
    Phases theta_j = arg(D_jj) / 2pi in [0, 1)

    exact holds an optional exact rational value per entry; when present it is
    authoritative and the float is its rounding.
    """
    phases: Tuple[float, ...]
    exact: Tuple[Optional[Fraction], ...] = ()

    def __post_init__(self):
        phases = tuple(float(p) for p in self.phases)
        exact = tuple(self.exact) if self.exact else (None,) * len(phases)
        if len(exact) != len(phases):
            raise ValueError("exact annotations must match the number of phases")
        exact = tuple(None if r is None else Fraction(r) for r in exact)
        phases = tuple(float(r) if r is not None else p for p, r in zip(phases, exact))
        for value in phases:
            if not 0.0 <= value < 1.0:
                raise ValueError(f"phase {value} outside [0, 1)")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "exact", exact)

    @classmethod
    def from_exact(cls, values: Sequence[Fraction]) -> "PhaseVector":
        values = tuple(Fraction(v) for v in values)
        return cls(tuple(float(v) for v in values), values)

    def __len__(self) -> int:
        return len(self.phases)


@dataclass(frozen=True)
class RelationVerdict:
    """
    Outcome of the integer relation search

    relation is (q_0, q_1, ..., q_N) with q_0 + sum q_j theta_j = 0 (within
    residual); independent means no relation exists with |q_j| <= bound, a
    bounded certificate and never a proof.
    """
    independent: bool
    bound: int
    relation: Optional[Tuple[int, ...]] = None
    residual: Optional[float] = None
    exact: bool = False


@dataclass(frozen=True, eq=False)
class UnitaryEigenDecomposition:
    """V = W diag(exp(2 pi i theta)) W* with canonicalized W"""
    w: UnitaryMatrix
    phases: PhaseVector


@dataclass
class SymmetryCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class TwoSymmetryVerdict:
    isotropic_optimal: bool
    reason: Optional[str] = None
    checks: List[SymmetryCheck] = field(default_factory=list)
    min_entry: Optional[float] = None
