"""
Centralized Enums Module

Contains all shared enumeration types used across models and schemas.
"""
from enum import Enum


class GroupKind(str, Enum):
    """Symmetry group descriptor kinds"""
    FULL_UNITARY = "full_unitary"
    CONJUGATED_TORUS = "conjugated_torus"
    PERMUTATIONS = "permutations"
    SIGN_FLIPS = "signflips"
    SIGNED_PERMUTATIONS = "signed_permutations"
    FINITE = "finite"
    TENSOR = "tensor"
    DIRECT_SUM = "direct_sum"
    TRIVIAL = "trivial"
    CONJUGATED = "conjugated"


class MultisetSemantics(str, Enum):
    """Whether a finite multiset is used as a group (Haar) or a plain average"""
    GROUP = "group"
    MULTISET = "multiset"


class ReducedSetKind(str, Enum):
    """Reduced covariance set parameterizations"""
    SINGLETON = "singleton"
    CONJUGATED_SIMPLEX = "conjugated_simplex"
    BLOCK_KRON = "block_kron"
    WEIGHTED_DIRECT_SUM = "weighted_direct_sum"
    FULL_SET = "full_set"
    CONJUGATED_SET = "conjugated_set"


class ChannelKind(str, Enum):
    """Channel descriptor kinds"""
    GAUSSIAN = "gaussian"
    COLUMN_SYMMETRIC = "column_symmetric"
    RANK_ONE = "rank_one"
    RICEAN = "ricean"
    BLOCK_INVARIANT = "block_invariant"
    SEC5_ALPHA = "sec5_alpha"
    SEC5_INF = "sec5_inf"
    HEAVY_TAIL = "heavy_tail"
    CUSTOM = "custom"


class EntryLawKind(str, Enum):
    """Entry laws symmetric with respect to zero"""
    COMPLEX_GAUSSIAN = "complex_gaussian"
    SYMMETRIC_TWO_POINT = "symmetric_two_point"
    UNIFORM_PHASE_RADIUS = "uniform_phase_radius"


class RadiusLaw(str, Enum):
    """Radius distribution of a uniform-phase entry"""
    CONSTANT = "constant"
    RAYLEIGH = "rayleigh"
    EXPONENTIAL = "exponential"


class OuterSymmetry(str, Enum):
    """Left tensor factor symmetry of a block-invariant channel"""
    NONE = "none"
    TORUS = "torus"
    UNITARY = "unitary"


class StepRule(str, Enum):
    """Step size rule for projected gradient ascent"""
    FIXED = "fixed"
    BACKTRACKING = "backtracking"


class RelationBackend(str, Enum):
    """Integer relation search backend; auto picks exhaustive for small N and PSLQ above"""
    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    PSLQ = "pslq"


class FinitenessVerdict(str, Enum):
    """Heuristic verdict of the finiteness diagnostic"""
    FINITE_LIKELY = "finite_likely"
    INFINITE_SUSPECTED = "infinite_suspected"


class OutputFormat(str, Enum):
    """Machine-readable report format"""
    JSON = "json"
    CSV = "csv"


class InformationUnit(str, Enum):
    """Unit for reported information values"""
    NATS = "nats"
    BITS = "bits"
