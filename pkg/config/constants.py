"""
Application Constants

Centralized numerical tolerances and defaults for the entire package.
Avoids magic numbers and provides single source of truth.
"""
import math
from enum import IntEnum


class ToleranceConfig:
    """Numerical tolerances shared by the domain types and services"""
    HERMITIAN_REL = 1e-12
    PSD_MIN_EIGENVALUE = -1e-10
    TRACE = 1e-12
    UNITARY = 1e-10
    FIXED_POINT = 1e-9
    GROUP_CLOSURE = 1e-10
    PROBABILITY_SUM = 1e-9

    # Integer relation search over eigenphases
    RELATION_BOUND = 100
    RELATION_TOL = 1e-9
    EIGENPHASE_RELATION_TOL = 1e-12  # eigenphases of a unitary are exact to round-off
    REPEATED_PHASE_TOL = 1e-10
    # the exhaustive box has (2 bound + 1)^N points
    EXHAUSTIVE_MAX_DIM = 3

    # "W_{i,j} != 0" threshold is ENTRY_TOL_FACTOR * sqrt(N)
    ENTRY_TOL_FACTOR = 1e-8

    # Ricean singular value grouping (relative)
    SINGULAR_VALUE_REL = 1e-9


class OptimizerDefaults:
    """Projected gradient ascent defaults"""
    N_SAA_SAMPLES = 2000
    MIN_SAA_SAMPLES = 100
    MAX_ITERS = 500
    CONV_TOL = 1e-8
    INITIAL_STEP = 1.0
    ARMIJO = 1e-4
    MIN_STEP = 1e-12
    PROJECTION_ROUNDS = 50
    PROJECTION_TOL = 1e-10
    N_EVAL_SAMPLES = 20000
    QUADRATURE_NODES = 512


class EstimatorConfig:
    """Monte Carlo estimation constants"""
    MIN_MI_SAMPLES = 100
    QUADRATURE_TOL = 1e-10
    QUADRATURE_MIN_NODES = 16
    QUADRATURE_MAX_NODES = 1 << 20
    STDERR_MULTIPLIER = 3.0


class ProbeConfig:
    """Symmetry membership probe constants"""
    N_PROBES = 8
    LEVEL = 0.01
    MIN_SAMPLES = 1000
    SEED_SALT = 0x5EED_C0DE


class FinitenessConfig:
    """Finiteness diagnostic constants"""
    SLOPE_THRESHOLD = 0.05
    DEFAULT_SIZES = (1000, 10000, 100000)
    MIN_SIZES = 3
    HEAVY_TAIL_CAP = 300.0


class SuiteConfig:
    """Verification suite sizes"""
    N_RANDOM_COMPETITORS = 20
    N_RANDOM_COVARIANCES = 50
    N_HAAR_PAIRS = 20
    PROP1_SAMPLES = 100000
    BASIS_RESIDUAL = 1e-6
    BLOCK_SPREAD = 1e-4
    CLOSED_FORM_TOL = 1e-4
    QUADRATURE_FORM_TOL = 1e-6


class ExitCode(IntEnum):
    """Stable CLI exit code contract"""
    SUCCESS = 0
    USAGE_ERROR = 1
    NOT_CONVERGED = 2
    INFINITE_SUSPECTED = 3
    VERIFICATION_FAILED = 4


NATS_PER_BIT = math.log(2.0)
ALPHA_MIN = 1.0 / math.sqrt(2.0)


class ErrorMessages:
    """Centralized error message templates"""
    DIMENSION_MISMATCH = "Dimension mismatch in {operation}: expected {expected}, got {actual}"
    NOT_FINITE = "{name} has non-finite entries"
    NOT_SQUARE = "{name} must be square, got shape {shape}"
    NOT_HERMITIAN = "{name} is not Hermitian (residual {residual:.3e})"
    NOT_PSD = "{name} is not positive semidefinite (min eigenvalue {min_eig:.3e})"
    BAD_TRACE = "{name} does not have unit trace (trace {trace})"
    NOT_UNITARY = "{name} is not unitary (residual {residual:.3e})"
    INFEASIBLE_PARAMS = "Infeasible parameters for {reduced_set}: {reason}"
    UNSUPPORTED_TENSOR = "unsupported tensor reduction: neither factor of {group} averages to Tr(.)/N I"
    DIRECT_SUM_MEANS = "Direct sum {group} has {count} components with non-zero mean; at most one is supported"
    NOT_STRUCTURED = "{operation} requires a structured group, got {group}"
    UNSUPPORTED_PAIR = "Unsupported subgroup pair: {sub} inside {group}"
    NOT_STANDARD = "not a standard symmetry: phases satisfy the relation {relation}"
    EXHAUSTIVE_TOO_LARGE = "exhaustive relation search supports at most {limit} phases, got {size}; use the pslq or auto backend"
    NO_DECLARED_SYMMETRY = "no declared symmetry for {model}"
    MULTISET_NOT_GROUP = "Finite multiset is not closed under {operation}; Haar sampling needs group semantics"
    SAMPLER_SHAPE = "Custom sampler returned shape {actual}, expected {expected}"
    ALPHA_RANGE = "alpha must be >= 1/sqrt(2), got {alpha}"
    TOO_FEW_SAMPLES = "{operation} needs at least {minimum} samples, got {actual}"
    LOG_ARGUMENT = "Argument of the logarithm is not positive ({value:.3e}) for {operation}"
    INVALID_CONFIG = "Invalid configuration: {reason}"
