"""
Mutual information estimation, closed forms for the two-antenna worked channels and
the finiteness diagnostic.
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from config.constants import ALPHA_MIN, ErrorMessages, EstimatorConfig, FinitenessConfig
from models.channels import ChannelModel
from models.enums import FinitenessVerdict
from models.errors import DimensionMismatchError, InvalidMatrixError
from models.matrices import CovarianceMatrix, RandomStream
from models.results import FinitenessReport, MIEstimate, PairedDifference
from services.channel_service import sample_batch
from services.matcore_service import frobenius_norm_batch, logdet_batch

logger = logging.getLogger(__name__)

# log det(I + H Q H*) overflows beyond this Frobenius norm
UPPER_BOUND_NORM_LIMIT = 1e100


def _covariance(q) -> CovarianceMatrix:
    return q if isinstance(q, CovarianceMatrix) else CovarianceMatrix(q)


def _std_error(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(values.size))


def estimate_mi_from_samples(samples: np.ndarray, q, seed: Optional[int] = None) -> MIEstimate:
    """
    Monte Carlo mean of log det(I + H Q H*) over pre-drawn samples

    Reusing the same samples for two covariances gives common-random-number comparisons.
    """
    q = _covariance(q)
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.ndim != 3 or samples.shape[-1] != q.dim:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="estimate_mi", expected=q.dim, actual=samples.shape[-1:])
        )
    values = logdet_batch(samples, q)
    return MIEstimate(float(np.mean(values)), _std_error(values), int(values.size), seed)


def estimate_mi(model: ChannelModel, q, n: int, rng: RandomStream) -> MIEstimate:
    """
    I_H(Q) estimated from n fresh channel draws

    Raises:
        ValueError: If n is below the minimum sample count
        DimensionMismatchError: If Q does not match the channel's input dimension
    """
    if n < EstimatorConfig.MIN_MI_SAMPLES:
        raise ValueError(
            ErrorMessages.TOO_FEW_SAMPLES.format(operation="estimate_mi", minimum=EstimatorConfig.MIN_MI_SAMPLES, actual=n)
        )
    q = _covariance(q)
    if q.dim != model.n:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="estimate_mi", expected=model.n, actual=q.dim)
        )
    return estimate_mi_from_samples(sample_batch(model, rng, n), q, seed=rng.seed)


def paired_difference(samples: np.ndarray, q_a, q_b) -> PairedDifference:
    """Mean and standard error of log det(I + H Q_a H*) - log det(I + H Q_b H*) on common draws"""
    samples = np.asarray(samples, dtype=np.complex128)
    differences = logdet_batch(samples, _covariance(q_a)) - logdet_batch(samples, _covariance(q_b))
    return PairedDifference(float(np.mean(differences)), _std_error(differences), int(differences.size))


def mi_upper_bound(samples: np.ndarray) -> float:
    """M log(1 + (N/M) mean ||H||_F^2)"""
    samples = np.asarray(samples, dtype=np.complex128)
    m, n = samples.shape[1:]
    mean_energy = float(np.mean(frobenius_norm_batch(samples) ** 2))
    return m * math.log1p((n / m) * mean_energy)


def _closed_form_entries(a: float, b: float, c: complex):
    q = CovarianceMatrix(np.array([[a, np.conj(c)], [c, b]], dtype=np.complex128))
    return float(np.real(q.matrix[0, 0])), float(np.real(q.matrix[1, 1])), complex(q.matrix[1, 0])


def mi_closed_form_alpha(alpha: float, a: float, b: float, c: complex = 0.0) -> float:
    """
    log[(1 + a)(1 + alpha^2 b) - alpha^2 |c|^2] for Q = [[a, conj(c)], [c, b]]

    Raises:
        ValueError: If alpha < 1/sqrt(2)
        InvalidMatrixError: If Q is not a covariance or the argument of the log is not positive
    """
    if alpha < ALPHA_MIN - 1e-12:
        raise ValueError(ErrorMessages.ALPHA_RANGE.format(alpha=alpha))
    a, b, c = _closed_form_entries(a, b, c)
    argument = (1 + a) * (1 + alpha ** 2 * b) - alpha ** 2 * abs(c) ** 2
    if argument <= 0:
        raise InvalidMatrixError(ErrorMessages.LOG_ARGUMENT.format(value=argument, operation="mi_closed_form_alpha"))
    return math.log(argument)


def _circle_integrand(a: float, b: float, c: complex, phi: np.ndarray) -> np.ndarray:
    return np.log(1 + a + 4 * b + 4 * np.real(c * np.exp(1j * phi)))


def mi_closed_form_inf(a: float, b: float, c: complex = 0.0, tol: float = EstimatorConfig.QUADRATURE_TOL) -> float:
    """
    E log(1 + a + 4b + 4 Re(c v)) over v uniform on the unit circle

    Periodic trapezoid rule with node doubling until successive values agree to tol;
    the integrand is smooth and periodic so convergence is geometric.

    Raises:
        InvalidMatrixError: If 1 + a + 4b - 4|c| <= 0
    """
    a, b, c = _closed_form_entries(a, b, c)
    floor = 1 + a + 4 * b - 4 * abs(c)
    if floor <= 0:
        raise InvalidMatrixError(ErrorMessages.LOG_ARGUMENT.format(value=floor, operation="mi_closed_form_inf"))
    if abs(c) == 0:
        return math.log(1 + a + 4 * b)

    nodes = EstimatorConfig.QUADRATURE_MIN_NODES
    previous = float(np.mean(_circle_integrand(a, b, c, 2 * np.pi * np.arange(nodes) / nodes)))
    while nodes < EstimatorConfig.QUADRATURE_MAX_NODES:
        # the doubled rule reuses the old nodes and adds the midpoints
        midpoints = 2 * np.pi * (np.arange(nodes) + 0.5) / nodes
        current = (previous + float(np.mean(_circle_integrand(a, b, c, midpoints)))) / 2
        nodes *= 2
        if abs(current - previous) <= tol:
            return current
        previous = current
    logger.warning(f"⚠️ Circle quadrature stopped at {nodes} nodes before reaching {tol:.1e}")
    return previous


def _truncated_mean(values: np.ndarray) -> float:
    """Mean with values above sqrt(n) replaced by sqrt(n)"""
    return float(np.mean(np.minimum(values, np.sqrt(values.size))))


def finiteness_diagnostic(
    model: ChannelModel,
    sizes: Sequence[int] = FinitenessConfig.DEFAULT_SIZES,
    rng: Optional[RandomStream] = None,
    slope_threshold: float = FinitenessConfig.SLOPE_THRESHOLD,
) -> FinitenessReport:
    """
    Heuristic check of E log(1 + ||H||) < infinity

    Estimates on nested samples (each extends the previous one) are fitted
    against ln n. A growing trend above slope_threshold on every increment
    suggests an infinite mean and hence infinite capacity. Estimates use a
    truncation at sqrt(n), which leaves a finite mean unchanged in the limit.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) < FinitenessConfig.MIN_SIZES:
        raise ValueError(f"finiteness_diagnostic needs at least {FinitenessConfig.MIN_SIZES} sizes, got {len(sizes)}")
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 1:
        raise ValueError(f"sizes must be positive and strictly increasing, got {sizes}")
    rng = rng or RandomStream(0)

    draws = sample_batch(model, rng, sizes[-1])
    norms = frobenius_norm_batch(draws)
    values = np.log1p(norms)
    running = [(n, _truncated_mean(values[:n])) for n in sizes]
    raw = [(n, float(np.mean(values[:n]))) for n in sizes]

    estimates = np.array([value for _, value in running])
    slope = float(np.polyfit(np.log(sizes), estimates, 1)[0])
    increasing = bool(np.all(np.diff(estimates) > 0))
    verdict = (
        FinitenessVerdict.INFINITE_SUSPECTED
        if slope > slope_threshold and increasing
        else FinitenessVerdict.FINITE_LIKELY
    )

    n_bound = min(sizes[-1], sizes[0] * 10)
    upper_bound = None
    if float(np.max(norms[:n_bound])) < UPPER_BOUND_NORM_LIMIT:
        upper_bound = estimate_mi_from_samples(draws[:n_bound], CovarianceMatrix.isotropic(model.n)).value + math.log(
            2 * model.n
        )
    else:
        logger.debug("Skipping the isotropic upper bound: draws too large for log det")

    if verdict == FinitenessVerdict.INFINITE_SUSPECTED:
        logger.warning(f"⚠️ Running means grow with slope {slope:.3f} per e-fold: infinite capacity suspected")
    else:
        logger.info(f"✅ Finiteness diagnostic: slope {slope:.3f}, finite capacity likely")
    return FinitenessReport(
        running_means=running,
        verdict=verdict,
        slope=slope,
        raw_means=raw,
        upper_bound=upper_bound,
        seed=rng.seed,
    )
