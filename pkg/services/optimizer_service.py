"""
Capacity optimization over reduced covariance sets.

The sample-average objective g(Q) = (1/L) sum log det(I + H_l Q H_l*) is frozen on
L draws and maximized by projected gradient ascent; the reported capacity is
re-estimated on fresh draws.
"""
import logging
import math
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from config.constants import ALPHA_MIN, ErrorMessages, OptimizerDefaults
from config.settings import get_settings
from models.channels import ChannelModel, SectionFiveAlpha, SectionFiveInf
from models.enums import StepRule
from models.errors import DimensionMismatchError
from models.groups import SymmetryGroup, group_label
from models.matrices import CovarianceMatrix, RandomStream
from models.reduced_sets import Singleton
from models.results import CapacityResult, MIEstimate
from schemas.optimizer_schema import OptConfig
from services.channel_service import known_symmetry_group, sample_batch
from services.infocap_service import estimate_mi, mi_closed_form_alpha, mi_closed_form_inf
from services.matcore_service import logdet_batch, logdet_gradient_batch, project_to_covariance
from services.symmetry_service import average, averaged_set, describe_reduced_set, is_fixed_point

logger = logging.getLogger(__name__)


class CapacityObjective(ABC):
    """Concave objective over covariances with its Hermitian gradient"""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Input dimension N"""

    @abstractmethod
    def value(self, q: np.ndarray) -> float:
        """Objective value in nats"""

    @abstractmethod
    def gradient(self, q: np.ndarray) -> np.ndarray:
        """Hermitian gradient with respect to Q"""


class SampleAverageObjective(CapacityObjective):
    """
    Mean of log det(I + H Q H*) over a frozen stack of draws

    Draws are cut into fixed chunks of chunk_size and partial sums are added in
    chunk order, so values are bit-identical for any thread count.
    """

    def __init__(self, samples: np.ndarray, threads: int = 1, chunk_size: Optional[int] = None):
        self._samples = np.asarray(samples, dtype=np.complex128)
        self._threads = max(1, int(threads))
        size = chunk_size or get_settings().chunk_size
        self._chunks = [self._samples[start:start + size] for start in range(0, len(self._samples), size)]

    @property
    def dim(self) -> int:
        return self._samples.shape[-1]

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    def _map(self, kernel) -> List[np.ndarray]:
        """kernel applied to every chunk, results in chunk order"""
        if self._threads == 1 or len(self._chunks) == 1:
            return [kernel(chunk) for chunk in self._chunks]
        with ThreadPoolExecutor(max_workers=self._threads) as executor:
            return list(executor.map(kernel, self._chunks))

    def value(self, q: np.ndarray) -> float:
        total = 0.0
        for part in self._map(lambda chunk: np.sum(logdet_batch(chunk, q))):
            total += float(part)
        return total / len(self._samples)

    def gradient(self, q: np.ndarray) -> np.ndarray:
        total = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for chunk, part in zip(self._chunks, self._map(lambda chunk: logdet_gradient_batch(chunk, q))):
            total = total + len(chunk) * part
        return total / len(self._samples)


class AlphaClosedFormObjective(SampleAverageObjective):
    """
    I_{H_alpha}(Q) = log[(1 + a)(1 + alpha^2 b) - alpha^2 |c|^2]

    The phase v only rotates the output, so the single matrix diag(1, alpha)
    gives the exact objective.
    """

    def __init__(self, alpha: float):
        super().__init__(np.diag([1.0, alpha]).astype(np.complex128)[None, :, :])
        self.alpha = alpha


class InfQuadratureObjective(SampleAverageObjective):
    """Periodic trapezoid rule over v = e^{i phi} for H_inf = [[0, 0], [1, 2v]]"""

    def __init__(self, nodes: int = OptimizerDefaults.QUADRATURE_NODES):
        phases = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        draws = np.zeros((nodes, 2, 2), dtype=np.complex128)
        draws[:, 1, 0] = 1.0
        draws[:, 1, 1] = 2.0 * phases
        super().__init__(draws)


def project_onto_reduced(group: SymmetryGroup, a: np.ndarray) -> CovarianceMatrix:
    """
    Nearest point of A_G(C_{N,1}) to A: average, then project to covariances

    The fixed points of a group average form a *-algebra that is closed under the
    eigenvalue projection, so one round is exact; rounds repeat until both
    constraints hold to the projection tolerance.
    """
    current = np.asarray(a, dtype=np.complex128)
    projected = project_to_covariance(average(group, current))
    for _ in range(OptimizerDefaults.PROJECTION_ROUNDS - 1):
        if is_fixed_point(group, projected, OptimizerDefaults.PROJECTION_TOL):
            break
        projected = project_to_covariance(average(group, projected.matrix))
    return projected


class CapacityOptimizer:
    """Projected gradient ascent on a concave objective over a group's reduced set"""

    def __init__(self, group: SymmetryGroup, objective: CapacityObjective, cfg: OptConfig):
        if group.dim != objective.dim:
            raise DimensionMismatchError(
                ErrorMessages.DIMENSION_MISMATCH.format(operation="CapacityOptimizer", expected=objective.dim, actual=group.dim)
            )
        self.group = group
        self.objective = objective
        self.cfg = cfg

    def project(self, a: np.ndarray) -> CovarianceMatrix:
        return project_onto_reduced(self.group, a)

    def stationarity(self, q: np.ndarray, gradient: np.ndarray) -> float:
        """||Q - P(Q + grad)||_F, zero exactly at maximizers"""
        return float(np.linalg.norm(q - self.project(q + gradient).matrix))

    def _step(self, q: np.ndarray, value: float, gradient: np.ndarray) -> Optional[Tuple[np.ndarray, float]]:
        gamma = self.cfg.step_size
        if self.cfg.step_rule == StepRule.FIXED:
            candidate = self.project(q + gamma * gradient).matrix
            return candidate, self.objective.value(candidate)
        # objective values carry rounding error of a few ulps
        slack = 16 * np.finfo(float).eps * max(1.0, abs(value))
        while gamma >= OptimizerDefaults.MIN_STEP:
            candidate = self.project(q + gamma * gradient).matrix
            candidate_value = self.objective.value(candidate)
            ascent = max(float(np.real(np.vdot(gradient, candidate - q))), 0.0)
            if candidate_value >= value + self.cfg.armijo * ascent - slack:
                return candidate, candidate_value
            gamma /= 2
        return None

    def run(self, start: Optional[np.ndarray] = None) -> Tuple[CovarianceMatrix, float, int, bool, List[float]]:
        """
        Maximize from start (default I/N)

        Returns:
            (q_star, objective value, iterations, converged, objective history)
        """
        n = self.group.dim
        q = self.project(np.eye(n) / n if start is None else start).matrix
        value = self.objective.value(q)
        history = [value]
        for iteration in range(self.cfg.max_iters):
            gradient = self.objective.gradient(q)
            residual = self.stationarity(q, gradient)
            if residual <= self.cfg.conv_tol:
                logger.debug(f"Converged after {iteration} iterations (residual {residual:.2e})")
                return CovarianceMatrix(q, check=False), value, iteration, True, history
            step = self._step(q, value, gradient)
            if step is None:
                logger.warning(f"⚠️ Line search failed at iteration {iteration} (residual {residual:.2e})")
                return CovarianceMatrix(q, check=False), value, iteration, False, history
            q, value = step
            history.append(value)
        gradient = self.objective.gradient(q)
        converged = self.stationarity(q, gradient) <= self.cfg.conv_tol
        if not converged:
            logger.warning(f"⚠️ No convergence within {self.cfg.max_iters} iterations")
        return CovarianceMatrix(q, check=False), value, self.cfg.max_iters, converged, history


def build_objective(model: ChannelModel, cfg: OptConfig, rng: RandomStream) -> CapacityObjective:
    """Closed forms for the worked two-antenna channels, a frozen sample average otherwise"""
    if isinstance(model, SectionFiveAlpha):
        return AlphaClosedFormObjective(model.alpha)
    if isinstance(model, SectionFiveInf):
        return InfQuadratureObjective(cfg.quadrature_nodes)
    threads = cfg.threads or get_settings().threads
    return SampleAverageObjective(sample_batch(model, rng, cfg.n_saa_samples, threads=threads), threads=threads)


def evaluate_capacity(model: ChannelModel, q: CovarianceMatrix, cfg: OptConfig, rng: RandomStream) -> MIEstimate:
    """Fresh-sample estimate of I_H(q); exact for the worked two-antenna channels"""
    if isinstance(model, SectionFiveAlpha):
        a, b, c = (float(np.real(q.matrix[0, 0])), float(np.real(q.matrix[1, 1])), complex(q.matrix[1, 0]))
        return MIEstimate(mi_closed_form_alpha(model.alpha, a, b, c), 0.0, cfg.n_eval_samples, rng.seed)
    if isinstance(model, SectionFiveInf):
        a, b, c = (float(np.real(q.matrix[0, 0])), float(np.real(q.matrix[1, 1])), complex(q.matrix[1, 0]))
        return MIEstimate(mi_closed_form_inf(a, b, c), 0.0, cfg.n_eval_samples, rng.seed)
    return estimate_mi(model, q, cfg.n_eval_samples, rng)


def optimize_capacity(
    model: ChannelModel,
    group: Optional[SymmetryGroup] = None,
    cfg: Optional[OptConfig] = None,
) -> CapacityResult:
    """
    Ergodic capacity and an optimal input restricted to A_G(C_{N,1})

    Args:
        model: Channel model
        group: Symmetry group of the channel; defaults to the model's declared group
        cfg: Optimizer configuration; its seed drives both the frozen and the fresh draws

    Raises:
        UnsupportedGroupError: If the group's reduced set is not available
        NoDeclaredSymmetryError: If no group is given for a custom model
    """
    cfg = cfg or OptConfig()
    group = group if group is not None else known_symmetry_group(model)
    if group.dim != model.n:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="optimize_capacity", expected=model.n, actual=group.dim)
        )
    reduced = averaged_set(group)
    seed = cfg.seed if cfg.seed is not None else get_settings().seed or 0
    saa_stream, eval_stream = RandomStream(seed).split(2)
    logger.info(f"🚀 Optimizing over {describe_reduced_set(reduced)} for group {group_label(group)}")

    objective = build_objective(model, cfg, saa_stream)
    if isinstance(reduced, Singleton):
        q_star = reduced.q
        value, iterations, converged, history = objective.value(q_star.matrix), 0, True, []
    else:
        q_star, value, iterations, converged, history = CapacityOptimizer(group, objective, cfg).run()

    capacity = evaluate_capacity(model, q_star, cfg, eval_stream)
    capacity = MIEstimate(capacity.value, capacity.std_error, capacity.n_samples, seed)
    if converged:
        logger.info(f"✅ Capacity {capacity.value:.6f} ± {capacity.std_error:.2e} nats after {iterations} iterations")
    return CapacityResult(
        q_star=q_star,
        capacity=capacity,
        saa_value=value,
        reduced_set=reduced,
        iterations=iterations,
        converged=converged,
        group=group_label(group),
        objective_history=history,
    )


def capacity_closed_form_alpha(alpha: float) -> Tuple[float, float]:
    """
    (C, a_hat) for H_alpha: C = 2 log((1 + 2 alpha^2) / (2 alpha)), a_hat = 1 / (2 alpha^2)

    Raises:
        ValueError: If alpha < 1/sqrt(2)
    """
    if alpha < ALPHA_MIN - 1e-12:
        raise ValueError(ErrorMessages.ALPHA_RANGE.format(alpha=alpha))
    a_hat = min(1.0, 1.0 / (2 * alpha ** 2))
    return 2 * math.log((1 + 2 * alpha ** 2) / (2 * alpha)), a_hat


def capacity_closed_form_inf() -> Tuple[float, CovarianceMatrix]:
    """(log 5, diag(0, 1)) for H_inf"""
    return math.log(5.0), CovarianceMatrix.diagonal([0.0, 1.0])
