"""
Dense complex matrix numerics shared by every other service.

All logarithms are natural (nats).
"""
import logging
from typing import Union

import numpy as np
from scipy import linalg

from config.constants import ErrorMessages
from models.errors import DimensionMismatchError, InvalidMatrixError
from models.matrices import CovarianceMatrix, as_array, as_complex_matrix

logger = logging.getLogger(__name__)

MatrixInput = Union[CovarianceMatrix, np.ndarray]


def _check_pair(h: np.ndarray, q: np.ndarray, operation: str):
    if h.shape[-1] != q.shape[0]:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation=operation, expected=q.shape[0], actual=h.shape[-1])
        )


def _as_covariance_array(q: MatrixInput) -> np.ndarray:
    if isinstance(q, CovarianceMatrix):
        return q.matrix
    return CovarianceMatrix(q).matrix


def logdet_kernel(h: np.ndarray, q: MatrixInput) -> float:
    """
    log det(I_M + H Q H*) for one channel realization

    Args:
        h: M x N channel matrix
        q: N x N covariance

    Returns:
        The mutual information integrand in nats (>= 0)

    Raises:
        DimensionMismatchError: If H has the wrong number of columns
        InvalidMatrixError: If Q is not a valid covariance
    """
    h = as_complex_matrix(h, "H")
    q = _as_covariance_array(q)
    _check_pair(h, q, "logdet_kernel")
    return float(logdet_batch(h[None, :, :], q)[0])


def logdet_batch(hs: np.ndarray, q: MatrixInput) -> np.ndarray:
    """log det(I + H_l Q H_l*) for a stack of draws of shape (L, M, N)"""
    q = as_array(q) if isinstance(q, CovarianceMatrix) else np.asarray(q, dtype=np.complex128)
    hs = np.asarray(hs, dtype=np.complex128)
    _check_pair(hs, q, "logdet_batch")
    m = hs.shape[1]
    gram = np.eye(m) + hs @ q @ np.conj(np.swapaxes(hs, -1, -2))
    gram = (gram + np.conj(np.swapaxes(gram, -1, -2))) / 2
    try:
        chol = np.linalg.cholesky(gram)
    except np.linalg.LinAlgError:
        # Q slightly outside the PSD cone during a line search
        eigenvalues = np.linalg.eigvalsh(gram)
        if np.any(eigenvalues <= 0):
            raise InvalidMatrixError(
                ErrorMessages.LOG_ARGUMENT.format(value=float(eigenvalues.min()), operation="logdet_batch")
            )
        return np.sum(np.log(eigenvalues), axis=-1)
    diagonal = np.real(np.diagonal(chol, axis1=-2, axis2=-1))
    return 2.0 * np.sum(np.log(diagonal), axis=-1)


def logdet_gradient_batch(hs: np.ndarray, q: MatrixInput) -> np.ndarray:
    """Mean over the stack of H*(I + H Q H*)^-1 H, the Hermitian gradient of the objective"""
    q = as_array(q) if isinstance(q, CovarianceMatrix) else np.asarray(q, dtype=np.complex128)
    hs = np.asarray(hs, dtype=np.complex128)
    _check_pair(hs, q, "logdet_gradient_batch")
    hs_adj = np.conj(np.swapaxes(hs, -1, -2))
    gram = np.eye(hs.shape[1]) + hs @ q @ hs_adj
    gradient = np.mean(hs_adj @ np.linalg.solve(gram, hs), axis=0)
    return (gradient + gradient.conj().T) / 2


def project_onto_simplex(values: np.ndarray) -> np.ndarray:
    """
    Euclidean projection of a real vector onto the probability simplex

    Sort-and-threshold: the largest k with a_k > (sum_{i<=k} a_i - 1) / k fixes the shift.
    """
    values = np.asarray(values, dtype=float)
    ordered = -np.sort(-values)
    thresholds = (np.cumsum(ordered) - 1.0) / np.arange(1, values.size + 1)
    k = np.nonzero(ordered > thresholds)[0][-1]
    return np.maximum(values - thresholds[k], 0.0)


def project_to_covariance(a: np.ndarray) -> CovarianceMatrix:
    """
    Nearest unit-trace PSD matrix (Frobenius norm) to the Hermitian part of A

    Raises:
        InvalidMatrixError: If A is not square or has non-finite entries
    """
    a = as_complex_matrix(a, "A")
    if a.shape[0] != a.shape[1]:
        raise InvalidMatrixError(ErrorMessages.NOT_SQUARE.format(name="A", shape=a.shape))
    hermitian = (a + a.conj().T) / 2
    eigenvalues, eigenvectors = linalg.eigh(hermitian)
    weights = project_onto_simplex(eigenvalues)
    projected = (eigenvectors * weights) @ eigenvectors.conj().T
    projected = (projected + projected.conj().T) / 2
    projected /= np.real(np.trace(projected))
    return CovarianceMatrix(projected, check=False)


def frobenius_norm(a: np.ndarray) -> float:
    """sqrt(Tr(A* A))"""
    return float(linalg.norm(as_complex_matrix(a, "A"), "fro"))


def frobenius_norm_batch(hs: np.ndarray) -> np.ndarray:
    """Frobenius norms of a stack, scaled by the largest modulus so huge entries do not overflow"""
    hs = np.asarray(hs, dtype=np.complex128)
    moduli = np.abs(hs)
    scale = moduli.max(axis=(-2, -1))
    safe = np.where(scale > 0, scale, 1.0)
    ratios = moduli / safe[..., None, None]
    return scale * np.sqrt(np.sum(ratios * ratios, axis=(-2, -1)))


def logdet_upper_bound(h: np.ndarray) -> float:
    """M log(1 + (N/M) ||H||_F^2), an upper bound of log det(I + H Q H*) over unit-trace Q"""
    h = as_complex_matrix(h, "H")
    m, n = h.shape
    return float(m * np.log1p((n / m) * frobenius_norm(h) ** 2))


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Draw from the Gaussian unitary ensemble, unit variance off the diagonal"""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    return (g + g.conj().T) / np.sqrt(2)


def random_covariance(rng: np.random.Generator, dim: int) -> CovarianceMatrix:
    """Random full-rank unit-trace covariance W W* / Tr(W W*) with W complex Gaussian"""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q = g @ g.conj().T
    q = (q + q.conj().T) / 2
    return CovarianceMatrix(q / np.real(np.trace(q)), check=False)


def hermitian_residual(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - a.conj().T))


def is_valid_covariance(q: np.ndarray) -> bool:
    try:
        CovarianceMatrix(q)
    except InvalidMatrixError:
        return False
    return True


def min_eigenvalue(q: np.ndarray) -> float:
    q = np.asarray(q, dtype=np.complex128)
    return float(linalg.eigvalsh((q + q.conj().T) / 2)[0])


def trace_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """<X, Y> = Tr(X* Y)"""
    return complex(np.vdot(x, y))
