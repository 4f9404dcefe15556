"""
Core matrix value types: complex matrices, covariances, unitaries and seeded random streams.

All arrays held by the value types are complex128 and read-only after construction.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np

from config.constants import ErrorMessages, ToleranceConfig
from models.errors import InvalidMatrixError

ArrayLike = Union[np.ndarray, Sequence]


def as_complex_matrix(data: ArrayLike, name: str = "matrix") -> np.ndarray:
    """
    Convert input to a finite 2-D complex128 array

    Raises:
        InvalidMatrixError: If the input is not 2-D or has non-finite entries
    """
    array = np.array(data, dtype=np.complex128)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
        raise InvalidMatrixError(f"{name} must be a non-empty 2-D array, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidMatrixError(ErrorMessages.NOT_FINITE.format(name=name))
    return array


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def _require_square(array: np.ndarray, name: str):
    if array.shape[0] != array.shape[1]:
        raise InvalidMatrixError(ErrorMessages.NOT_SQUARE.format(name=name, shape=array.shape))


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """
    Hermitian positive semidefinite matrix with unit trace (element of C_{N,1})

    Construction validates the invariants; pass check=False only for values
    produced by code that already guarantees them.
    """
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        array = as_complex_matrix(self.matrix, "covariance")
        _require_square(array, "covariance")
        if self.check:
            scale = max(1.0, float(np.linalg.norm(array)))
            residual = float(np.linalg.norm(array - array.conj().T))
            if residual > ToleranceConfig.HERMITIAN_REL * scale:
                raise InvalidMatrixError(
                    ErrorMessages.NOT_HERMITIAN.format(name="covariance", residual=residual)
                )
            min_eig = float(np.linalg.eigvalsh((array + array.conj().T) / 2).min())
            if min_eig < ToleranceConfig.PSD_MIN_EIGENVALUE:
                raise InvalidMatrixError(ErrorMessages.NOT_PSD.format(name="covariance", min_eig=min_eig))
            trace = complex(np.trace(array))
            if abs(trace - 1.0) > ToleranceConfig.TRACE:
                raise InvalidMatrixError(ErrorMessages.BAD_TRACE.format(name="covariance", trace=trace))
        object.__setattr__(self, "matrix", _frozen(array))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def isotropic(cls, dim: int) -> "CovarianceMatrix":
        """The normalized identity I_N/N"""
        return cls(np.eye(dim, dtype=np.complex128) / dim, check=False)

    @classmethod
    def diagonal(cls, entries: Sequence[float]) -> "CovarianceMatrix":
        return cls(np.diag(np.asarray(entries, dtype=np.complex128)))

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    """N x N unitary matrix with ||V V* - I||_F <= 1e-10"""
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        array = as_complex_matrix(self.matrix, "unitary")
        _require_square(array, "unitary")
        if self.check:
            residual = float(np.linalg.norm(array @ array.conj().T - np.eye(array.shape[0])))
            if residual > ToleranceConfig.UNITARY:
                raise InvalidMatrixError(ErrorMessages.NOT_UNITARY.format(name="unitary", residual=residual))
        object.__setattr__(self, "matrix", _frozen(array))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def adjoint(self) -> np.ndarray:
        return self.matrix.conj().T

    @classmethod
    def identity(cls, dim: int) -> "UnitaryMatrix":
        return cls(np.eye(dim, dtype=np.complex128), check=False)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


def as_array(value: Union[CovarianceMatrix, UnitaryMatrix, ArrayLike]) -> np.ndarray:
    """Plain complex array view of a value type or array-like"""
    if isinstance(value, (CovarianceMatrix, UnitaryMatrix)):
        return value.matrix
    return as_complex_matrix(value)


class RandomStream:
    """
    Seeded random stream

    Identical seeds give identical sample sequences. Child streams obtained with
    split() are independent and deterministic given the parent seed and the
    order of split calls.
    """

    def __init__(self, seed: int, seed_sequence: Optional[np.random.SeedSequence] = None):
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self._seed = int(seed)
        self._seed_sequence = seed_sequence or np.random.SeedSequence(self._seed)
        self._generator = np.random.Generator(np.random.PCG64(self._seed_sequence))

    @property
    def seed(self) -> int:
        """Root seed this stream descends from"""
        return self._seed

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def split(self, count: int) -> List["RandomStream"]:
        """Derive count independent child streams"""
        children = self._seed_sequence.spawn(count)
        return [RandomStream(self._seed, seed_sequence=child) for child in children]

    def spawn(self) -> "RandomStream":
        return self.split(1)[0]

    def __repr__(self) -> str:
        return f"RandomStream(seed={self._seed})"
