"""
Channel model descriptors: sampleable laws over M x N propagation matrices.

Sampling lives in services.channel_service; descriptors validate their own shapes.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np

from config.constants import ALPHA_MIN, ErrorMessages
from models.enums import ChannelKind, EntryLawKind, OuterSymmetry, RadiusLaw
from models.errors import DimensionMismatchError
from models.matrices import UnitaryMatrix, as_complex_matrix


def _require_positive(name: str, value: float):
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class EntryLaw:
    """Entry law symmetric with respect to zero"""
    kind: EntryLawKind = EntryLawKind.COMPLEX_GAUSSIAN
    scale: float = 1.0
    radius_law: RadiusLaw = RadiusLaw.CONSTANT

    def __post_init__(self):
        _require_positive("scale", self.scale)


@dataclass(frozen=True)
class Gaussian:
    m: int
    n: int
    scale: float = 1.0
    kind = ChannelKind.GAUSSIAN

    def __post_init__(self):
        _require_positive("scale", self.scale)


@dataclass(frozen=True, eq=False)
class ColumnSymmetric:
    """H = W_M H~ W_N with independent columns, column j drawn from column_laws[j] times a uniform phase"""
    w_m: UnitaryMatrix
    w_n: UnitaryMatrix
    column_laws: Tuple[EntryLaw, ...]
    kind = ChannelKind.COLUMN_SYMMETRIC

    def __post_init__(self):
        laws = tuple(self.column_laws)
        if len(laws) == 1 and self.w_n.dim > 1:
            laws = laws * self.w_n.dim
        if len(laws) != self.w_n.dim:
            raise DimensionMismatchError(
                ErrorMessages.DIMENSION_MISMATCH.format(
                    operation="ColumnSymmetric columns", expected=self.w_n.dim, actual=len(laws)
                )
            )
        object.__setattr__(self, "column_laws", laws)

    @property
    def m(self) -> int:
        return self.w_m.dim

    @property
    def n(self) -> int:
        return self.w_n.dim


@dataclass(frozen=True)
class RankOneProduct:
    """H = c_M c_N*, entries independent, law times uniform phase"""
    m: int
    n: int
    law_m: EntryLaw = field(default_factory=EntryLaw)
    law_n: EntryLaw = field(default_factory=EntryLaw)
    kind = ChannelKind.RANK_ONE


@dataclass(frozen=True, eq=False)
class Ricean:
    """H = Hbar + scale * Gaussian"""
    hbar: np.ndarray
    scale: float = 1.0
    sv_tol: Optional[float] = None
    kind = ChannelKind.RICEAN

    def __post_init__(self):
        _require_positive("scale", self.scale)
        hbar = as_complex_matrix(self.hbar, "hbar")
        hbar.setflags(write=False)
        object.__setattr__(self, "hbar", hbar)

    @property
    def m(self) -> int:
        return self.hbar.shape[0]

    @property
    def n(self) -> int:
        return self.hbar.shape[1]


@dataclass(frozen=True, eq=False)
class BlockInvariant:
    """
    H = X (V (x) U) with X drawn from inner (M x dN), U Haar on U(N), V per outer

    Satisfies H (I_d (x) W) = H in law for every W in U(N).
    """
    d: int
    n_block: int
    inner: "ChannelModel"
    outer: OuterSymmetry = OuterSymmetry.NONE
    kind = ChannelKind.BLOCK_INVARIANT

    def __post_init__(self):
        if self.inner.n != self.d * self.n_block:
            raise DimensionMismatchError(
                ErrorMessages.DIMENSION_MISMATCH.format(
                    operation="BlockInvariant inner columns", expected=self.d * self.n_block, actual=self.inner.n
                )
            )

    @property
    def m(self) -> int:
        return self.inner.m

    @property
    def n(self) -> int:
        return self.d * self.n_block


@dataclass(frozen=True)
class SectionFiveAlpha:
    """H_alpha = [[1, 0], [0, alpha v]], v uniform on the unit circle"""
    alpha: float
    kind = ChannelKind.SEC5_ALPHA

    def __post_init__(self):
        if self.alpha < ALPHA_MIN - 1e-12 or not math.isfinite(self.alpha):
            raise ValueError(ErrorMessages.ALPHA_RANGE.format(alpha=self.alpha))

    m = 2
    n = 2


@dataclass(frozen=True)
class SectionFiveInf:
    """H_inf = [[0, 0], [1, 2 v]]"""
    kind = ChannelKind.SEC5_INF
    m = 2
    n = 2


Sampler = Callable[[np.random.Generator, int], np.ndarray]


@dataclass(frozen=True, eq=False)
class Custom:
    """User sampler: (generator, count) -> array of shape (count, m, n)"""
    sampler: Sampler
    m: int
    n: int
    name: str = "custom"
    kind = ChannelKind.CUSTOM


ChannelModel = Union[
    Gaussian,
    ColumnSymmetric,
    RankOneProduct,
    Ricean,
    BlockInvariant,
    SectionFiveAlpha,
    SectionFiveInf,
    Custom,
]
