"""Channel descriptor schemas with validation."""
from typing import List, Optional

import numpy as np
from pydantic import Field, model_validator

from models.channels import (
    BlockInvariant,
    ChannelModel,
    ColumnSymmetric,
    EntryLaw,
    Gaussian,
    RankOneProduct,
    Ricean,
    SectionFiveAlpha,
    SectionFiveInf,
)
from models.enums import ChannelKind, EntryLawKind, OuterSymmetry, RadiusLaw
from models.matrices import UnitaryMatrix
from schemas.base_schema import BaseSchema
from schemas.matrix_schema import MatrixLiteral
from services.channel_service import heavy_tail_channel

REQUIRED_FIELDS = {
    ChannelKind.GAUSSIAN: ("m", "n"),
    ChannelKind.COLUMN_SYMMETRIC: ("column_laws",),
    ChannelKind.RANK_ONE: ("m", "n"),
    ChannelKind.RICEAN: ("hbar",),
    ChannelKind.BLOCK_INVARIANT: ("d", "n_block", "inner"),
    ChannelKind.SEC5_ALPHA: ("alpha",),
    ChannelKind.SEC5_INF: (),
    ChannelKind.HEAVY_TAIL: ("m", "n"),
}


class EntryLawSchema(BaseSchema):
    kind: EntryLawKind = Field(default=EntryLawKind.COMPLEX_GAUSSIAN)
    scale: float = Field(default=1.0, gt=0)
    radius_law: RadiusLaw = Field(default=RadiusLaw.CONSTANT, description="Radius of a uniform-phase entry")

    def to_law(self) -> EntryLaw:
        return EntryLaw(self.kind, self.scale, self.radius_law)


class ChannelSchema(BaseSchema):
    """
    Tagged channel descriptor, e.g. {"kind": "gaussian", "m": 4, "n": 4},
    {"kind": "ricean", "hbar": [[1, 0], [0, 1]], "scale": 0.5} or {"kind": "sec5_alpha", "alpha": 2.0}
    """

    kind: ChannelKind = Field(..., description="Channel variant")
    m: Optional[int] = Field(default=None, ge=1, description="Receive antennas")
    n: Optional[int] = Field(default=None, ge=1, description="Transmit antennas")
    scale: float = Field(default=1.0, gt=0)
    w_m: Optional[MatrixLiteral] = Field(default=None, description="Left unitary, identity when omitted")
    w_n: Optional[MatrixLiteral] = Field(default=None, description="Right unitary, identity when omitted")
    column_laws: Optional[List[EntryLawSchema]] = Field(default=None, min_length=1)
    law_m: EntryLawSchema = Field(default_factory=EntryLawSchema)
    law_n: EntryLawSchema = Field(default_factory=EntryLawSchema)
    hbar: Optional[MatrixLiteral] = Field(default=None, description="Mean matrix of a Ricean channel")
    sv_tol: Optional[float] = Field(default=None, gt=0)
    d: Optional[int] = Field(default=None, ge=1)
    n_block: Optional[int] = Field(default=None, ge=1)
    inner: Optional["ChannelSchema"] = None
    outer: OuterSymmetry = Field(default=OuterSymmetry.NONE)
    alpha: Optional[float] = Field(default=None, description="H_alpha parameter, at least 1/sqrt(2)")

    @model_validator(mode="after")
    def check_required_fields(self) -> "ChannelSchema":
        if self.kind == ChannelKind.CUSTOM:
            raise ValueError("custom samplers are code, not configuration; use heavy_tail or a built-in kind")
        missing = [name for name in REQUIRED_FIELDS[self.kind] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"channel kind {self.kind.value!r} requires {', '.join(missing)}")
        if self.kind == ChannelKind.COLUMN_SYMMETRIC and self.w_m is None and self.m is None:
            raise ValueError("column_symmetric needs m or w_m")
        if self.kind == ChannelKind.COLUMN_SYMMETRIC and self.w_n is None and self.n is None:
            raise ValueError("column_symmetric needs n or w_n")
        return self

    def _unitary(self, matrix: Optional[np.ndarray], dim: Optional[int]) -> UnitaryMatrix:
        return UnitaryMatrix.identity(dim) if matrix is None else UnitaryMatrix(matrix)

    def to_channel(self) -> ChannelModel:
        """
        Build the domain descriptor

        Raises:
            InvalidMatrixError: If a unitary is not unitary or hbar is not finite
            ValueError: If a parameter is out of range
        """
        if self.kind == ChannelKind.GAUSSIAN:
            return Gaussian(self.m, self.n, self.scale)
        if self.kind == ChannelKind.COLUMN_SYMMETRIC:
            return ColumnSymmetric(
                self._unitary(self.w_m, self.m),
                self._unitary(self.w_n, self.n),
                tuple(law.to_law() for law in self.column_laws),
            )
        if self.kind == ChannelKind.RANK_ONE:
            return RankOneProduct(self.m, self.n, self.law_m.to_law(), self.law_n.to_law())
        if self.kind == ChannelKind.RICEAN:
            return Ricean(self.hbar, self.scale, self.sv_tol)
        if self.kind == ChannelKind.BLOCK_INVARIANT:
            return BlockInvariant(self.d, self.n_block, self.inner.to_channel(), self.outer)
        if self.kind == ChannelKind.SEC5_ALPHA:
            return SectionFiveAlpha(self.alpha)
        if self.kind == ChannelKind.SEC5_INF:
            return SectionFiveInf()
        return heavy_tail_channel(self.m, self.n)


ChannelSchema.model_rebuild()
