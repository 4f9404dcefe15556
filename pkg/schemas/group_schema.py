"""Symmetry group descriptor schema with validation."""
from typing import List, Optional

from pydantic import Field, model_validator

from models.enums import GroupKind, MultisetSemantics
from models.groups import (
    Conjugated,
    ConjugatedTorus,
    DirectSum,
    FiniteMultiset,
    FullUnitary,
    Permutations,
    SignedPermutations,
    SignFlips,
    SymmetryGroup,
    TensorProduct,
    Trivial,
)
from models.matrices import UnitaryMatrix
from schemas.base_schema import BaseSchema
from schemas.matrix_schema import MatrixLiteral

SIZED_KINDS = {
    GroupKind.FULL_UNITARY: FullUnitary,
    GroupKind.PERMUTATIONS: Permutations,
    GroupKind.SIGN_FLIPS: SignFlips,
    GroupKind.SIGNED_PERMUTATIONS: SignedPermutations,
    GroupKind.TRIVIAL: Trivial,
}

REQUIRED_FIELDS = {
    GroupKind.CONJUGATED_TORUS: ("w",),
    GroupKind.FINITE: ("elements",),
    GroupKind.TENSOR: ("g1", "g2"),
    GroupKind.DIRECT_SUM: ("parts",),
    GroupKind.CONJUGATED: ("w", "inner"),
    **{kind: ("n",) for kind in SIZED_KINDS},
}


class GroupSchema(BaseSchema):
    """
    Tagged group descriptor, e.g. {"kind": "full_unitary", "n": 2} or
    {"kind": "tensor", "g1": {...}, "g2": {...}}
    """

    kind: GroupKind = Field(..., description="Group variant")
    n: Optional[int] = Field(default=None, ge=1, description="Dimension for the sized variants")
    w: Optional[MatrixLiteral] = Field(default=None, description="Unitary basis of a conjugated group")
    elements: Optional[List[MatrixLiteral]] = Field(default=None, min_length=1)
    semantics: MultisetSemantics = Field(default=MultisetSemantics.MULTISET)
    g1: Optional["GroupSchema"] = None
    g2: Optional["GroupSchema"] = None
    parts: Optional[List["GroupSchema"]] = Field(default=None, min_length=1)
    inner: Optional["GroupSchema"] = None

    @model_validator(mode="after")
    def check_required_fields(self) -> "GroupSchema":
        missing = [name for name in REQUIRED_FIELDS[self.kind] if getattr(self, name) is None]
        if missing:
            raise ValueError(f"group kind {self.kind.value!r} requires {', '.join(missing)}")
        return self

    def to_group(self) -> SymmetryGroup:
        """
        Build the domain descriptor

        Raises:
            InvalidMatrixError: If a basis or element is not unitary
            GroupClosureError: If a multiset with group semantics is not closed
        """
        if self.kind in SIZED_KINDS:
            return SIZED_KINDS[self.kind](self.n)
        if self.kind == GroupKind.CONJUGATED_TORUS:
            return ConjugatedTorus(UnitaryMatrix(self.w))
        if self.kind == GroupKind.FINITE:
            return FiniteMultiset(tuple(UnitaryMatrix(e) for e in self.elements), self.semantics)
        if self.kind == GroupKind.TENSOR:
            return TensorProduct(self.g1.to_group(), self.g2.to_group())
        if self.kind == GroupKind.DIRECT_SUM:
            return DirectSum(tuple(part.to_group() for part in self.parts))
        return Conjugated(UnitaryMatrix(self.w), self.inner.to_group())


GroupSchema.model_rebuild()
