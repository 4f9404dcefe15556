"""
Symmetry group descriptors: closed subgroups of U(N) and finite multisets.

Descriptors are immutable data; sampling and averaging live in services.symmetry_service.
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from config.constants import ErrorMessages, ToleranceConfig
from models.enums import GroupKind, MultisetSemantics
from models.errors import DimensionMismatchError, GroupClosureError
from models.matrices import UnitaryMatrix


@dataclass(frozen=True)
class FullUnitary:
    n: int
    kind = GroupKind.FULL_UNITARY

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class ConjugatedTorus:
    """W Diag_N(T) W*"""
    w: UnitaryMatrix
    kind = GroupKind.CONJUGATED_TORUS

    @property
    def dim(self) -> int:
        return self.w.dim


@dataclass(frozen=True)
class Permutations:
    """S_N, the N x N permutation matrices"""
    n: int
    kind = GroupKind.PERMUTATIONS

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class SignFlips:
    """Diag_N(+-1)"""
    n: int
    kind = GroupKind.SIGN_FLIPS

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class SignedPermutations:
    """S_N^+- = S_N Diag_N(+-1)"""
    n: int
    kind = GroupKind.SIGNED_PERMUTATIONS

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class Trivial:
    n: int
    kind = GroupKind.TRIVIAL

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class FiniteMultiset:
    """
    Finite multiset of unitaries (repetitions allowed)

    With GROUP semantics the elements must be closed under product and inverse;
    that is checked at construction. MULTISET semantics only supports the plain
    average (1/k) sum_i V_i A V_i*.
    """
    elements: Tuple[UnitaryMatrix, ...]
    semantics: MultisetSemantics = MultisetSemantics.MULTISET
    kind = GroupKind.FINITE

    def __post_init__(self):
        elements = tuple(e if isinstance(e, UnitaryMatrix) else UnitaryMatrix(e) for e in self.elements)
        if not elements:
            raise ValueError("A finite multiset needs at least one element")
        dims = {e.dim for e in elements}
        if len(dims) != 1:
            raise DimensionMismatchError(f"Multiset elements have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "elements", elements)
        if self.semantics == MultisetSemantics.GROUP:
            _check_closure(self.stacked())

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def stacked(self) -> np.ndarray:
        """Elements as an (k, N, N) array"""
        return np.stack([e.matrix for e in self.elements])


def _contains(stack: np.ndarray, candidate: np.ndarray) -> bool:
    residuals = np.linalg.norm(stack - candidate[None, :, :], axis=(1, 2))
    return bool(residuals.min() <= ToleranceConfig.GROUP_CLOSURE * max(1.0, np.sqrt(candidate.shape[0])))


def _check_closure(stack: np.ndarray):
    for element in stack:
        if not _contains(stack, element.conj().T):
            raise GroupClosureError(ErrorMessages.MULTISET_NOT_GROUP.format(operation="inverse"))
        for other in stack:
            if not _contains(stack, element @ other):
                raise GroupClosureError(ErrorMessages.MULTISET_NOT_GROUP.format(operation="product"))


@dataclass(frozen=True, eq=False)
class TensorProduct:
    """G1 (x) G2 acting on dimension N1 * N2"""
    g1: "SymmetryGroup"
    g2: "SymmetryGroup"
    kind = GroupKind.TENSOR

    @property
    def dim(self) -> int:
        return self.g1.dim * self.g2.dim


@dataclass(frozen=True, eq=False)
class DirectSum:
    """G_1 (+) ... (+) G_K acting block-diagonally on dimension sum N_k"""
    parts: Tuple["SymmetryGroup", ...]
    kind = GroupKind.DIRECT_SUM

    def __post_init__(self):
        if not self.parts:
            raise ValueError("A direct sum needs at least one component")
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def dim(self) -> int:
        return sum(part.dim for part in self.parts)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(part.dim for part in self.parts)


@dataclass(frozen=True, eq=False)
class Conjugated:
    """W G W* for a structured inner group G"""
    w: UnitaryMatrix
    inner: "SymmetryGroup"
    kind = GroupKind.CONJUGATED

    def __post_init__(self):
        if self.w.dim != self.inner.dim:
            raise DimensionMismatchError(
                ErrorMessages.DIMENSION_MISMATCH.format(
                    operation="Conjugated", expected=self.inner.dim, actual=self.w.dim
                )
            )

    @property
    def dim(self) -> int:
        return self.w.dim


SymmetryGroup = Union[
    FullUnitary,
    ConjugatedTorus,
    Permutations,
    SignFlips,
    SignedPermutations,
    FiniteMultiset,
    TensorProduct,
    DirectSum,
    Trivial,
    Conjugated,
]

STRUCTURED_KINDS = frozenset(kind for kind in GroupKind if kind != GroupKind.FINITE)


def group_label(group: SymmetryGroup) -> str:
    """Short human readable description"""
    if isinstance(group, TensorProduct):
        return f"({group_label(group.g1)} (x) {group_label(group.g2)})"
    if isinstance(group, DirectSum):
        return "(" + " (+) ".join(group_label(p) for p in group.parts) + ")"
    if isinstance(group, Conjugated):
        return f"W {group_label(group.inner)} W*"
    if isinstance(group, FiniteMultiset):
        return f"finite[{len(group.elements)}, {group.semantics.value}]({group.dim})"
    return f"{group.kind.value}({group.dim})"
