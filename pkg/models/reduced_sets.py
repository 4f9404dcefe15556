"""
Explicit parameterizations of reduced covariance sets A_G(C_{N,1}).
"""
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from models.enums import ReducedSetKind
from models.matrices import CovarianceMatrix, UnitaryMatrix


@dataclass(frozen=True, eq=False)
class Singleton:
    q: CovarianceMatrix
    kind = ReducedSetKind.SINGLETON

    @property
    def dim(self) -> int:
        return self.q.dim


@dataclass(frozen=True, eq=False)
class ConjugatedSimplex:
    """
    W (+)_k (p_k / n_k) I_{n_k} W* over probability vectors p

    Without block sizes every block has size one and this is W Diag_{N,1}(R+) W*.
    """
    w: UnitaryMatrix
    blocks: Optional[Tuple[int, ...]] = None
    kind = ReducedSetKind.CONJUGATED_SIMPLEX

    def __post_init__(self):
        blocks = self.blocks if self.blocks is not None else (1,) * self.w.dim
        if sum(blocks) != self.w.dim or any(b < 1 for b in blocks):
            raise ValueError(f"Block sizes {blocks} do not partition dimension {self.w.dim}")
        object.__setattr__(self, "blocks", tuple(int(b) for b in blocks))

    @property
    def dim(self) -> int:
        return self.w.dim

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True, eq=False)
class BlockKron:
    """
    inner (x) I_{n_iso}/n_iso, or I_{n_iso}/n_iso (x) inner when iso_first
    """
    inner: "ReducedSet"
    n_iso: int
    iso_first: bool = False
    kind = ReducedSetKind.BLOCK_KRON

    @property
    def dim(self) -> int:
        return self.inner.dim * self.n_iso


@dataclass(frozen=True, eq=False)
class WeightedDirectSum:
    """(+)_k p_k S_k over probability vectors p and points of the component sets S_k"""
    parts: Tuple["ReducedSet", ...]
    kind = ReducedSetKind.WEIGHTED_DIRECT_SUM

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def dim(self) -> int:
        return sum(part.dim for part in self.parts)


@dataclass(frozen=True)
class FullSet:
    n: int
    kind = ReducedSetKind.FULL_SET

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True, eq=False)
class ConjugatedSet:
    """W S W* for a reduced set S with no simpler conjugated form"""
    w: UnitaryMatrix
    inner: "ReducedSet"
    kind = ReducedSetKind.CONJUGATED_SET

    @property
    def dim(self) -> int:
        return self.w.dim


ReducedSet = Union[Singleton, ConjugatedSimplex, BlockKron, WeightedDirectSum, FullSet, ConjugatedSet]
