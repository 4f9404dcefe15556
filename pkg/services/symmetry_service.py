"""
Haar sampling, average operators and reduced covariance sets for the structured groups.

Every closed-form average here is exact; Monte Carlo averages are only used by tests
as an oracle.
"""
import logging
from functools import singledispatch
from typing import Any, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from config.constants import ErrorMessages, ToleranceConfig
from models.enums import MultisetSemantics
from models.errors import (
    DimensionMismatchError,
    GroupClosureError,
    InfeasibleParameterError,
    UnsupportedGroupError,
)
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
    group_label,
)
from models.matrices import CovarianceMatrix, RandomStream, UnitaryMatrix, as_array, as_complex_matrix
from models.reduced_sets import (
    BlockKron,
    ConjugatedSet,
    ConjugatedSimplex,
    FullSet,
    ReducedSet,
    Singleton,
    WeightedDirectSum,
)

logger = logging.getLogger(__name__)

RandomSource = Union[RandomStream, np.random.Generator]


def _generator(rng: RandomSource) -> np.random.Generator:
    return rng.generator if isinstance(rng, RandomStream) else rng


def _adjoint(stack: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(stack, -1, -2))


def _batch_kron(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    count, n1, _ = left.shape
    n2 = right.shape[1]
    return np.einsum("kij,kab->kiajb", left, right).reshape(count, n1 * n2, n1 * n2)


def _batch_block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    count = blocks[0].shape[0]
    size = sum(block.shape[1] for block in blocks)
    out = np.zeros((count, size, size), dtype=np.complex128)
    offset = 0
    for block in blocks:
        n = block.shape[1]
        out[:, offset:offset + n, offset:offset + n] = block
        offset += n
    return out


def _permutation_stack(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    order = np.argsort(rng.random((count, n)), axis=1)
    return np.eye(n, dtype=np.complex128)[order]


# =============================================================================
# HAAR SAMPLING
# =============================================================================

@singledispatch
def _haar_batch(group: Any, rng: np.random.Generator, count: int) -> np.ndarray:
    raise UnsupportedGroupError(f"No Haar sampler for {type(group).__name__}")


@_haar_batch.register
def _(group: FullUnitary, rng: np.random.Generator, count: int) -> np.ndarray:
    n = group.n
    z = (rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diagonal = np.diagonal(r, axis1=-2, axis2=-1)
    phases = diagonal / np.abs(diagonal)
    return q * phases[:, None, :]


@_haar_batch.register
def _(group: ConjugatedTorus, rng: np.random.Generator, count: int) -> np.ndarray:
    w = group.w.matrix
    phases = np.exp(2j * np.pi * rng.random((count, group.dim)))
    return (w[None, :, :] * phases[:, None, :]) @ w.conj().T


@_haar_batch.register
def _(group: Permutations, rng: np.random.Generator, count: int) -> np.ndarray:
    return _permutation_stack(rng, count, group.n)


@_haar_batch.register
def _(group: SignFlips, rng: np.random.Generator, count: int) -> np.ndarray:
    signs = rng.choice(np.array([-1.0, 1.0]), size=(count, group.n))
    return np.einsum("ki,ij->kij", signs.astype(np.complex128), np.eye(group.n))


@_haar_batch.register
def _(group: SignedPermutations, rng: np.random.Generator, count: int) -> np.ndarray:
    permutations = _permutation_stack(rng, count, group.n)
    signs = rng.choice(np.array([-1.0, 1.0]), size=(count, group.n))
    return permutations * signs[:, None, :]


@_haar_batch.register
def _(group: Trivial, rng: np.random.Generator, count: int) -> np.ndarray:
    return np.broadcast_to(np.eye(group.n, dtype=np.complex128), (count, group.n, group.n)).copy()


@_haar_batch.register
def _(group: FiniteMultiset, rng: np.random.Generator, count: int) -> np.ndarray:
    if group.semantics != MultisetSemantics.GROUP:
        raise GroupClosureError(ErrorMessages.MULTISET_NOT_GROUP.format(operation="product and inverse"))
    return group.stacked()[rng.integers(len(group.elements), size=count)]


@_haar_batch.register
def _(group: TensorProduct, rng: np.random.Generator, count: int) -> np.ndarray:
    return _batch_kron(_haar_batch(group.g1, rng, count), _haar_batch(group.g2, rng, count))


@_haar_batch.register
def _(group: DirectSum, rng: np.random.Generator, count: int) -> np.ndarray:
    return _batch_block_diag([_haar_batch(part, rng, count) for part in group.parts])


@_haar_batch.register
def _(group: Conjugated, rng: np.random.Generator, count: int) -> np.ndarray:
    w = group.w.matrix
    return w @ _haar_batch(group.inner, rng, count) @ w.conj().T


def haar_sample_batch(group: SymmetryGroup, rng: RandomSource, count: int) -> np.ndarray:
    """
    Draw count independent Haar-distributed elements as a (count, N, N) array

    Raises:
        GroupClosureError: If a finite multiset without group semantics is sampled
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    return _haar_batch(group, _generator(rng), count)


def haar_sample(group: SymmetryGroup, rng: RandomSource) -> UnitaryMatrix:
    """One draw from the Haar measure of the group"""
    return UnitaryMatrix(haar_sample_batch(group, rng, 1)[0], check=False)


# =============================================================================
# AVERAGE OPERATORS
# =============================================================================

def _partial_average(a: np.ndarray, n1: int, n2: int, left, right) -> np.ndarray:
    """Apply left to the first tensor factor and right to the second of an (n1 n2)^2 matrix"""
    blocks = a.reshape(n1, n2, n1, n2).copy()
    for i in range(n1):
        for j in range(n1):
            blocks[i, :, j, :] = right(blocks[i, :, j, :])
    for x in range(n2):
        for y in range(n2):
            blocks[:, x, :, y] = left(blocks[:, x, :, y])
    return blocks.reshape(n1 * n2, n1 * n2)


@singledispatch
def _average(group: Any, a: np.ndarray) -> np.ndarray:
    raise UnsupportedGroupError(f"No average operator for {type(group).__name__}")


@_average.register(FullUnitary)
@_average.register(SignedPermutations)
def _(group, a: np.ndarray) -> np.ndarray:
    return np.trace(a) / group.dim * np.eye(group.dim, dtype=np.complex128)


@_average.register
def _(group: ConjugatedTorus, a: np.ndarray) -> np.ndarray:
    w = group.w.matrix
    rotated = w.conj().T @ a @ w
    return (w * np.diagonal(rotated)) @ w.conj().T


@_average.register
def _(group: Permutations, a: np.ndarray) -> np.ndarray:
    n = group.n
    if n == 1:
        return a.copy()
    trace = np.trace(a)
    off_diagonal = (np.sum(a) - trace) / (n * (n - 1))
    identity = np.eye(n, dtype=np.complex128)
    return trace / n * identity + off_diagonal * (np.ones((n, n)) - identity)


@_average.register
def _(group: SignFlips, a: np.ndarray) -> np.ndarray:
    return np.diag(np.diagonal(a)).astype(np.complex128)


@_average.register
def _(group: Trivial, a: np.ndarray) -> np.ndarray:
    return a.copy()


@_average.register
def _(group: FiniteMultiset, a: np.ndarray) -> np.ndarray:
    stack = group.stacked()
    return np.mean(stack @ a @ _adjoint(stack), axis=0)


@_average.register
def _(group: TensorProduct, a: np.ndarray) -> np.ndarray:
    return _partial_average(
        a,
        group.g1.dim,
        group.g2.dim,
        lambda block: _average(group.g1, block),
        lambda block: _average(group.g2, block),
    )


@_average.register
def _(group: DirectSum, a: np.ndarray) -> np.ndarray:
    means = _checked_component_means(group)
    sizes = group.block_sizes
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    out = np.zeros_like(a)
    for k, part in enumerate(group.parts):
        rows = slice(offsets[k], offsets[k + 1])
        for l in range(len(group.parts)):
            cols = slice(offsets[l], offsets[l + 1])
            if k == l:
                out[rows, cols] = _average(part, a[rows, cols])
            else:
                out[rows, cols] = means[k] @ a[rows, cols] @ means[l].conj().T
    return out


@_average.register
def _(group: Conjugated, a: np.ndarray) -> np.ndarray:
    w = group.w.matrix
    return w @ _average(group.inner, w.conj().T @ a @ w) @ w.conj().T


def average(group: SymmetryGroup, a) -> np.ndarray:
    """
    A_G(A), the Haar average of U A U* over the group (plain mean for a multiset)

    Raises:
        DimensionMismatchError: If A does not act on the group's dimension
        UnsupportedGroupError: If a direct sum has more than one component with non-zero mean
    """
    a = as_array(a) if isinstance(a, (CovarianceMatrix, UnitaryMatrix)) else as_complex_matrix(a, "A")
    if a.shape != (group.dim, group.dim):
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="average", expected=(group.dim, group.dim), actual=a.shape)
        )
    return _average(group, a)


# =============================================================================
# GROUP MEANS
# =============================================================================

@singledispatch
def _group_mean(group: Any) -> np.ndarray:
    raise UnsupportedGroupError(f"No mean element for {type(group).__name__}")


@_group_mean.register(FullUnitary)
@_group_mean.register(ConjugatedTorus)
@_group_mean.register(SignFlips)
@_group_mean.register(SignedPermutations)
def _(group) -> np.ndarray:
    return np.zeros((group.dim, group.dim), dtype=np.complex128)


@_group_mean.register
def _(group: Permutations) -> np.ndarray:
    return np.full((group.n, group.n), 1.0 / group.n, dtype=np.complex128)


@_group_mean.register
def _(group: Trivial) -> np.ndarray:
    return np.eye(group.n, dtype=np.complex128)


@_group_mean.register
def _(group: FiniteMultiset) -> np.ndarray:
    return np.mean(group.stacked(), axis=0)


@_group_mean.register
def _(group: TensorProduct) -> np.ndarray:
    return np.kron(_group_mean(group.g1), _group_mean(group.g2))


@_group_mean.register
def _(group: DirectSum) -> np.ndarray:
    return linalg.block_diag(*[_group_mean(part) for part in group.parts]).astype(np.complex128)


@_group_mean.register
def _(group: Conjugated) -> np.ndarray:
    w = group.w.matrix
    return w @ _group_mean(group.inner) @ w.conj().T


def group_mean(group: SymmetryGroup) -> np.ndarray:
    """The mean element E[U] under the Haar measure"""
    return _group_mean(group)


def _checked_component_means(group: DirectSum) -> List[np.ndarray]:
    means = [_group_mean(part) for part in group.parts]
    nonzero = sum(1 for mean in means if np.linalg.norm(mean) > ToleranceConfig.GROUP_CLOSURE)
    if nonzero > 1:
        raise UnsupportedGroupError(ErrorMessages.DIRECT_SUM_MEANS.format(group=group_label(group), count=nonzero))
    return means


def is_fully_mixing(group: SymmetryGroup, tol: float = ToleranceConfig.FIXED_POINT) -> bool:
    """True when A_G(A) = Tr(A)/N I for every A, checked on the matrix units"""
    n = group.dim
    identity = np.eye(n, dtype=np.complex128) / n
    for i in range(n):
        for j in range(n):
            unit = np.zeros((n, n), dtype=np.complex128)
            unit[i, j] = 1.0
            expected = identity if i == j else np.zeros_like(identity)
            if np.linalg.norm(_average(group, unit) - expected) > tol:
                return False
    return True


def is_fixed_point(group: SymmetryGroup, q, tol: float = ToleranceConfig.FIXED_POINT) -> bool:
    """||A_G(Q) - Q||_F <= tol"""
    q = as_array(q) if isinstance(q, CovarianceMatrix) else as_complex_matrix(q, "Q")
    return bool(np.linalg.norm(average(group, q) - q) <= tol)


def fixed_point_residual(group: SymmetryGroup, q) -> float:
    q = as_array(q) if isinstance(q, CovarianceMatrix) else as_complex_matrix(q, "Q")
    return float(np.linalg.norm(average(group, q) - q))


# =============================================================================
# REDUCED SETS
# =============================================================================

def _isotropic_singleton(n: int) -> Singleton:
    return Singleton(CovarianceMatrix.isotropic(n))


def _simplex_form(reduced: ReducedSet) -> Optional[Tuple[np.ndarray, Tuple[int, ...]]]:
    """(W, blocks) when the set is a conjugated block simplex, else None"""
    if isinstance(reduced, ConjugatedSimplex):
        return reduced.w.matrix, reduced.blocks
    if isinstance(reduced, Singleton):
        n = reduced.dim
        if np.linalg.norm(reduced.q.matrix - np.eye(n) / n) <= ToleranceConfig.FIXED_POINT:
            return np.eye(n, dtype=np.complex128), (n,)
    return None


@singledispatch
def _averaged_set(group: Any) -> ReducedSet:
    raise UnsupportedGroupError(ErrorMessages.NOT_STRUCTURED.format(operation="averaged_set", group=group_label(group)))


@_averaged_set.register(FullUnitary)
@_averaged_set.register(SignedPermutations)
def _(group) -> ReducedSet:
    return _isotropic_singleton(group.dim)


@_averaged_set.register
def _(group: ConjugatedTorus) -> ReducedSet:
    return ConjugatedSimplex(group.w)


@_averaged_set.register
def _(group: SignFlips) -> ReducedSet:
    return ConjugatedSimplex(UnitaryMatrix.identity(group.n))


@_averaged_set.register
def _(group: Permutations) -> ReducedSet:
    # Fixed points are a I + b J; J is diagonal in the unitary DFT basis
    n = group.n
    return ConjugatedSimplex(UnitaryMatrix(linalg.dft(n, scale="sqrtn"), check=False), blocks=(1, n - 1))


@_averaged_set.register
def _(group: Trivial) -> ReducedSet:
    return FullSet(group.n)


@_averaged_set.register
def _(group: TensorProduct) -> ReducedSet:
    if is_fully_mixing(group.g2):
        inner, n_iso, iso_first = averaged_set(group.g1), group.g2.dim, False
    elif is_fully_mixing(group.g1):
        inner, n_iso, iso_first = averaged_set(group.g2), group.g1.dim, True
    else:
        raise UnsupportedGroupError(ErrorMessages.UNSUPPORTED_TENSOR.format(group=group_label(group)))
    if isinstance(inner, Singleton):
        iso = np.eye(n_iso) / n_iso
        q = np.kron(iso, inner.q.matrix) if iso_first else np.kron(inner.q.matrix, iso)
        return Singleton(CovarianceMatrix(q, check=False))
    return BlockKron(inner, n_iso, iso_first)


@_averaged_set.register
def _(group: DirectSum) -> ReducedSet:
    _checked_component_means(group)
    parts = tuple(averaged_set(part) for part in group.parts)
    simplices = [_simplex_form(part) for part in parts]
    if all(form is not None for form in simplices):
        w = linalg.block_diag(*[form[0] for form in simplices])
        blocks = tuple(size for form in simplices for size in form[1])
        return ConjugatedSimplex(UnitaryMatrix(w, check=False), blocks=blocks)
    return WeightedDirectSum(parts)


@_averaged_set.register
def _(group: Conjugated) -> ReducedSet:
    inner = averaged_set(group.inner)
    w = group.w.matrix
    if isinstance(inner, Singleton):
        return Singleton(CovarianceMatrix(w @ inner.q.matrix @ w.conj().T, check=False))
    if isinstance(inner, ConjugatedSimplex):
        return ConjugatedSimplex(UnitaryMatrix(w @ inner.w.matrix, check=False), blocks=inner.blocks)
    return ConjugatedSet(group.w, inner)


def averaged_set(group: SymmetryGroup) -> ReducedSet:
    """
    Exact parameterization of A_G(C_{N,1})

    Raises:
        UnsupportedGroupError: For raw multisets, tensor products where neither
            factor averages to Tr(.)/N I, and direct sums with several non-zero
            component means
    """
    if group.dim == 1 and not isinstance(group, FiniteMultiset):
        return Singleton(CovarianceMatrix(np.ones((1, 1)), check=False))
    return _averaged_set(group)


def _probability_vector(params, length: int, reduced: ReducedSet) -> np.ndarray:
    try:
        p = np.asarray(params, dtype=float).reshape(-1)
    except (TypeError, ValueError) as exc:
        raise InfeasibleParameterError(
            ErrorMessages.INFEASIBLE_PARAMS.format(reduced_set=reduced.kind.value, reason=str(exc))
        ) from exc
    tol = ToleranceConfig.PROBABILITY_SUM
    if p.size != length:
        reason = f"expected {length} weights, got {p.size}"
    elif not np.all(np.isfinite(p)) or np.any(p < -tol):
        reason = f"weights must be non-negative, got {p.tolist()}"
    elif abs(p.sum() - 1.0) > tol:
        reason = f"weights sum to {p.sum()!r}, expected 1"
    else:
        p = np.maximum(p, 0.0)
        return p / p.sum()
    raise InfeasibleParameterError(ErrorMessages.INFEASIBLE_PARAMS.format(reduced_set=reduced.kind.value, reason=reason))


@singledispatch
def _embed(reduced: Any, params) -> np.ndarray:
    raise UnsupportedGroupError(f"No embedding for {type(reduced).__name__}")


@_embed.register
def _(reduced: Singleton, params) -> np.ndarray:
    return reduced.q.matrix


@_embed.register
def _(reduced: ConjugatedSimplex, params) -> np.ndarray:
    p = _probability_vector(params, reduced.n_blocks, reduced)
    sizes = np.asarray(reduced.blocks)
    diagonal = np.repeat(p / sizes, sizes)
    w = reduced.w.matrix
    return (w * diagonal) @ w.conj().T


@_embed.register
def _(reduced: BlockKron, params) -> np.ndarray:
    inner = _embed(reduced.inner, params)
    iso = np.eye(reduced.n_iso) / reduced.n_iso
    return np.kron(iso, inner) if reduced.iso_first else np.kron(inner, iso)


@_embed.register
def _(reduced: WeightedDirectSum, params) -> np.ndarray:
    try:
        weights, inner_params = params
    except (TypeError, ValueError) as exc:
        raise InfeasibleParameterError(
            ErrorMessages.INFEASIBLE_PARAMS.format(reduced_set=reduced.kind.value, reason="expected (weights, parts)")
        ) from exc
    p = _probability_vector(weights, len(reduced.parts), reduced)
    inner_params = list(inner_params)
    if len(inner_params) != len(reduced.parts):
        raise InfeasibleParameterError(
            ErrorMessages.INFEASIBLE_PARAMS.format(
                reduced_set=reduced.kind.value, reason=f"expected {len(reduced.parts)} component parameters"
            )
        )
    blocks = [weight * _embed(part, sub) for weight, part, sub in zip(p, reduced.parts, inner_params)]
    return linalg.block_diag(*blocks).astype(np.complex128)


@_embed.register
def _(reduced: FullSet, params) -> np.ndarray:
    try:
        q = params if isinstance(params, CovarianceMatrix) else CovarianceMatrix(params)
    except ValueError as exc:
        raise InfeasibleParameterError(
            ErrorMessages.INFEASIBLE_PARAMS.format(reduced_set=reduced.kind.value, reason=str(exc))
        ) from exc
    if q.dim != reduced.n:
        raise InfeasibleParameterError(
            ErrorMessages.INFEASIBLE_PARAMS.format(reduced_set=reduced.kind.value, reason=f"dimension {q.dim} != {reduced.n}")
        )
    return q.matrix


@_embed.register
def _(reduced: ConjugatedSet, params) -> np.ndarray:
    w = reduced.w.matrix
    return w @ _embed(reduced.inner, params) @ w.conj().T


def embed(reduced: ReducedSet, params=None) -> CovarianceMatrix:
    """
    The covariance of the reduced set selected by params

    Params per variant: Singleton ignores them; ConjugatedSimplex takes a
    probability vector over its blocks; BlockKron takes the inner parameters;
    WeightedDirectSum takes (weights, [component parameters]); FullSet takes a
    covariance; ConjugatedSet takes the inner parameters.

    Raises:
        InfeasibleParameterError: If params do not describe a point of the set
    """
    q = _embed(reduced, params)
    q = (q + q.conj().T) / 2
    return CovarianceMatrix(q, check=False)


@singledispatch
def _random_params(reduced: Any, rng: np.random.Generator):
    raise UnsupportedGroupError(f"No parameter sampler for {type(reduced).__name__}")


@_random_params.register
def _(reduced: Singleton, rng: np.random.Generator):
    return None


@_random_params.register
def _(reduced: ConjugatedSimplex, rng: np.random.Generator):
    return rng.dirichlet(np.ones(reduced.n_blocks))


@_random_params.register(BlockKron)
@_random_params.register(ConjugatedSet)
def _(reduced, rng: np.random.Generator):
    return _random_params(reduced.inner, rng)


@_random_params.register
def _(reduced: WeightedDirectSum, rng: np.random.Generator):
    return rng.dirichlet(np.ones(len(reduced.parts))), [_random_params(part, rng) for part in reduced.parts]


@_random_params.register
def _(reduced: FullSet, rng: np.random.Generator):
    from services.matcore_service import random_covariance

    return random_covariance(rng, reduced.n)


def random_params(reduced: ReducedSet, rng: RandomSource):
    """Random feasible parameters for embed"""
    return _random_params(reduced, _generator(rng))


def random_point(reduced: ReducedSet, rng: RandomSource) -> CovarianceMatrix:
    """A random covariance of the reduced set"""
    return embed(reduced, random_params(reduced, rng))


def describe_reduced_set(reduced: ReducedSet) -> str:
    """Human readable description of a reduced set"""
    if isinstance(reduced, Singleton):
        n = reduced.dim
        if np.linalg.norm(reduced.q.matrix - np.eye(n) / n) <= ToleranceConfig.FIXED_POINT:
            return f"{{I_{n}/{n}}}"
        return f"singleton({n})"
    if isinstance(reduced, ConjugatedSimplex):
        basis = "I" if np.allclose(reduced.w.matrix, np.eye(reduced.dim)) else "W"
        if all(size == 1 for size in reduced.blocks):
            return f"{basis} Diag_{{{reduced.dim},1}}(R+) {basis}*"
        return f"{basis} (+)_k p_k I_(n_k)/n_k {basis}*, blocks {list(reduced.blocks)}"
    if isinstance(reduced, BlockKron):
        iso = f"I_{reduced.n_iso}/{reduced.n_iso}"
        inner = describe_reduced_set(reduced.inner)
        return f"{iso} (x) {inner}" if reduced.iso_first else f"{inner} (x) {iso}"
    if isinstance(reduced, WeightedDirectSum):
        return " (+) ".join(f"p_{k} {describe_reduced_set(part)}" for k, part in enumerate(reduced.parts, start=1))
    if isinstance(reduced, FullSet):
        return f"C_{{{reduced.n},1}}"
    return f"W [{describe_reduced_set(reduced.inner)}] W*"


# =============================================================================
# MEMBERSHIP AND SUBGROUPS
# =============================================================================

def _is_monomial(w: np.ndarray, tol: float) -> bool:
    """Exactly one non-zero per row and column, each of unit modulus"""
    mask = np.abs(w) > tol
    if not (np.all(mask.sum(axis=0) == 1) and np.all(mask.sum(axis=1) == 1)):
        return False
    return bool(np.all(np.abs(np.abs(w[mask]) - 1.0) <= tol))


def _is_signed_monomial(v: np.ndarray, tol: float) -> bool:
    if not _is_monomial(v, tol):
        return False
    entries = v[np.abs(v) > tol]
    return bool(np.all(np.abs(entries.imag) <= tol) and np.all(np.abs(np.abs(entries.real) - 1.0) <= tol))


def _tensor_factors(v: np.ndarray, n1: int, n2: int) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """Split V = U1 (x) U2 up to a global phase, or None when V is not a product"""
    rearranged = v.reshape(n1, n2, n1, n2).transpose(0, 2, 1, 3).reshape(n1 * n1, n2 * n2)
    u, s, vh = np.linalg.svd(rearranged)
    if s.size > 1 and s[1] > ToleranceConfig.UNITARY * max(1.0, s[0]):
        return None
    left = np.sqrt(n1) * u[:, 0].reshape(n1, n1)
    right = s[0] / np.sqrt(n1) * vh[0].reshape(n2, n2)
    return left, right


def _unit_phase(factor: np.ndarray) -> complex:
    anchor = factor.reshape(-1)[np.argmax(np.abs(factor))]
    return anchor / abs(anchor)


def _phase_candidates(left: np.ndarray, right: np.ndarray):
    """Splits of the free global phase making either factor's largest entry real, with both signs"""
    for phase in (_unit_phase(left), np.conj(_unit_phase(right))):
        for sign in (1.0, -1.0):
            yield sign * left / phase, sign * right * phase


def contains(group: SymmetryGroup, v, tol: float = 1e-8) -> bool:
    """Whether the unitary V belongs to the group (up to tol)"""
    v = as_array(v) if isinstance(v, UnitaryMatrix) else as_complex_matrix(v, "V")
    n = group.dim
    if v.shape != (n, n) or np.linalg.norm(v @ v.conj().T - np.eye(n)) > tol:
        return False
    if isinstance(group, FullUnitary):
        return True
    if isinstance(group, Trivial):
        return bool(np.linalg.norm(v - np.eye(n)) <= tol)
    if isinstance(group, ConjugatedTorus):
        w = group.w.matrix
        rotated = w.conj().T @ v @ w
        return bool(np.linalg.norm(rotated - np.diag(np.diagonal(rotated))) <= tol)
    if isinstance(group, SignFlips):
        return _is_signed_monomial(v, tol) and bool(np.linalg.norm(v - np.diag(np.diagonal(v))) <= tol)
    if isinstance(group, Permutations):
        return _is_signed_monomial(v, tol) and bool(np.all(v.real[np.abs(v) > tol] > 0))
    if isinstance(group, SignedPermutations):
        return _is_signed_monomial(v, tol)
    if isinstance(group, FiniteMultiset):
        residuals = np.linalg.norm(group.stacked() - v[None, :, :], axis=(1, 2))
        return bool(residuals.min() <= tol)
    if isinstance(group, Conjugated):
        w = group.w.matrix
        return contains(group.inner, w.conj().T @ v @ w, tol)
    if isinstance(group, DirectSum):
        offsets = np.concatenate([[0], np.cumsum(group.block_sizes)])
        block_part = linalg.block_diag(
            *[v[offsets[k]:offsets[k + 1], offsets[k]:offsets[k + 1]] for k in range(len(group.parts))]
        )
        if np.linalg.norm(v - block_part) > tol:
            return False
        return all(
            contains(part, v[offsets[k]:offsets[k + 1], offsets[k]:offsets[k + 1]], tol)
            for k, part in enumerate(group.parts)
        )
    if isinstance(group, TensorProduct):
        factors = _tensor_factors(v, group.g1.dim, group.g2.dim)
        if factors is None:
            return False
        return any(
            contains(group.g1, left, tol) and contains(group.g2, right, tol)
            for left, right in _phase_candidates(*factors)
        )
    raise UnsupportedGroupError(f"No membership test for {type(group).__name__}")


def _same_group(f: SymmetryGroup, g: SymmetryGroup) -> bool:
    if type(f) is not type(g) or f.dim != g.dim:
        return False
    if isinstance(f, (ConjugatedTorus, Conjugated)):
        if not np.allclose(f.w.matrix, g.w.matrix, atol=ToleranceConfig.UNITARY):
            return False
        return not isinstance(f, Conjugated) or _same_group(f.inner, g.inner)
    if isinstance(f, TensorProduct):
        return _same_group(f.g1, g.g1) and _same_group(f.g2, g.g2)
    if isinstance(f, DirectSum):
        return len(f.parts) == len(g.parts) and all(_same_group(a, b) for a, b in zip(f.parts, g.parts))
    if isinstance(f, FiniteMultiset):
        return f is g
    return True


def is_subgroup(f: SymmetryGroup, g: SymmetryGroup) -> bool:
    """
    Structural inclusion F subset G for the recognized pairs

    Raises:
        DimensionMismatchError: If F and G act on different dimensions
        UnsupportedGroupError: If the pair is not recognized
    """
    if f.dim != g.dim:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="is_subgroup", expected=g.dim, actual=f.dim)
        )
    if _same_group(f, g) or isinstance(f, Trivial) or isinstance(g, FullUnitary):
        return True
    if isinstance(f, FiniteMultiset):
        return all(contains(g, element) for element in f.elements)
    if isinstance(g, SignedPermutations) and isinstance(f, (SignFlips, Permutations)):
        return True
    if isinstance(f, ConjugatedTorus) and isinstance(g, ConjugatedTorus):
        return _is_monomial(g.w.adjoint @ f.w.matrix, ToleranceConfig.FIXED_POINT)
    if isinstance(f, SignFlips) and isinstance(g, ConjugatedTorus):
        return _is_monomial(g.w.matrix, ToleranceConfig.FIXED_POINT)
    if isinstance(f, TensorProduct) and isinstance(g, TensorProduct) and f.g1.dim == g.g1.dim:
        return is_subgroup(f.g1, g.g1) and is_subgroup(f.g2, g.g2)
    if isinstance(f, DirectSum) and isinstance(g, DirectSum) and f.block_sizes == g.block_sizes:
        return all(is_subgroup(a, b) for a, b in zip(f.parts, g.parts))
    if isinstance(f, Conjugated) and isinstance(g, Conjugated):
        if np.allclose(f.w.matrix, g.w.matrix, atol=ToleranceConfig.UNITARY):
            return is_subgroup(f.inner, g.inner)
    raise UnsupportedGroupError(ErrorMessages.UNSUPPORTED_PAIR.format(sub=group_label(f), group=group_label(g)))


def monte_carlo_average(group: SymmetryGroup, a, rng: RandomSource, count: int) -> np.ndarray:
    """(1/n) sum U_i A U_i* over n Haar draws"""
    a = as_complex_matrix(a, "A")
    stack = haar_sample_batch(group, rng, count)
    return np.mean(stack @ a @ _adjoint(stack), axis=0)
