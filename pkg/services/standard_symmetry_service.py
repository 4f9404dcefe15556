"""
Standard symmetries: eigenphase analysis, integer relation search and torus intersections.

A unitary is a standard symmetry when its eigenphases theta_j (in turns) admit no
relation q_0 + sum q_j theta_j = 0; the closure of the group it generates is then
the conjugated torus of its eigenbasis. The float search is a bounded certificate,
never a proof.
"""
import itertools
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from scipy import linalg
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from config.constants import ErrorMessages, ToleranceConfig
from models.enums import RelationBackend
from models.errors import ConfigError, DimensionMismatchError, NotStandardSymmetryError
from models.groups import ConjugatedTorus
from models.matrices import CovarianceMatrix, UnitaryMatrix, as_complex_matrix
from models.phases import (
    PhaseVector,
    RelationVerdict,
    SymmetryCheck,
    TwoSymmetryVerdict,
    UnitaryEigenDecomposition,
)
from models.reduced_sets import ConjugatedSimplex, ReducedSet, Singleton

logger = logging.getLogger(__name__)

PhaseInput = Union[PhaseVector, Sequence[float]]


def _unitary(value, name: str) -> UnitaryMatrix:
    if isinstance(value, UnitaryMatrix):
        return value
    return UnitaryMatrix(as_complex_matrix(value, name))


def eigen_decompose_unitary(v) -> UnitaryEigenDecomposition:
    """
    V = W diag(exp(2 pi i theta)) W* with a canonical W

    Columns are ordered by ascending theta and each is scaled so that its
    largest-modulus entry is real positive.
    """
    v = _unitary(v, "V").matrix
    triangular, basis = linalg.schur(v, output="complex")
    eigenvalues = np.diagonal(triangular)
    phases = np.mod(np.angle(eigenvalues) / (2 * np.pi), 1.0)
    phases[phases >= 1.0] = 0.0
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    basis = basis[:, order]
    anchors = basis[np.argmax(np.abs(basis), axis=0), np.arange(basis.shape[1])]
    basis = basis * (np.abs(anchors) / anchors)[None, :]
    return UnitaryEigenDecomposition(
        w=UnitaryMatrix(basis, check=False),
        phases=PhaseVector(tuple(float(p) for p in phases)),
    )


def _as_phase_vector(phases: PhaseInput) -> PhaseVector:
    if isinstance(phases, PhaseVector):
        return phases
    return PhaseVector(tuple(float(p) for p in phases))


def _unit_relation(size: int, index: int, coefficient: int, constant: int) -> Tuple[int, ...]:
    relation = [0] * (size + 1)
    relation[0] = constant
    relation[index + 1] = coefficient
    return tuple(relation)


def _exact_relation(phases: PhaseVector, bound: int) -> Optional[RelationVerdict]:
    """
    A rational phase p/q with q <= bound gives q theta - p = 0

    Only single-phase relations are considered; the one with the smallest
    q + |p| is returned. A joint relation over several exact phases can be
    smaller (1/3 and 2/3 give theta_1 + theta_2 - 1 = 0), so the result is a
    witness of dependence, not a minimal relation.
    """
    best: Optional[Tuple[int, int, Fraction]] = None
    for index, value in enumerate(phases.exact):
        if value is None:
            continue
        value = Fraction(value)
        if value.denominator > bound:
            continue
        size = value.denominator + abs(value.numerator)
        if best is None or size < best[0]:
            best = (size, index, value)
    if best is None:
        return None
    _, index, value = best
    relation = _unit_relation(len(phases), index, value.denominator, -value.numerator)
    return RelationVerdict(False, bound, relation, 0.0, exact=True)


def _trivial_relation(theta: np.ndarray, bound: int, tol: float) -> Optional[RelationVerdict]:
    """Zero phases and repeated phases"""
    size = theta.size
    for index, value in enumerate(theta):
        if value <= tol:
            return RelationVerdict(False, bound, _unit_relation(size, index, 1, 0), float(value))
        if 1.0 - value <= tol:
            return RelationVerdict(False, bound, _unit_relation(size, index, 1, -1), float(1.0 - value))
    for i, j in itertools.combinations(range(size), 2):
        if abs(theta[i] - theta[j]) <= max(tol, ToleranceConfig.REPEATED_PHASE_TOL):
            relation = [0] * (size + 1)
            relation[i + 1], relation[j + 1] = 1, -1
            return RelationVerdict(False, bound, tuple(relation), float(abs(theta[i] - theta[j])))
    return None


def _exhaustive_search(theta: np.ndarray, bound: int, tol: float) -> Optional[Tuple[Tuple[int, ...], float]]:
    """Smallest-l1 relation with |q_j| <= bound, q_0 chosen as the nearest integer"""
    coefficients = np.arange(-bound, bound + 1)
    size = theta.size
    best: Optional[Tuple[int, float, Tuple[int, ...]]] = None

    if size == 1:
        grid = coefficients[:, None]
    else:
        grid = np.stack(np.meshgrid(coefficients, coefficients, indexing="ij"), axis=-1).reshape(-1, 2)
    tail = theta[-grid.shape[1]:]
    tail_sums = grid @ tail
    tail_norm = np.abs(grid).sum(axis=1)
    tail_zero = np.all(grid == 0, axis=1)

    for prefix in itertools.product(coefficients, repeat=size - grid.shape[1]):
        prefix = np.asarray(prefix, dtype=int)
        partial = float(prefix @ theta[: prefix.size]) if prefix.size else 0.0
        sums = partial + tail_sums
        constants = -np.round(sums)
        residuals = np.abs(sums + constants)
        hits = (residuals <= tol) & (np.abs(constants) <= bound)
        if not np.any(prefix):
            hits &= ~tail_zero
        if not np.any(hits):
            continue
        norms = np.where(hits, tail_norm + np.abs(prefix).sum() + np.abs(constants), np.inf)
        k = int(np.argmin(norms))
        candidate = (int(norms[k]), float(residuals[k]), (int(constants[k]), *prefix.tolist(), *grid[k].tolist()))
        if best is None or candidate[:2] < best[:2]:
            best = candidate
    if best is None:
        return None
    return tuple(int(q) for q in best[2]), best[1]


def _pslq_search(theta: np.ndarray, bound: int, tol: float) -> Optional[Tuple[Tuple[int, ...], float]]:
    # maxcoeff bounds the Euclidean norm; the box |q_j| <= bound reaches sqrt(N + 1) bound
    maxcoeff = int(np.ceil(bound * np.sqrt(theta.size + 1)))
    with mpmath.workdps(30):
        values = [mpmath.mpf(1)] + [mpmath.mpf(float(t)) for t in theta]
        relation = mpmath.pslq(values, tol=mpmath.mpf(tol), maxcoeff=maxcoeff, maxsteps=100000)
    if relation is None or max(abs(int(q)) for q in relation) > bound:
        return None
    relation = tuple(int(q) for q in relation)
    residual = abs(relation[0] + float(np.dot(relation[1:], theta)))
    if residual > tol:
        return None
    return relation, residual


def resolve_relation_backend(backend: RelationBackend, size: int) -> RelationBackend:
    """
    Concrete backend for size phases: auto is exhaustive up to EXHAUSTIVE_MAX_DIM, PSLQ above

    Raises:
        ConfigError: If exhaustive search is requested for more than EXHAUSTIVE_MAX_DIM phases
    """
    backend = RelationBackend(backend)
    limit = ToleranceConfig.EXHAUSTIVE_MAX_DIM
    if backend == RelationBackend.AUTO:
        return RelationBackend.EXHAUSTIVE if size <= limit else RelationBackend.PSLQ
    if backend == RelationBackend.EXHAUSTIVE and size > limit:
        raise ConfigError(ErrorMessages.EXHAUSTIVE_TOO_LARGE.format(limit=limit, size=size))
    return backend


def chance_relation_count(size: int, bound: int, tol: float) -> float:
    """Expected number of box relations within tol for phases drawn uniformly at random"""
    return float((2 * bound + 1) ** size * 2 * tol)


def rational_independence(
    phases: PhaseInput,
    bound: int = ToleranceConfig.RELATION_BOUND,
    tol: float = ToleranceConfig.RELATION_TOL,
    backend: RelationBackend = RelationBackend.AUTO,
) -> RelationVerdict:
    """
    Search integers (q_0..q_N), not all zero, |q_j| <= bound, with |q_0 + sum q_j theta_j| <= tol

    Exact rational annotations are decided exactly. Repeated or zero phases are
    dependent. Otherwise the search runs over the whole box (exhaustive) or with
    mpmath's PSLQ. Above EXHAUSTIVE_MAX_DIM phases the box holds so many
    candidates that generic phases can satisfy a relation by chance; a warning
    gives the expected count.

    Returns:
        RelationVerdict with the relation found, or independent up to bound

    Raises:
        ConfigError: If exhaustive search is forced on more than EXHAUSTIVE_MAX_DIM phases
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    phases = _as_phase_vector(phases)
    if len(phases) == 0:
        return RelationVerdict(True, bound)
    backend = resolve_relation_backend(backend, len(phases))

    verdict = _exact_relation(phases, bound)
    if verdict is not None:
        return verdict
    theta = np.asarray(phases.phases, dtype=float)
    verdict = _trivial_relation(theta, bound, tol)
    if verdict is not None:
        return verdict

    if theta.size > ToleranceConfig.EXHAUSTIVE_MAX_DIM:
        logger.warning(
            f"⚠️ Relation search over {theta.size} phases: about {chance_relation_count(theta.size, bound, tol):.2g} "
            f"relations up to {bound} are expected by chance at tol {tol:.0e}"
        )
    if backend == RelationBackend.PSLQ:
        found = _pslq_search(theta, bound, tol)
    else:
        found = _exhaustive_search(theta, bound, tol)
    if found is None:
        logger.debug(f"No integer relation up to {bound} for phases {phases.phases}")
        return RelationVerdict(True, bound)
    relation, residual = found
    return RelationVerdict(False, bound, relation, residual)


def closure_of_standard_symmetry(
    v,
    bound: int = ToleranceConfig.RELATION_BOUND,
    tol: float = ToleranceConfig.EIGENPHASE_RELATION_TOL,
    backend: RelationBackend = RelationBackend.AUTO,
) -> ConjugatedTorus:
    """
    Closure of the group generated by a standard symmetry V = W D W*

    Raises:
        NotStandardSymmetryError: If the eigenphases satisfy an integer relation within bound
    """
    decomposition = eigen_decompose_unitary(v)
    verdict = rational_independence(decomposition.phases, bound, tol, backend)
    if not verdict.independent:
        raise NotStandardSymmetryError(ErrorMessages.NOT_STANDARD.format(relation=verdict.relation))
    return ConjugatedTorus(decomposition.w)


def _default_entry_tol(n: int) -> float:
    return ToleranceConfig.ENTRY_TOL_FACTOR * np.sqrt(n)


def check_two_symmetry_condition(
    v1,
    v2,
    entry_tol: Optional[float] = None,
    bound: int = ToleranceConfig.RELATION_BOUND,
    tol: float = ToleranceConfig.EIGENPHASE_RELATION_TOL,
    backend: RelationBackend = RelationBackend.AUTO,
) -> TwoSymmetryVerdict:
    """
    Sufficient condition for the isotropic input to be optimal given two symmetries

    Both unitaries must be standard and W = W1* W2 must have no zero entry.
    The failing check is named in the verdict reason.
    """
    v1, v2 = _unitary(v1, "V1"), _unitary(v2, "V2")
    if v1.dim != v2.dim:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="check_two_symmetry_condition", expected=v1.dim, actual=v2.dim)
        )
    entry_tol = _default_entry_tol(v1.dim) if entry_tol is None else entry_tol
    checks: List[SymmetryCheck] = []
    decompositions = []
    for name, v in (("V1 standard", v1), ("V2 standard", v2)):
        decomposition = eigen_decompose_unitary(v)
        decompositions.append(decomposition)
        verdict = rational_independence(decomposition.phases, bound, tol, backend)
        detail = f"independent up to {bound}" if verdict.independent else f"relation {list(verdict.relation)}"
        checks.append(SymmetryCheck(name, verdict.independent, detail))

    w = decompositions[0].w.adjoint @ decompositions[1].w.matrix
    min_entry = float(np.abs(w).min())
    checks.append(
        SymmetryCheck("W1* W2 entries nonzero", min_entry > entry_tol, f"min |W_ij| = {min_entry:.3e}, tol {entry_tol:.1e}")
    )
    failed = [check.name for check in checks if not check.passed]
    if failed:
        logger.info(f"⚠️ Two-symmetry condition inconclusive: {failed[0]} failed")
    return TwoSymmetryVerdict(
        isotropic_optimal=not failed,
        reason=failed[0] if failed else None,
        checks=checks,
        min_entry=min_entry,
    )


def intersect_torus_fixed_sets(w1, w2, entry_tol: Optional[float] = None) -> ReducedSet:
    """
    W1 Diag_{N,1}(R+) W1* intersected with W2 Diag_{N,1}(R+) W2*

    Indices linked through a non-zero entry of W = W1* W2 share one diagonal
    value; the components of that bipartite graph become the blocks of the
    resulting simplex, ordered by their smallest index.
    """
    w1, w2 = _unitary(w1, "W1"), _unitary(w2, "W2")
    if w1.dim != w2.dim:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="intersect_torus_fixed_sets", expected=w1.dim, actual=w2.dim)
        )
    n = w1.dim
    entry_tol = _default_entry_tol(n) if entry_tol is None else entry_tol
    w = w1.adjoint @ w2.matrix
    rows, cols = np.nonzero(np.abs(w) > entry_tol)
    graph = coo_matrix((np.ones(rows.size), (rows, cols + n)), shape=(2 * n, 2 * n))
    count, labels = connected_components(graph, directed=False)
    row_labels = labels[:n]
    distinct = list(dict.fromkeys(row_labels.tolist()))
    if len(distinct) == 1:
        return Singleton(CovarianceMatrix.isotropic(n))
    order = np.concatenate([np.nonzero(row_labels == label)[0] for label in distinct])
    blocks = tuple(int(np.sum(row_labels == label)) for label in distinct)
    logger.debug(f"Torus intersection has {len(distinct)} components with sizes {blocks}")
    return ConjugatedSimplex(UnitaryMatrix(w1.matrix[:, order], check=False), blocks=blocks)
