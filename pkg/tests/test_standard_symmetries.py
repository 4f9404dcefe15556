"""Unit tests for eigenphase analysis and the two-symmetry condition."""
import logging
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import linalg

from models.enums import RelationBackend
from models.errors import ConfigError, DimensionMismatchError, NotStandardSymmetryError
from models.groups import ConjugatedTorus, FullUnitary
from models.matrices import RandomStream, UnitaryMatrix
from models.phases import PhaseVector
from models.reduced_sets import ConjugatedSimplex, Singleton
from services.standard_symmetry_service import (
    chance_relation_count,
    check_two_symmetry_condition,
    closure_of_standard_symmetry,
    eigen_decompose_unitary,
    intersect_torus_fixed_sets,
    rational_independence,
    resolve_relation_backend,
)
from services.symmetry_service import embed, haar_sample


IRRATIONAL_PHASES = (np.sqrt(2) - 1, np.sqrt(3) - 1)
RELATED_PHASES = (np.sqrt(2) - 1, np.sqrt(3) - 1, np.sqrt(2) + np.sqrt(3) - 3)
FIVE_PHASES = tuple(np.sqrt([2.0, 3.0, 5.0, 7.0, 11.0]) % 1.0)


def phase_unitary(phases) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.asarray(phases)))


# =============================================================================
# EIGEN DECOMPOSITION
# =============================================================================

@pytest.mark.unit
class TestEigenDecomposeUnitary:
    """Tests for the canonical eigen decomposition."""

    def test_reconstructs_v(self, stream):
        """Test V = W diag(exp(2 pi i theta)) W*."""
        v = haar_sample(FullUnitary(3), stream).matrix

        decomposition = eigen_decompose_unitary(v)

        w = decomposition.w.matrix
        rebuilt = w @ phase_unitary(decomposition.phases.phases) @ w.conj().T
        assert np.allclose(rebuilt, v, atol=1e-10)

    def test_phases_sorted_in_unit_interval(self):
        """Test that phases come back sorted in [0, 1)."""
        decomposition = eigen_decompose_unitary(phase_unitary([0.3, 0.1, 0.7]))

        assert decomposition.phases.phases == pytest.approx((0.1, 0.3, 0.7))

    def test_columns_anchored_real(self, stream):
        """Test that each column's largest entry is real positive."""
        w = eigen_decompose_unitary(haar_sample(FullUnitary(3), stream)).w.matrix

        anchors = w[np.argmax(np.abs(w), axis=0), np.arange(3)]
        assert np.allclose(anchors.imag, 0)
        assert np.all(anchors.real > 0)


# =============================================================================
# INTEGER RELATIONS
# =============================================================================

@pytest.mark.unit
class TestRationalIndependence:
    """Tests for the bounded integer relation search."""

    def test_irrational_phases_independent(self):
        """Test that sqrt(2) - 1 and sqrt(3) - 1 have no small relation."""
        verdict = rational_independence(IRRATIONAL_PHASES, bound=100)

        assert verdict.independent
        assert verdict.relation is None
        assert verdict.bound == 100

    def test_exact_rational_is_dependent(self):
        """Test exact phases (0, 1/2) are decided without floats."""
        verdict = rational_independence(PhaseVector.from_exact([Fraction(0), Fraction(1, 2)]))

        assert not verdict.independent
        assert verdict.exact
        assert verdict.relation == (0, 1, 0)

    def test_repeated_phase(self):
        """Test that a repeated phase gives theta_1 - theta_2 = 0."""
        verdict = rational_independence([0.3, 0.3])

        assert not verdict.independent
        assert verdict.relation == (0, 1, -1)

    def test_zero_phase(self):
        """Test that a zero phase is a relation on its own."""
        verdict = rational_independence([0.0, IRRATIONAL_PHASES[0]])

        assert not verdict.independent
        assert verdict.relation == (0, 1, 0)

    @pytest.mark.parametrize("backend", list(RelationBackend))
    def test_finds_one_third(self, backend):
        """Test that 3 theta = 1 is found by both backends."""
        verdict = rational_independence([1 / 3, IRRATIONAL_PHASES[0]], bound=10, backend=backend)

        assert not verdict.independent
        relation = np.asarray(verdict.relation)
        assert abs(relation[0] + relation[1:] @ np.array([1 / 3, IRRATIONAL_PHASES[0]])) <= 1e-9
        assert np.max(np.abs(relation)) <= 10

    def test_exact_picks_smallest_single_phase_relation(self):
        """Test that 2 theta = 1 is preferred over 3 theta = 1 among exact phases."""
        verdict = rational_independence(PhaseVector.from_exact([Fraction(1, 3), Fraction(1, 2)]))

        assert verdict.exact
        assert verdict.relation == (-1, 0, 2)

    @pytest.mark.parametrize("backend", [RelationBackend.EXHAUSTIVE, RelationBackend.PSLQ])
    def test_three_phase_relation_found_by_both_backends(self, backend):
        """Test theta_1 + theta_2 - theta_3 - 1 = 0 for theta_3 = theta_1 + theta_2 - 1."""
        verdict = rational_independence(RELATED_PHASES, bound=20, tol=1e-12, backend=backend)

        assert not verdict.independent
        assert verdict.relation in {(-1, 1, 1, -1), (1, -1, -1, 1)}

    @pytest.mark.parametrize("backend", [RelationBackend.EXHAUSTIVE, RelationBackend.PSLQ])
    def test_three_independent_phases(self, backend):
        """Test that sqrt(2) - 1, sqrt(3) - 1 and sqrt(5) - 2 are independent up to 100."""
        phases = (*IRRATIONAL_PHASES, np.sqrt(5) - 2)

        verdict = rational_independence(phases, bound=100, tol=1e-12, backend=backend)

        assert verdict.independent

    def test_exhaustive_rejected_above_three_phases(self):
        """Test that the full box search is refused for four phases."""
        with pytest.raises(ConfigError, match="at most 3 phases"):
            rational_independence(FIVE_PHASES[:4], backend=RelationBackend.EXHAUSTIVE)

    @pytest.mark.parametrize(
        "size,expected",
        [
            (1, RelationBackend.EXHAUSTIVE),
            (3, RelationBackend.EXHAUSTIVE),
            (4, RelationBackend.PSLQ),
            (8, RelationBackend.PSLQ),
        ],
    )
    def test_auto_backend(self, size, expected):
        """Test that auto switches to PSLQ above three phases."""
        assert resolve_relation_backend(RelationBackend.AUTO, size) == expected

    def test_five_phases_finish_with_chance_warning(self, caplog):
        """Test that five phases are searched quickly and the chance of spurious relations is logged."""
        start = time.perf_counter()
        with caplog.at_level(logging.WARNING, logger="services.standard_symmetry_service"):
            rational_independence(FIVE_PHASES, bound=100, tol=1e-12)

        assert time.perf_counter() - start < 30.0
        assert any("expected by chance" in record.message for record in caplog.records)

    def test_chance_relation_count(self):
        """Test (2 bound + 1)^N 2 tol."""
        assert chance_relation_count(2, 100, 1e-9) == pytest.approx(201 ** 2 * 2e-9)

    def test_relation_beyond_bound_is_missed(self):
        """Test that the certificate is bounded: 1/7 looks independent up to 5."""
        verdict = rational_independence([1 / 7], bound=5)

        assert verdict.independent

    def test_empty_phases(self):
        """Test that no phases are trivially independent."""
        assert rational_independence([]).independent

    def test_invalid_bound(self):
        """Test that the bound must be positive."""
        with pytest.raises(ValueError):
            rational_independence([0.2], bound=0)


@pytest.mark.unit
class TestClosureOfStandardSymmetry:
    """Tests for the closure of a standard symmetry."""

    def test_standard_symmetry_gives_torus(self):
        """Test that independent phases close to the torus of the eigenbasis."""
        closure = closure_of_standard_symmetry(phase_unitary(IRRATIONAL_PHASES))

        assert isinstance(closure, ConjugatedTorus)
        assert np.allclose(np.abs(closure.w.matrix), np.eye(2))

    def test_reflection_is_not_standard(self):
        """Test diag(1, -1) is rejected with its relation."""
        with pytest.raises(NotStandardSymmetryError, match="not a standard symmetry"):
            closure_of_standard_symmetry(np.diag([1.0, -1.0]))


# =============================================================================
# TWO SYMMETRIES
# =============================================================================

@pytest.mark.unit
class TestTwoSymmetryCondition:
    """Tests for the sufficient condition for isotropic optimality."""

    def test_haar_pair_is_isotropic_optimal(self):
        """Test that a generic Haar pair satisfies every check."""
        generator = RandomStream(2024).generator
        v1 = haar_sample(FullUnitary(3), generator)
        v2 = haar_sample(FullUnitary(3), generator)

        verdict = check_two_symmetry_condition(v1, v2)

        assert verdict.isotropic_optimal
        assert verdict.reason is None
        assert [check.name for check in verdict.checks] == [
            "V1 standard",
            "V2 standard",
            "W1* W2 entries nonzero",
        ]

    def test_equal_unitaries_are_inconclusive(self):
        """Test V1 = V2 fails on the zero entries of W1* W2."""
        v = phase_unitary(IRRATIONAL_PHASES)

        verdict = check_two_symmetry_condition(v, v)

        assert not verdict.isotropic_optimal
        assert verdict.reason == "W1* W2 entries nonzero"
        assert verdict.min_entry == pytest.approx(0.0, abs=1e-12)

    def test_reflection_fails_first_check(self):
        """Test that a non-standard V1 names the failing check."""
        v2 = linalg.dft(2, scale="sqrtn") @ phase_unitary(IRRATIONAL_PHASES) @ linalg.dft(2, scale="sqrtn").conj().T

        verdict = check_two_symmetry_condition(np.diag([1.0, -1.0]), v2)

        assert not verdict.isotropic_optimal
        assert verdict.reason == "V1 standard"

    def test_five_dimensional_pair_finishes(self):
        """Test that a U(5) pair is checked with the PSLQ backend in bounded time."""
        generator = RandomStream(5).generator
        v1 = haar_sample(FullUnitary(5), generator)
        v2 = haar_sample(FullUnitary(5), generator)

        start = time.perf_counter()
        verdict = check_two_symmetry_condition(v1, v2)

        assert time.perf_counter() - start < 30.0
        assert len(verdict.checks) == 3
        assert verdict.checks[2].passed

    def test_forced_exhaustive_on_five_dimensions_is_rejected(self):
        """Test that exhaustive search is refused instead of enumerating 201^5 candidates."""
        generator = RandomStream(5).generator
        v = haar_sample(FullUnitary(5), generator)

        with pytest.raises(ConfigError):
            check_two_symmetry_condition(v, v, backend=RelationBackend.EXHAUSTIVE)

    def test_dimension_mismatch(self):
        """Test that V1 and V2 must act on the same space."""
        with pytest.raises(DimensionMismatchError):
            check_two_symmetry_condition(np.eye(2), np.eye(3))


@pytest.mark.unit
class TestIntersectTorusFixedSets:
    """Tests for the intersection of two torus fixed-point sets."""

    def test_mixing_bases_give_isotropic(self):
        """Test identity and DFT bases only share I/N."""
        reduced = intersect_torus_fixed_sets(np.eye(3), linalg.dft(3, scale="sqrtn"))

        assert isinstance(reduced, Singleton)
        assert np.allclose(reduced.q.matrix, np.eye(3) / 3)

    def test_same_basis_keeps_simplex(self):
        """Test that equal bases intersect to the full simplex."""
        reduced = intersect_torus_fixed_sets(np.eye(3), np.eye(3))

        assert isinstance(reduced, ConjugatedSimplex)
        assert reduced.blocks == (1, 1, 1)

    def test_partial_mixing_gives_blocks(self):
        """Test a basis mixing two of three coordinates gives blocks (2, 1)."""
        w2 = linalg.block_diag(linalg.dft(2, scale="sqrtn"), [[1.0]])

        reduced = intersect_torus_fixed_sets(np.eye(3), w2)

        assert reduced.blocks == (2, 1)
        assert np.allclose(embed(reduced, [0.5, 0.5]).matrix, np.diag([0.25, 0.25, 0.5]))

    def test_entry_tolerance_controls_links(self):
        """Test that a loose tolerance drops small couplings."""
        w2 = UnitaryMatrix(np.array([[np.cos(1e-6), -np.sin(1e-6)], [np.sin(1e-6), np.cos(1e-6)]]))

        assert isinstance(intersect_torus_fixed_sets(np.eye(2), w2, entry_tol=1e-12), Singleton)
        assert isinstance(intersect_torus_fixed_sets(np.eye(2), w2, entry_tol=1e-3), ConjugatedSimplex)
