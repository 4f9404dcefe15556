"""Unit tests for the matrix numerics layer."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from models.errors import DimensionMismatchError, InvalidMatrixError
from models.matrices import CovarianceMatrix, RandomStream, UnitaryMatrix
from services import matcore_service


finite_floats = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


# =============================================================================
# VALUE TYPES
# =============================================================================

@pytest.mark.unit
class TestCovarianceMatrix:
    """Tests for the covariance value type."""

    def test_isotropic_is_valid(self):
        """Test that I/N passes validation."""
        q = CovarianceMatrix.isotropic(4)

        assert q.dim == 4
        assert np.isclose(np.trace(q.matrix), 1.0)
        assert matcore_service.is_valid_covariance(q.matrix)

    def test_rejects_non_unit_trace(self):
        """Test that trace other than one is rejected."""
        with pytest.raises(InvalidMatrixError, match="unit trace"):
            CovarianceMatrix(np.eye(2))

    def test_rejects_negative_eigenvalue(self):
        """Test that indefinite matrices are rejected."""
        with pytest.raises(InvalidMatrixError, match="positive semidefinite"):
            CovarianceMatrix(np.diag([1.5, -0.5]))

    def test_rejects_non_hermitian(self):
        """Test that non-Hermitian matrices are rejected."""
        with pytest.raises(InvalidMatrixError, match="Hermitian"):
            CovarianceMatrix(np.array([[0.5, 0.2], [0.0, 0.5]]))

    def test_rejects_non_square(self):
        """Test that a rectangular array is rejected."""
        with pytest.raises(InvalidMatrixError, match="square"):
            CovarianceMatrix(np.ones((2, 3)) / 2)

    def test_rejects_nan(self):
        """Test that non-finite entries are rejected."""
        with pytest.raises(InvalidMatrixError, match="non-finite"):
            CovarianceMatrix(np.array([[np.nan, 0], [0, 1]]))

    def test_matrix_is_read_only(self):
        """Test that the stored array cannot be mutated."""
        q = CovarianceMatrix.diagonal([0.25, 0.75])

        with pytest.raises(ValueError):
            q.matrix[0, 0] = 1.0


@pytest.mark.unit
class TestUnitaryMatrix:
    """Tests for the unitary value type."""

    def test_dft_is_unitary(self):
        """Test that the normalized DFT passes validation."""
        from scipy import linalg

        u = UnitaryMatrix(linalg.dft(3, scale="sqrtn"))

        assert np.allclose(u.adjoint @ u.matrix, np.eye(3))

    def test_rejects_scaled_identity(self):
        """Test that 2I is not unitary."""
        with pytest.raises(InvalidMatrixError, match="unitary"):
            UnitaryMatrix(2 * np.eye(2))


@pytest.mark.unit
class TestRandomStream:
    """Tests for seeded random streams."""

    def test_same_seed_same_draws(self):
        """Test that identical seeds reproduce the same sequence."""
        a = RandomStream(42).generator.standard_normal(5)
        b = RandomStream(42).generator.standard_normal(5)

        assert np.array_equal(a, b)

    def test_split_is_deterministic_and_independent(self):
        """Test that children repeat across parents and differ from each other."""
        first = [child.generator.standard_normal(3) for child in RandomStream(9).split(2)]
        second = [child.generator.standard_normal(3) for child in RandomStream(9).split(2)]

        assert np.array_equal(first[0], second[0])
        assert np.array_equal(first[1], second[1])
        assert not np.array_equal(first[0], first[1])

    def test_children_keep_root_seed(self):
        """Test that split streams report the parent seed."""
        assert all(child.seed == 5 for child in RandomStream(5).split(3))

    def test_rejects_negative_seed(self):
        """Test that a negative seed is rejected."""
        with pytest.raises(ValueError):
            RandomStream(-1)


# =============================================================================
# LOG DETERMINANT
# =============================================================================

@pytest.mark.unit
class TestLogdetKernel:
    """Tests for log det(I + H Q H*)."""

    def test_identity_channel(self):
        """Test log det(I + I/2) = 2 log 1.5 for H = I."""
        value = matcore_service.logdet_kernel(np.eye(2), CovarianceMatrix.isotropic(2))

        assert value == pytest.approx(2 * np.log(1.5), abs=1e-14)

    def test_zero_channel(self):
        """Test that the zero channel carries no information."""
        value = matcore_service.logdet_kernel(np.zeros((3, 2)), CovarianceMatrix.isotropic(2))

        assert value == pytest.approx(0.0, abs=1e-15)

    def test_matches_slogdet(self, rng, random_covariance):
        """Test agreement with numpy slogdet on a random draw."""
        h = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        q = random_covariance(2)

        expected = np.linalg.slogdet(np.eye(3) + h @ q.matrix @ h.conj().T)[1]

        assert matcore_service.logdet_kernel(h, q) == pytest.approx(expected, rel=1e-12)

    def test_non_negative(self, rng, random_covariance):
        """Test that the integrand is never negative."""
        q = random_covariance(3)
        hs = rng.standard_normal((50, 2, 3)) + 1j * rng.standard_normal((50, 2, 3))

        assert np.all(matcore_service.logdet_batch(hs, q) >= 0)

    def test_dimension_mismatch(self):
        """Test that H with the wrong column count is rejected."""
        with pytest.raises(DimensionMismatchError):
            matcore_service.logdet_kernel(np.eye(3), CovarianceMatrix.isotropic(2))

    def test_batch_matches_kernel(self, rng, random_covariance):
        """Test that the batched version agrees entry by entry."""
        q = random_covariance(2)
        hs = rng.standard_normal((4, 2, 2)) + 1j * rng.standard_normal((4, 2, 2))

        batch = matcore_service.logdet_batch(hs, q)

        for h, value in zip(hs, batch):
            assert value == pytest.approx(matcore_service.logdet_kernel(h, q), rel=1e-12)

    def test_upper_bound_dominates(self, rng, random_covariance):
        """Test M log(1 + N/M ||H||^2) bounds the integrand."""
        h = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
        q = random_covariance(3)

        assert matcore_service.logdet_kernel(h, q) <= matcore_service.logdet_upper_bound(h) + 1e-12


@pytest.mark.unit
class TestLogdetGradient:
    """Tests for the Hermitian gradient of the log determinant."""

    def test_gradient_is_hermitian(self, rng, random_covariance):
        """Test that the averaged gradient is Hermitian."""
        hs = rng.standard_normal((20, 2, 3)) + 1j * rng.standard_normal((20, 2, 3))

        gradient = matcore_service.logdet_gradient_batch(hs, random_covariance(3))

        assert matcore_service.hermitian_residual(gradient) < 1e-14

    def test_matches_finite_difference(self, rng, random_covariance, random_hermitian):
        """Test the directional derivative against a central difference."""
        hs = rng.standard_normal((10, 2, 2)) + 1j * rng.standard_normal((10, 2, 2))
        q = random_covariance(2).matrix
        direction = random_hermitian(2)
        eps = 1e-6

        gradient = matcore_service.logdet_gradient_batch(hs, q)
        plus = np.mean(matcore_service.logdet_batch(hs, q + eps * direction))
        minus = np.mean(matcore_service.logdet_batch(hs, q - eps * direction))

        expected = (plus - minus) / (2 * eps)
        assert np.real(matcore_service.trace_inner(gradient, direction)) == pytest.approx(expected, rel=1e-5)


# =============================================================================
# PROJECTIONS
# =============================================================================

@pytest.mark.unit
class TestSimplexProjection:
    """Tests for the Euclidean projection onto the probability simplex."""

    def test_point_already_on_simplex(self):
        """Test that simplex points are fixed."""
        p = np.array([0.2, 0.3, 0.5])

        assert np.allclose(matcore_service.project_onto_simplex(p), p)

    def test_known_value(self):
        """Test projection of (1, 1, -1) is (1/2, 1/2, 0)."""
        assert np.allclose(matcore_service.project_onto_simplex(np.array([1.0, 1.0, -1.0])), [0.5, 0.5, 0.0])

    @given(arrays(np.float64, st.integers(1, 6), elements=finite_floats))
    @settings(max_examples=60, deadline=None)
    def test_result_is_on_simplex(self, values):
        """Test that any vector lands on the simplex."""
        p = matcore_service.project_onto_simplex(values)

        assert np.all(p >= 0)
        assert p.sum() == pytest.approx(1.0, abs=1e-9)


@pytest.mark.unit
class TestCovarianceProjection:
    """Tests for the nearest unit-trace PSD matrix."""

    def test_projection_of_covariance_is_identity(self, random_covariance):
        """Test that valid covariances are fixed."""
        q = random_covariance(3)

        assert np.allclose(matcore_service.project_to_covariance(q.matrix).matrix, q.matrix, atol=1e-12)

    def test_hermitian_part_is_used(self):
        """Test that the skew-Hermitian part is discarded."""
        a = np.array([[0.5, 1.0], [-1.0, 0.5]])

        assert np.allclose(matcore_service.project_to_covariance(a).matrix, np.eye(2) / 2)

    def test_negative_eigenvalue_is_clipped(self):
        """Test that diag(2, -1) projects to diag(1, 0)."""
        projected = matcore_service.project_to_covariance(np.diag([2.0, -1.0]))

        assert np.allclose(projected.matrix, np.diag([1.0, 0.0]))

    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_result_is_valid_and_idempotent(self, dim, seed):
        """Test validity and idempotence on random Hermitian inputs."""
        a = 3 * matcore_service.random_hermitian(np.random.default_rng(seed), dim)

        once = matcore_service.project_to_covariance(a)
        twice = matcore_service.project_to_covariance(once.matrix)

        assert matcore_service.is_valid_covariance(once.matrix)
        assert np.allclose(once.matrix, twice.matrix, atol=1e-10)

    def test_rejects_rectangular(self):
        """Test that non-square input is rejected."""
        with pytest.raises(InvalidMatrixError):
            matcore_service.project_to_covariance(np.ones((2, 3)))


# =============================================================================
# HELPERS
# =============================================================================

@pytest.mark.unit
class TestNorms:
    """Tests for Frobenius norms."""

    def test_frobenius_norm(self):
        """Test ||[[3, 4]]||_F = 5."""
        assert matcore_service.frobenius_norm(np.array([[3.0, 4.0]])) == pytest.approx(5.0)

    def test_batch_norm_survives_huge_entries(self):
        """Test the scaled batch norm does not overflow."""
        hs = np.full((1, 2, 2), 1e200, dtype=np.complex128)

        norms = matcore_service.frobenius_norm_batch(hs)

        assert np.isfinite(norms[0])
        assert norms[0] == pytest.approx(2e200)

    def test_batch_norm_of_zero(self):
        """Test that the zero matrix has zero norm."""
        assert matcore_service.frobenius_norm_batch(np.zeros((2, 3, 3)))[1] == 0.0

    def test_min_eigenvalue(self):
        """Test the smallest eigenvalue of a diagonal matrix."""
        assert matcore_service.min_eigenvalue(np.diag([0.3, -0.2])) == pytest.approx(-0.2)

    def test_random_covariance_is_full_rank(self, random_covariance):
        """Test that the random covariance factory yields full rank draws."""
        q = random_covariance(4)

        assert matcore_service.min_eigenvalue(q.matrix) > 0
        assert np.trace(q.matrix).real == pytest.approx(1.0)
