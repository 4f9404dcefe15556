"""Unit tests for channel models, declared symmetries and the membership probe."""
import numpy as np
import pytest
from scipy import linalg

from config.constants import ALPHA_MIN
from models.channels import (
    BlockInvariant,
    ColumnSymmetric,
    Custom,
    EntryLaw,
    Gaussian,
    RankOneProduct,
    Ricean,
    SectionFiveAlpha,
    SectionFiveInf,
)
from models.enums import EntryLawKind, OuterSymmetry, RadiusLaw
from models.errors import ChannelSamplerError, DimensionMismatchError, NoDeclaredSymmetryError
from models.groups import Conjugated, ConjugatedTorus, DirectSum, FullUnitary, SignedPermutations, TensorProduct
from models.matrices import RandomStream, UnitaryMatrix
from services.channel_service import (
    alpha_for_target,
    draw_entries,
    heavy_tail_channel,
    known_symmetry_group,
    membership_probe,
    probe_family,
    sample,
    sample_batch,
    singular_value_blocks,
)
from services.symmetry_service import haar_sample


SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


def column_symmetric(scales, radius_law=RadiusLaw.CONSTANT) -> ColumnSymmetric:
    laws = tuple(EntryLaw(EntryLawKind.UNIFORM_PHASE_RADIUS, scale, radius_law) for scale in scales)
    return ColumnSymmetric(UnitaryMatrix.identity(2), UnitaryMatrix.identity(len(scales)), laws)


# =============================================================================
# MODEL VALIDATION
# =============================================================================

@pytest.mark.unit
class TestChannelModels:
    """Tests for descriptor validation."""

    def test_alpha_below_minimum(self):
        """Test that alpha < 1/sqrt(2) is rejected."""
        with pytest.raises(ValueError, match="alpha"):
            SectionFiveAlpha(0.5)

    def test_alpha_minimum_accepted(self):
        """Test that alpha = 1/sqrt(2) is the smallest valid value."""
        assert SectionFiveAlpha(ALPHA_MIN).alpha == ALPHA_MIN

    def test_non_positive_scale(self):
        """Test that scale must be positive."""
        with pytest.raises(ValueError, match="scale"):
            Gaussian(2, 2, scale=0.0)

    def test_column_law_count(self):
        """Test that one law per column is required."""
        laws = (EntryLaw(), EntryLaw())
        with pytest.raises(DimensionMismatchError):
            ColumnSymmetric(UnitaryMatrix.identity(2), UnitaryMatrix.identity(3), laws)

    def test_single_column_law_is_broadcast(self):
        """Test that a single law applies to every column."""
        model = ColumnSymmetric(UnitaryMatrix.identity(2), UnitaryMatrix.identity(3), (EntryLaw(),))

        assert len(model.column_laws) == 3

    def test_block_invariant_columns(self):
        """Test that the inner model must have d * N columns."""
        with pytest.raises(DimensionMismatchError):
            BlockInvariant(d=2, n_block=2, inner=Gaussian(2, 3))


# =============================================================================
# SAMPLING
# =============================================================================

@pytest.mark.unit
class TestSampling:
    """Tests for channel draws."""

    def test_gaussian_shape_and_power(self, stream):
        """Test shape and unit entry power of the Gaussian channel."""
        draws = sample(Gaussian(2, 3), stream, 20000)

        assert draws.shape == (20000, 2, 3)
        assert np.mean(np.abs(draws) ** 2) == pytest.approx(1.0, abs=0.03)

    def test_same_seed_same_draws(self):
        """Test reproducibility from a seed."""
        first = sample(Gaussian(2, 2), RandomStream(1), 10)
        second = sample(Gaussian(2, 2), RandomStream(1), 10)

        assert np.array_equal(first, second)

    def test_alpha_channel_structure(self, stream):
        """Test H_alpha = [[1, 0], [0, alpha v]] with |v| = 1."""
        draws = sample(SectionFiveAlpha(2.0), stream, 50)

        assert np.allclose(draws[:, 0, 0], 1.0)
        assert np.allclose(np.abs(draws[:, 1, 1]), 2.0)
        assert np.allclose(draws[:, 0, 1], 0.0)
        assert np.allclose(draws[:, 1, 0], 0.0)

    def test_inf_channel_structure(self, stream):
        """Test H_inf = [[0, 0], [1, 2 v]]."""
        draws = sample(SectionFiveInf(), stream, 50)

        assert np.allclose(draws[:, 0, :], 0.0)
        assert np.allclose(draws[:, 1, 0], 1.0)
        assert np.allclose(np.abs(draws[:, 1, 1]), 2.0)

    def test_column_symmetric_constant_radius(self, stream):
        """Test that constant radius laws fix the column moduli."""
        draws = sample(column_symmetric((2.0, 0.5)), stream, 30)

        assert np.allclose(np.abs(draws[:, :, 0]), 2.0)
        assert np.allclose(np.abs(draws[:, :, 1]), 0.5)

    def test_rank_one_product(self, stream):
        """Test that c_M c_N* has rank one."""
        draws = sample(RankOneProduct(3, 2), stream, 20)

        singular_values = np.linalg.svd(draws, compute_uv=False)
        assert np.allclose(singular_values[:, 1], 0.0, atol=1e-12)

    def test_ricean_mean(self, stream):
        """Test that the Ricean channel averages to H-bar."""
        hbar = np.diag([2.0, 1.0])

        draws = sample(Ricean(hbar), stream, 40000)

        assert np.allclose(draws.mean(axis=0), hbar, atol=0.03)

    def test_block_invariant_shape(self, stream):
        """Test the block-invariant sampler composes inner draws and Haar factors."""
        model = BlockInvariant(d=2, n_block=2, inner=Gaussian(3, 4), outer=OuterSymmetry.TORUS)

        draws = sample(model, stream, 5)

        assert draws.shape == (5, 3, 4)
        assert np.all(np.isfinite(draws))

    def test_custom_wrong_shape(self, stream):
        """Test that a custom sampler must return (count, m, n)."""
        model = Custom(sampler=lambda rng, count: np.zeros((count, 2)), m=2, n=2)

        with pytest.raises(ChannelSamplerError, match="shape"):
            sample(model, stream, 3)

    def test_custom_non_finite(self, stream):
        """Test that a custom sampler must return finite draws."""
        model = Custom(sampler=lambda rng, count: np.full((count, 1, 1), np.inf), m=1, n=1)

        with pytest.raises(ChannelSamplerError, match="non-finite"):
            sample(model, stream, 3)

    def test_rejects_non_positive_count(self, stream):
        """Test that n must be positive."""
        with pytest.raises(ValueError):
            sample(Gaussian(1, 1), stream, 0)


@pytest.mark.unit
class TestSampleBatch:
    """Tests for chunked sampling."""

    def test_independent_of_threads(self):
        """Test that the worker count never changes the draws."""
        single = sample_batch(Gaussian(2, 2), RandomStream(5), 1050, threads=1, chunk_size=100)
        parallel = sample_batch(Gaussian(2, 2), RandomStream(5), 1050, threads=4, chunk_size=100)

        assert single.shape == (1050, 2, 2)
        assert np.array_equal(single, parallel)

    def test_chunk_size_changes_stream_layout(self):
        """Test that chunk size is part of the reproducibility key."""
        a = sample_batch(Gaussian(1, 1), RandomStream(5), 200, threads=1, chunk_size=100)
        b = sample_batch(Gaussian(1, 1), RandomStream(5), 200, threads=1, chunk_size=50)

        assert not np.array_equal(a, b)


@pytest.mark.unit
class TestDrawEntries:
    """Tests for the entry laws."""

    def test_two_point(self, rng):
        """Test that two-point entries are +-scale."""
        entries = draw_entries(EntryLaw(EntryLawKind.SYMMETRIC_TWO_POINT, 3.0), rng, (1000,))

        assert set(np.unique(entries.real)) == {-3.0, 3.0}
        assert np.allclose(entries.imag, 0.0)

    def test_rayleigh_power(self, rng):
        """Test that Rayleigh radii have E|h|^2 = scale^2."""
        entries = draw_entries(EntryLaw(EntryLawKind.UNIFORM_PHASE_RADIUS, 2.0, RadiusLaw.RAYLEIGH), rng, (40000,))

        assert np.mean(np.abs(entries) ** 2) == pytest.approx(4.0, rel=0.03)

    def test_gaussian_is_centered(self, rng):
        """Test that complex Gaussian entries have mean zero."""
        entries = draw_entries(EntryLaw(), rng, (40000,))

        assert abs(entries.mean()) < 0.02


# =============================================================================
# DECLARED SYMMETRIES
# =============================================================================

@pytest.mark.unit
class TestKnownSymmetryGroup:
    """Tests for the declared symmetry of each model."""

    def test_gaussian(self):
        """Test that the Gaussian channel is fully unitarily invariant."""
        assert known_symmetry_group(Gaussian(2, 3)) == FullUnitary(3)

    def test_column_symmetric(self):
        """Test that column symmetry gives the torus of W_N*."""
        w_n = UnitaryMatrix(linalg.dft(3, scale="sqrtn"))
        model = ColumnSymmetric(UnitaryMatrix.identity(2), w_n, (EntryLaw(),))

        group = known_symmetry_group(model)

        assert isinstance(group, ConjugatedTorus)
        assert np.allclose(group.w.matrix, w_n.adjoint)

    def test_rank_one(self):
        """Test that the rank-one product is invariant under the diagonal torus."""
        group = known_symmetry_group(RankOneProduct(2, 3))

        assert isinstance(group, ConjugatedTorus)
        assert np.allclose(group.w.matrix, np.eye(3))

    def test_ricean_equal_singular_values(self):
        """Test a single block gives conjugated signed permutations."""
        group = known_symmetry_group(Ricean(np.diag([1.5, 1.5])))

        assert isinstance(group, Conjugated)
        assert isinstance(group.inner, SignedPermutations)

    def test_ricean_distinct_singular_values(self):
        """Test distinct singular values split into a direct sum."""
        group = known_symmetry_group(Ricean(np.diag([2.0, 2.0, 1.0])))

        assert isinstance(group.inner, DirectSum)
        assert group.inner.block_sizes == (2, 1)

    def test_block_invariant(self):
        """Test the block model declares outer (x) U(N)."""
        model = BlockInvariant(d=2, n_block=2, inner=Gaussian(2, 4), outer=OuterSymmetry.UNITARY)

        group = known_symmetry_group(model)

        assert isinstance(group, TensorProduct)
        assert group.g1 == FullUnitary(2)
        assert group.g2 == FullUnitary(2)

    def test_custom_has_no_symmetry(self):
        """Test that a custom sampler carries no declared symmetry."""
        with pytest.raises(NoDeclaredSymmetryError, match="heavy_tail"):
            known_symmetry_group(heavy_tail_channel(2, 2))


@pytest.mark.unit
class TestSingularValueBlocks:
    """Tests for grouping equal singular values."""

    @pytest.mark.parametrize(
        "hbar, expected",
        [
            (np.diag([1.5, 1.5]), [2]),
            (np.diag([2.0, 2.0, 1.0]), [2, 1]),
            (np.diag([2.0, 1.0]), [1, 1]),
            (np.array([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), [1, 1, 1]),
            (np.zeros((2, 3)), [3]),
        ],
    )
    def test_blocks(self, hbar, expected):
        """Test block sizes including zero padding up to N."""
        assert singular_value_blocks(hbar) == expected

    def test_tolerance(self):
        """Test that a looser tolerance merges nearby values."""
        hbar = np.diag([1.0, 1.0 + 1e-6])

        assert singular_value_blocks(hbar) == [1, 1]
        assert singular_value_blocks(hbar, sv_tol=1e-3) == [2]


# =============================================================================
# MEMBERSHIP PROBE
# =============================================================================

@pytest.mark.unit
class TestMembershipProbe:
    """Tests for the statistical symmetry probe."""

    def test_haar_unitary_on_gaussian(self, stream):
        """Test that a Haar unitary is consistent with the Gaussian law."""
        v = haar_sample(FullUnitary(2), stream)

        report = membership_probe(Gaussian(2, 2), v, 4000, RandomStream(17))

        assert report.consistent
        assert report.n_samples == 4000
        assert report.threshold == pytest.approx(0.01 / 8)

    def test_swap_rejected_on_alpha_channel(self):
        """Test that swapping the antennas of H_2 is rejected."""
        report = membership_probe(SectionFiveAlpha(2.0), SWAP, 2000, RandomStream(3))

        assert not report.consistent
        assert report.p_value < report.threshold

    def test_too_few_samples(self, stream):
        """Test that the probe needs enough draws."""
        with pytest.raises(ValueError, match="at least"):
            membership_probe(Gaussian(2, 2), np.eye(2), 10, stream)

    def test_dimension_mismatch(self, stream):
        """Test that V must act on the input space."""
        with pytest.raises(DimensionMismatchError):
            membership_probe(Gaussian(2, 3), np.eye(2), 2000, stream)

    def test_probe_family_is_fixed(self):
        """Test that probes depend only on the seed and dimension."""
        assert np.array_equal(probe_family(4, 3), probe_family(4, 3))
        assert not np.array_equal(probe_family(4, 3), probe_family(5, 3))


# =============================================================================
# CONSTRUCTED MODELS
# =============================================================================

@pytest.mark.unit
class TestConstructedModels:
    """Tests for helper channels."""

    def test_heavy_tail_draws_are_finite(self, stream):
        """Test that the capped heavy-tail sampler stays finite."""
        draws = sample(heavy_tail_channel(2, 2), stream, 1000)

        assert draws.shape == (1000, 2, 2)
        assert np.all(np.isfinite(draws))

    @pytest.mark.parametrize("target, alpha", [(0.5, 1.0), (0.25, np.sqrt(2.0)), (1.0, ALPHA_MIN)])
    def test_alpha_for_target(self, target, alpha):
        """Test the alpha giving diag(a, 1 - a) as optimal input."""
        assert alpha_for_target(target) == pytest.approx(alpha)

    def test_alpha_for_invalid_target(self):
        """Test that targets outside (0, 1] are rejected."""
        with pytest.raises(ValueError):
            alpha_for_target(0.0)
