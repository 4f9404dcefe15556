"""
Channel sampling, declared symmetry groups and the statistical membership probe.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from functools import singledispatch
from typing import Any, List, Optional, Union

import numpy as np
from scipy import linalg, stats

from config.constants import ALPHA_MIN, ErrorMessages, FinitenessConfig, ProbeConfig, ToleranceConfig
from config.settings import get_settings
from models.channels import (
    BlockInvariant,
    ChannelModel,
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
from models.groups import (
    Conjugated,
    ConjugatedTorus,
    DirectSum,
    FullUnitary,
    SignedPermutations,
    SymmetryGroup,
    TensorProduct,
    Trivial,
)
from models.matrices import RandomStream, UnitaryMatrix, as_array, as_complex_matrix
from models.results import MembershipReport
from services.matcore_service import random_hermitian
from services.symmetry_service import haar_sample_batch

logger = logging.getLogger(__name__)


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Circularly symmetric entries with unit variance"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _uniform_phase(rng: np.random.Generator, shape) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(shape))


def _radius(law: EntryLaw, rng: np.random.Generator, shape) -> np.ndarray:
    if law.radius_law == RadiusLaw.RAYLEIGH:
        return rng.rayleigh(law.scale / np.sqrt(2), size=shape)
    if law.radius_law == RadiusLaw.EXPONENTIAL:
        return rng.exponential(law.scale, size=shape)
    return np.full(shape, law.scale)


def draw_entries(law: EntryLaw, rng: np.random.Generator, shape) -> np.ndarray:
    """Entries from a law symmetric with respect to zero"""
    if law.kind == EntryLawKind.COMPLEX_GAUSSIAN:
        return law.scale * _complex_gaussian(rng, shape)
    if law.kind == EntryLawKind.SYMMETRIC_TWO_POINT:
        return law.scale * rng.choice(np.array([-1.0, 1.0]), size=shape).astype(np.complex128)
    return _radius(law, rng, shape) * _uniform_phase(rng, shape)


# =============================================================================
# SAMPLING
# =============================================================================

@singledispatch
def _draw(model: Any, rng: np.random.Generator, count: int) -> np.ndarray:
    raise ChannelSamplerError(f"No sampler for {type(model).__name__}")


@_draw.register
def _(model: Gaussian, rng: np.random.Generator, count: int) -> np.ndarray:
    return model.scale * _complex_gaussian(rng, (count, model.m, model.n))


@_draw.register
def _(model: ColumnSymmetric, rng: np.random.Generator, count: int) -> np.ndarray:
    columns = [draw_entries(law, rng, (count, model.m)) for law in model.column_laws]
    inner = np.stack(columns, axis=-1) * _uniform_phase(rng, (count, 1, model.n))
    return model.w_m.matrix @ inner @ model.w_n.matrix


@_draw.register
def _(model: RankOneProduct, rng: np.random.Generator, count: int) -> np.ndarray:
    c_m = draw_entries(model.law_m, rng, (count, model.m)) * _uniform_phase(rng, (count, model.m))
    c_n = draw_entries(model.law_n, rng, (count, model.n)) * _uniform_phase(rng, (count, model.n))
    return c_m[:, :, None] * np.conj(c_n)[:, None, :]


@_draw.register
def _(model: Ricean, rng: np.random.Generator, count: int) -> np.ndarray:
    return model.hbar[None, :, :] + model.scale * _complex_gaussian(rng, (count, model.m, model.n))


@_draw.register
def _(model: BlockInvariant, rng: np.random.Generator, count: int) -> np.ndarray:
    inner = _draw(model.inner, rng, count)
    right = haar_sample_batch(FullUnitary(model.n_block), rng, count)
    left = haar_sample_batch(_outer_group(model), rng, count)
    product = np.einsum("kij,kab->kiajb", left, right).reshape(count, model.n, model.n)
    return inner @ product


@_draw.register
def _(model: SectionFiveAlpha, rng: np.random.Generator, count: int) -> np.ndarray:
    draws = np.zeros((count, 2, 2), dtype=np.complex128)
    draws[:, 0, 0] = 1.0
    draws[:, 1, 1] = model.alpha * _uniform_phase(rng, count)
    return draws


@_draw.register
def _(model: SectionFiveInf, rng: np.random.Generator, count: int) -> np.ndarray:
    draws = np.zeros((count, 2, 2), dtype=np.complex128)
    draws[:, 1, 0] = 1.0
    draws[:, 1, 1] = 2.0 * _uniform_phase(rng, count)
    return draws


@_draw.register
def _(model: Custom, rng: np.random.Generator, count: int) -> np.ndarray:
    draws = np.asarray(model.sampler(rng, count))
    expected = (count, model.m, model.n)
    if draws.shape != expected:
        raise ChannelSamplerError(ErrorMessages.SAMPLER_SHAPE.format(actual=draws.shape, expected=expected))
    draws = draws.astype(np.complex128)
    if not np.all(np.isfinite(draws)):
        raise ChannelSamplerError(ErrorMessages.NOT_FINITE.format(name=f"{model.name} draw"))
    return draws


def _outer_group(model: BlockInvariant) -> SymmetryGroup:
    if model.outer == OuterSymmetry.TORUS:
        return ConjugatedTorus(UnitaryMatrix.identity(model.d))
    if model.outer == OuterSymmetry.UNITARY:
        return FullUnitary(model.d)
    return Trivial(model.d)


def sample(model: ChannelModel, rng: Union[RandomStream, np.random.Generator], n: int) -> np.ndarray:
    """
    n iid draws of H as an (n, M, N) array, deterministic given the stream

    Raises:
        ChannelSamplerError: If a custom sampler returns the wrong shape
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    generator = rng.generator if isinstance(rng, RandomStream) else rng
    return _draw(model, generator, n)


def sample_batch(
    model: ChannelModel,
    rng: RandomStream,
    n: int,
    threads: Optional[int] = None,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """
    n iid draws in fixed-size chunks, chunk k drawn from the k-th child stream

    The result depends only on the seed and chunk_size, never on threads.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    settings = get_settings()
    threads = threads or settings.threads
    chunk_size = chunk_size or settings.chunk_size
    counts = [chunk_size] * (n // chunk_size)
    if n % chunk_size:
        counts.append(n % chunk_size)
    streams = rng.split(len(counts))

    def draw_chunk(index: int) -> np.ndarray:
        return _draw(model, streams[index].generator, counts[index])

    if threads > 1 and len(counts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            chunks = list(executor.map(draw_chunk, range(len(counts))))
    else:
        chunks = [draw_chunk(index) for index in range(len(counts))]
    return np.concatenate(chunks, axis=0)


# =============================================================================
# DECLARED SYMMETRIES
# =============================================================================

def singular_value_blocks(hbar: np.ndarray, sv_tol: Optional[float] = None) -> List[int]:
    """Sizes of the groups of equal singular values of H-bar, padded with zeros to N"""
    hbar = as_complex_matrix(hbar, "hbar")
    n = hbar.shape[1]
    values = np.zeros(n)
    computed = linalg.svdvals(hbar)[:n]
    values[: computed.size] = computed
    tol = (ToleranceConfig.SINGULAR_VALUE_REL if sv_tol is None else sv_tol) * max(values.max(), 1.0)
    blocks = [1]
    for previous, current in zip(values, values[1:]):
        if abs(previous - current) <= tol:
            blocks[-1] += 1
        else:
            blocks.append(1)
    return blocks


def _ricean_group(model: Ricean) -> SymmetryGroup:
    _, _, vh = linalg.svd(model.hbar, full_matrices=True)
    w = UnitaryMatrix(vh.conj().T, check=False)
    blocks = singular_value_blocks(model.hbar, model.sv_tol)
    if len(blocks) == 1:
        return Conjugated(w, SignedPermutations(model.n))
    return Conjugated(w, DirectSum(tuple(SignedPermutations(size) for size in blocks)))


def known_symmetry_group(model: ChannelModel) -> SymmetryGroup:
    """
    Largest structured subgroup of G(H) established for the model

    Raises:
        NoDeclaredSymmetryError: For custom samplers
    """
    if isinstance(model, Gaussian):
        return FullUnitary(model.n)
    if isinstance(model, ColumnSymmetric):
        return ConjugatedTorus(UnitaryMatrix(model.w_n.adjoint, check=False))
    if isinstance(model, RankOneProduct):
        return ConjugatedTorus(UnitaryMatrix.identity(model.n))
    if isinstance(model, Ricean):
        return _ricean_group(model)
    if isinstance(model, BlockInvariant):
        return TensorProduct(_outer_group(model), FullUnitary(model.n_block))
    if isinstance(model, (SectionFiveAlpha, SectionFiveInf)):
        return DirectSum((Trivial(1), ConjugatedTorus(UnitaryMatrix.identity(1))))
    raise NoDeclaredSymmetryError(ErrorMessages.NO_DECLARED_SYMMETRY.format(model=getattr(model, "name", type(model).__name__)))


# =============================================================================
# MEMBERSHIP PROBE
# =============================================================================

def probe_family(seed: int, dim: int, count: int = ProbeConfig.N_PROBES) -> np.ndarray:
    """The fixed Hermitian probes for (seed, N)"""
    generator = np.random.default_rng(np.random.SeedSequence([ProbeConfig.SEED_SALT, int(seed), int(dim)]))
    return np.stack([random_hermitian(generator, dim) for _ in range(count)])


def membership_probe(
    model: ChannelModel,
    v,
    n: int,
    rng: RandomStream,
    level: float = ProbeConfig.LEVEL,
    n_probes: int = ProbeConfig.N_PROBES,
) -> MembershipReport:
    """
    Necessary-condition test of V*(H*H)V = H*H in law

    Independent halves of the n draws give M and V*MV; each probe statistic
    Tr(M A_r) is compared with a two-sample Kolmogorov-Smirnov test at the
    Bonferroni level level / n_probes.
    """
    v = as_array(v) if isinstance(v, UnitaryMatrix) else UnitaryMatrix(v).matrix
    if v.shape[0] != model.n:
        raise DimensionMismatchError(
            ErrorMessages.DIMENSION_MISMATCH.format(operation="membership_probe", expected=model.n, actual=v.shape[0])
        )
    if n < ProbeConfig.MIN_SAMPLES:
        raise ValueError(ErrorMessages.TOO_FEW_SAMPLES.format(operation="membership_probe", minimum=ProbeConfig.MIN_SAMPLES, actual=n))

    probes = probe_family(rng.seed, model.n, n_probes)
    draws = sample_batch(model, rng, n)
    half = n // 2
    gram = np.conj(np.swapaxes(draws, -1, -2)) @ draws
    original = gram[:half]
    rotated = v.conj().T @ gram[half:] @ v
    statistics_a = np.real(np.einsum("kij,rji->rk", original, probes))
    statistics_b = np.real(np.einsum("kij,rji->rk", rotated, probes))

    threshold = level / n_probes
    best_p, best_stat = 1.0, 0.0
    for first, second in zip(statistics_a, statistics_b):
        result = stats.ks_2samp(first, second)
        if result.pvalue < best_p or best_p == 1.0 and result.statistic > best_stat:
            best_p, best_stat = float(result.pvalue), float(result.statistic)
    consistent = best_p >= threshold
    if not consistent:
        logger.info(f"⚠️ Membership probe rejected V (KS statistic {best_stat:.3f}, p = {best_p:.2e})")
    return MembershipReport(
        consistent=consistent,
        statistic=best_stat,
        p_value=best_p,
        threshold=threshold,
        n_samples=n,
        n_probes=n_probes,
    )


# =============================================================================
# CONSTRUCTED MODELS
# =============================================================================

def heavy_tail_channel(m: int, n: int, cap: float = FinitenessConfig.HEAVY_TAIL_CAP) -> Custom:
    """
    Entries exp(min(|Z|, cap)) e^{i phi} with Z standard Cauchy

    E log(1 + |h|) >= E min(|Z|, cap) - 1 grows without bound as the cap is raised.
    """
    def sampler(rng: np.random.Generator, count: int) -> np.ndarray:
        magnitude = np.exp(np.minimum(np.abs(rng.standard_cauchy((count, m, n))), cap))
        return magnitude * _uniform_phase(rng, (count, m, n))

    return Custom(sampler=sampler, m=m, n=n, name="heavy_tail")


def alpha_for_target(a: float) -> float:
    """The alpha whose channel H_alpha has diag(a, 1 - a) as its optimal input"""
    if not 0.0 < a <= 1.0:
        raise ValueError(f"target a must lie in (0, 1], got {a}")
    return max(1.0 / np.sqrt(2.0 * a), ALPHA_MIN)
