"""
Verification suites: statistical and structural checks of the reduction pipeline.

Every check records a margin that is non-negative exactly when the check passes.
"""
import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from config.constants import ALPHA_MIN, ErrorMessages, EstimatorConfig, ProbeConfig, SuiteConfig, ToleranceConfig
from config.settings import get_settings
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
from models.enums import EntryLawKind, FinitenessVerdict, MultisetSemantics, OuterSymmetry, RadiusLaw
from models.errors import ConfigError
from models.groups import (
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
from models.matrices import CovarianceMatrix, RandomStream, UnitaryMatrix
from models.phases import PhaseVector
from models.reduced_sets import Singleton
from models.results import CapacityResult, VerificationReport
from schemas.optimizer_schema import OptConfig
from services.channel_service import (
    alpha_for_target,
    heavy_tail_channel,
    known_symmetry_group,
    membership_probe,
    sample_batch,
)
from services.infocap_service import finiteness_diagnostic, mi_closed_form_inf, paired_difference
from services.matcore_service import random_covariance
from services.optimizer_service import capacity_closed_form_alpha, capacity_closed_form_inf, optimize_capacity
from services.standard_symmetry_service import (
    check_two_symmetry_condition,
    eigen_decompose_unitary,
    intersect_torus_fixed_sets,
    rational_independence,
)
from services.symmetry_service import average, fixed_point_residual, haar_sample, haar_sample_batch, is_subgroup

logger = logging.getLogger(__name__)

PROBE_ELEMENTS = 3


def _seed(cfg: OptConfig) -> int:
    if cfg.seed is not None:
        return cfg.seed
    return get_settings().seed or 0


def _log_verdict(report: VerificationReport):
    failed = [check.check for check in report.checks if not check.passed]
    if failed:
        logger.warning(f"❌ Suite {report.suite} failed {len(failed)}/{len(report.checks)} checks: {failed}")
    else:
        logger.info(f"✅ Suite {report.suite} passed ({len(report.checks)} checks)")


# =============================================================================
# AVERAGING NEVER DECREASES MUTUAL INFORMATION
# =============================================================================

def verify_prop1(
    model: ChannelModel,
    f: SymmetryGroup,
    q,
    n: int,
    rng: RandomStream,
    probe_membership: bool = False,
) -> VerificationReport:
    """
    Paired test of I(A_F(Q)) >= I(Q)

    D = mean log det(I + H A_F(Q) H*) - log det(I + H Q H*) over n common draws
    passes when D >= -3 stderr(D). With probe_membership, elements of F (all
    of a finite multiset, a few Haar draws otherwise) must first pass the
    membership probe for the model.
    """
    q = q if isinstance(q, CovarianceMatrix) else CovarianceMatrix(q)
    report = VerificationReport(suite="prop1", seed=rng.seed)
    sample_stream, probe_stream = rng.split(2)

    if probe_membership:
        if isinstance(f, FiniteMultiset):
            elements = f.stacked()
        else:
            elements = haar_sample_batch(f, probe_stream.spawn(), PROBE_ELEMENTS)
        n_probe = max(n, ProbeConfig.MIN_SAMPLES)
        for index, element in enumerate(elements):
            probe = membership_probe(model, element, n_probe, probe_stream.spawn())
            report.add(f"element {index} of {group_label(f)} passes the membership probe", probe.consistent, probe.p_value - probe.threshold)

    samples = sample_batch(model, sample_stream, n)
    averaged = CovarianceMatrix(average(f, q), check=False)
    difference = paired_difference(samples, averaged, q)
    margin = difference.value + EstimatorConfig.STDERR_MULTIPLIER * difference.std_error
    report.add(
        f"I(A_F(Q)) - I(Q) = {difference.value:.6g} ± {difference.std_error:.2g} for {group_label(f)}",
        margin >= 0,
        margin,
        information=True,
    )
    return report


# =============================================================================
# FIXED-POINT INCLUSION
# =============================================================================

def verify_inclusion(f: SymmetryGroup, g: SymmetryGroup, n_random_q: int, rng: RandomStream) -> VerificationReport:
    """
    A_G(C_{N,1}) inside A_F(C_{N,1}) for a structural subgroup F of G

    Raises:
        UnsupportedGroupError: If the pair is not recognized
    """
    report = VerificationReport(suite="thm1b", seed=rng.seed)
    label = f"{group_label(f)} in {group_label(g)}"
    if not is_subgroup(f, g):
        report.add(f"{label}: structural inclusion", False, -1.0)
        return report
    report.add(f"{label}: structural inclusion", True, 0.0)

    generator = rng.generator
    worst = 0.0
    for _ in range(n_random_q):
        q = random_covariance(generator, g.dim)
        worst = max(worst, fixed_point_residual(f, average(g, q.matrix)))
    margin = ToleranceConfig.FIXED_POINT - worst
    report.add(f"{label}: A_G(Q) fixed by F for {n_random_q} random Q", margin >= 0, margin)
    return report


# =============================================================================
# PIPELINE CHECKS
# =============================================================================

def _dominance_check(
    report: VerificationReport,
    label: str,
    model: ChannelModel,
    result: CapacityResult,
    cfg: OptConfig,
    rng: RandomStream,
):
    """q_star against random covariances on common fresh draws"""
    sample_stream, competitor_stream = rng.split(2)
    samples = sample_batch(model, sample_stream, cfg.n_eval_samples)
    generator = competitor_stream.generator
    margins = []
    for _ in range(SuiteConfig.N_RANDOM_COMPETITORS):
        competitor = random_covariance(generator, model.n)
        difference = paired_difference(samples, result.q_star, competitor)
        margins.append(difference.value + EstimatorConfig.STDERR_MULTIPLIER * difference.std_error)
    margin = min(margins)
    report.add(
        f"{label}: q_star dominates {SuiteConfig.N_RANDOM_COMPETITORS} random covariances", margin >= 0, margin, information=True
    )


def _run_pipeline(
    report: VerificationReport,
    label: str,
    model: ChannelModel,
    cfg: OptConfig,
    rng: RandomStream,
) -> Tuple[CapacityResult, SymmetryGroup]:
    """known group -> reduced set -> optimizer, with the membership and dominance checks"""
    group = known_symmetry_group(model)
    result = optimize_capacity(model, group, cfg)
    if not result.converged:
        logger.warning(f"⚠️ {label}: optimizer stopped after {result.iterations} iterations without converging")
    residual = fixed_point_residual(group, result.q_star)
    report.add(f"{label}: q_star is a fixed point of the known group", residual <= 1e-8, 1e-8 - residual)
    _dominance_check(report, label, model, result, cfg, rng)
    return result, group


def _off_diagonal_residual(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix - np.diag(np.diagonal(matrix))))


def _column_laws(scales: Sequence[float]) -> Tuple[EntryLaw, ...]:
    return tuple(EntryLaw(EntryLawKind.UNIFORM_PHASE_RADIUS, scale, RadiusLaw.RAYLEIGH) for scale in scales)


# =============================================================================
# COROLLARY SUITES
# =============================================================================

def _corollary_1(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    model = Gaussian(2, 3)
    result, _ = _run_pipeline(report, "Gaussian(2,3)", model, cfg, rng)
    distance = float(np.linalg.norm(result.q_star.matrix - np.eye(3) / 3))
    report.add("Gaussian(2,3): q_star = I/3", distance <= SuiteConfig.BASIS_RESIDUAL, SuiteConfig.BASIS_RESIDUAL - distance)


def _corollary_2(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    w_n = UnitaryMatrix(linalg.dft(3, scale="sqrtn"), check=False)
    model = ColumnSymmetric(UnitaryMatrix.identity(3), w_n, _column_laws((2.0, 1.0, 0.5)))
    result, _ = _run_pipeline(report, "column symmetric", model, cfg, rng)
    residual = _off_diagonal_residual(w_n.matrix @ result.q_star.matrix @ w_n.adjoint)
    report.add(
        "column symmetric: q_star diagonal in the W_N basis",
        residual <= SuiteConfig.BASIS_RESIDUAL,
        SuiteConfig.BASIS_RESIDUAL - residual,
    )


def _corollary_3(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    model = RankOneProduct(2, 3, EntryLaw(), EntryLaw(EntryLawKind.UNIFORM_PHASE_RADIUS, 1.0, RadiusLaw.EXPONENTIAL))
    result, _ = _run_pipeline(report, "rank one", model, cfg, rng)
    residual = _off_diagonal_residual(result.q_star.matrix)
    report.add("rank one: q_star diagonal", residual <= SuiteConfig.BASIS_RESIDUAL, SuiteConfig.BASIS_RESIDUAL - residual)


def _block_inner(d: int, n_block: int) -> ColumnSymmetric:
    scales = np.repeat(np.linspace(2.0, 0.5, d), n_block)
    return ColumnSymmetric(UnitaryMatrix.identity(2), UnitaryMatrix.identity(d * n_block), _column_laws(scales))


def _corollary_4(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    model = BlockInvariant(2, 2, _block_inner(2, 2))
    result, _ = _run_pipeline(report, "block invariant", model, cfg, rng)
    residual = fixed_point_residual(TensorProduct(Trivial(2), FullUnitary(2)), result.q_star)
    report.add(
        "block invariant: q_star in C_{d,1} (x) I/N",
        residual <= SuiteConfig.BASIS_RESIDUAL,
        SuiteConfig.BASIS_RESIDUAL - residual,
    )


def _corollary_5(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    torus_stream, unitary_stream = rng.split(2)
    torus = BlockInvariant(2, 2, _block_inner(2, 2), OuterSymmetry.TORUS)
    result, _ = _run_pipeline(report, "torus outer", torus, cfg, torus_stream)
    residual = fixed_point_residual(
        TensorProduct(ConjugatedTorus(UnitaryMatrix.identity(2)), FullUnitary(2)), result.q_star
    )
    report.add(
        "torus outer: q_star in Diag_{d,1} (x) I/N",
        residual <= SuiteConfig.BASIS_RESIDUAL,
        SuiteConfig.BASIS_RESIDUAL - residual,
    )

    unitary = BlockInvariant(2, 2, _block_inner(2, 2), OuterSymmetry.UNITARY)
    result, _ = _run_pipeline(report, "unitary outer", unitary, cfg, unitary_stream)
    distance = float(np.linalg.norm(result.q_star.matrix - np.eye(4) / 4))
    report.add("unitary outer: q_star = I/(dN)", distance <= SuiteConfig.BASIS_RESIDUAL, SuiteConfig.BASIS_RESIDUAL - distance)


def _ricean_case(report: VerificationReport, label: str, hbar: np.ndarray, cfg: OptConfig, rng: RandomStream):
    model = Ricean(hbar, scale=1.0)
    result, group = _run_pipeline(report, label, model, cfg, rng)
    w = group.w.matrix
    diagonal_form = w.conj().T @ result.q_star.matrix @ w
    residual = _off_diagonal_residual(diagonal_form)
    report.add(f"{label}: W* q_star W diagonal", residual <= SuiteConfig.BASIS_RESIDUAL, SuiteConfig.BASIS_RESIDUAL - residual)

    entries = np.real(np.diagonal(diagonal_form))
    blocks = group.inner.block_sizes if isinstance(group.inner, DirectSum) else (group.dim,)
    offsets = np.concatenate([[0], np.cumsum(blocks)])
    spread = max(float(np.ptp(entries[offsets[k]:offsets[k + 1]])) for k in range(len(blocks)))
    report.add(
        f"{label}: D constant on singular-value blocks {tuple(blocks)}",
        spread <= SuiteConfig.BLOCK_SPREAD,
        SuiteConfig.BLOCK_SPREAD - spread,
    )
    return result


def _corollary_6(report: VerificationReport, cfg: OptConfig, rng: RandomStream):
    equal_stream, distinct_stream, mixed_stream = rng.split(3)
    result = _ricean_case(report, "Ricean equal singular values", np.diag([1.5, 1.5]), cfg, equal_stream)
    distance = float(np.linalg.norm(result.q_star.matrix - np.eye(2) / 2))
    report.add(
        "Ricean equal singular values: q_star = I/2",
        distance <= SuiteConfig.BASIS_RESIDUAL,
        SuiteConfig.BASIS_RESIDUAL - distance,
    )
    rotation = np.array([[1.0, 1.0], [-1.0, 1.0]]) / np.sqrt(2.0)
    _ricean_case(report, "Ricean singular values (2, 1)", rotation @ np.diag([2.0, 1.0]), cfg, distinct_stream)
    _ricean_case(report, "Ricean singular values (2, 2, 1)", np.diag([2.0, 2.0, 1.0]), cfg, mixed_stream)


COROLLARIES: Dict[int, Callable[[VerificationReport, OptConfig, RandomStream], None]] = {
    1: _corollary_1,
    2: _corollary_2,
    3: _corollary_3,
    4: _corollary_4,
    5: _corollary_5,
    6: _corollary_6,
}


def run_corollary_suite(which: int, cfg: Optional[OptConfig] = None) -> VerificationReport:
    """
    Build the corollary's channel, run the reduction pipeline and check its structural claim

    Raises:
        ConfigError: If which is not in 1..6
    """
    if which not in COROLLARIES:
        raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason=f"corollary suite must be 1..6, got {which}"))
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    cfg = cfg.model_copy(update={"seed": seed})
    report = VerificationReport(suite=f"corollary{which}", seed=seed)
    COROLLARIES[which](report, cfg, RandomStream(seed))
    _log_verdict(report)
    return report


# =============================================================================
# OTHER SUITES
# =============================================================================

def run_two_antenna_suite(cfg: Optional[OptConfig] = None) -> VerificationReport:
    """Optimizer against the closed forms of H_alpha and H_inf, restriction losslessness and the tightness map"""
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    cfg = cfg.model_copy(update={"seed": seed})
    report = VerificationReport(suite="sec5", seed=seed)

    for alpha in (ALPHA_MIN, 1.0, 2.0):
        result = optimize_capacity(SectionFiveAlpha(alpha), cfg=cfg)
        capacity, a_hat = capacity_closed_form_alpha(alpha)
        error = abs(result.capacity.value - capacity)
        report.add(
            f"alpha={alpha:.6g}: capacity matches closed form",
            error <= SuiteConfig.CLOSED_FORM_TOL,
            SuiteConfig.CLOSED_FORM_TOL - error,
            information=True,
        )
        expected = np.diag([a_hat, 1.0 - a_hat])
        error = float(np.max(np.abs(result.q_star.matrix - expected)))
        report.add(f"alpha={alpha:.6g}: q_star matches diag(a_hat, 1 - a_hat)", error <= SuiteConfig.CLOSED_FORM_TOL, SuiteConfig.CLOSED_FORM_TOL - error)

    result = optimize_capacity(SectionFiveInf(), cfg=cfg)
    capacity, q_star = capacity_closed_form_inf()
    error = abs(result.capacity.value - capacity)
    report.add(
        "H_inf: capacity is log 5",
        error <= SuiteConfig.QUADRATURE_FORM_TOL,
        SuiteConfig.QUADRATURE_FORM_TOL - error,
        information=True,
    )
    error = float(np.max(np.abs(result.q_star.matrix - q_star.matrix)))
    report.add("H_inf: q_star is diag(0, 1)", error <= SuiteConfig.QUADRATURE_FORM_TOL, SuiteConfig.QUADRATURE_FORM_TOL - error)
    error = abs(mi_closed_form_inf(0.0, 1.0, 0.0) - capacity)
    report.add("H_inf: closed form at diag(0, 1) equals the capacity", error <= 1e-12, 1e-12 - error, information=True)

    model = SectionFiveAlpha(2.0)
    reduced = optimize_capacity(model, cfg=cfg)
    full = optimize_capacity(model, Trivial(2), cfg)
    error = abs(full.capacity.value - reduced.capacity.value)
    report.add(
        "alpha=2: full-set optimum equals the reduced-set optimum",
        error <= SuiteConfig.CLOSED_FORM_TOL,
        SuiteConfig.CLOSED_FORM_TOL - error,
        information=True,
    )

    for target in (0.25, 0.5, 0.75, 1.0):
        _, a_hat = capacity_closed_form_alpha(alpha_for_target(target))
        error = abs(a_hat - target)
        report.add(f"tightness: alpha_for_target({target}) attains a_hat = {target}", error <= 1e-12, 1e-12 - error)

    _log_verdict(report)
    return report


def run_prop1_suite(cfg: Optional[OptConfig] = None) -> VerificationReport:
    """Averaging the input never lowers mutual information"""
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    report = VerificationReport(suite="prop1", seed=seed)
    gaussian_stream, trivial_stream, multiset_stream = RandomStream(seed).split(3)

    model = Gaussian(2, 2)
    skewed = CovarianceMatrix.diagonal([0.9, 0.1])
    report.extend(verify_prop1(model, FullUnitary(2), skewed, SuiteConfig.PROP1_SAMPLES, gaussian_stream))
    samples = sample_batch(model, gaussian_stream.spawn(), SuiteConfig.PROP1_SAMPLES)
    difference = paired_difference(samples, CovarianceMatrix.isotropic(2), skewed)
    margin = difference.value - EstimatorConfig.STDERR_MULTIPLIER * difference.std_error
    report.add("Gaussian(2,2): isotropic gain exceeds 3 std errors", margin > 0, margin, information=True)

    trivial = verify_prop1(model, Trivial(2), skewed, EstimatorConfig.MIN_MI_SAMPLES * 10, trivial_stream)
    report.extend(trivial)
    samples = sample_batch(model, trivial_stream.spawn(), EstimatorConfig.MIN_MI_SAMPLES)
    unchanged = CovarianceMatrix(average(Trivial(2), skewed.matrix), check=False)
    exact = abs(paired_difference(samples, unchanged, skewed).value)
    report.add("Trivial(2): averaging leaves I(Q) unchanged", exact == 0.0, -exact, information=True)

    flips = FiniteMultiset((UnitaryMatrix.identity(2), UnitaryMatrix(np.diag([1.0, -1.0]))))
    q = CovarianceMatrix(np.array([[0.5, 0.3], [0.3, 0.5]]))
    report.extend(verify_prop1(SectionFiveAlpha(1.0), flips, q, ProbeConfig.MIN_SAMPLES, multiset_stream, probe_membership=True))
    expected = math.log(1.5 * 1.5) - math.log(1.5 * 1.5 - 0.09)
    samples = sample_batch(SectionFiveAlpha(1.0), multiset_stream.spawn(), EstimatorConfig.MIN_MI_SAMPLES)
    averaged = CovarianceMatrix(average(flips, q.matrix), check=False)
    error = abs(paired_difference(samples, averaged, q).value - expected)
    report.add("H_1: multiset gain matches the closed form", error <= 1e-10, 1e-10 - error, information=True)

    _log_verdict(report)
    return report


def inclusion_pairs() -> List[Tuple[SymmetryGroup, SymmetryGroup]]:
    """Recognized subgroup pairs checked by the thm1b suite"""
    identity3 = UnitaryMatrix.identity(3)
    return [
        (ConjugatedTorus(identity3), FullUnitary(3)),
        (SignFlips(3), SignedPermutations(3)),
        (Permutations(3), SignedPermutations(3)),
        (SignFlips(3), ConjugatedTorus(identity3)),
        (Trivial(3), Permutations(3)),
        (
            FiniteMultiset((identity3, UnitaryMatrix(np.diag([1.0, -1.0, 1.0]))), MultisetSemantics.GROUP),
            SignFlips(3),
        ),
        (
            TensorProduct(Trivial(2), FullUnitary(2)),
            TensorProduct(ConjugatedTorus(UnitaryMatrix.identity(2)), FullUnitary(2)),
        ),
        (
            DirectSum((SignFlips(1), SignFlips(2))),
            DirectSum((SignedPermutations(1), SignedPermutations(2))),
        ),
    ]


def run_inclusion_suite(cfg: Optional[OptConfig] = None) -> VerificationReport:
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    report = VerificationReport(suite="thm1b", seed=seed)
    pairs = inclusion_pairs()
    for (f, g), stream in zip(pairs, RandomStream(seed).split(len(pairs))):
        report.extend(verify_inclusion(f, g, SuiteConfig.N_RANDOM_COVARIANCES, stream))
    _log_verdict(report)
    return report


def run_two_symmetry_suite(cfg: Optional[OptConfig] = None) -> VerificationReport:
    """Haar pairs of standard symmetries leave only the isotropic input"""
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    report = VerificationReport(suite="prop3", seed=seed)
    generator = RandomStream(seed).generator
    group = FullUnitary(3)
    for index in range(SuiteConfig.N_HAAR_PAIRS):
        v1, v2 = haar_sample(group, generator), haar_sample(group, generator)
        verdict = check_two_symmetry_condition(v1, v2)
        intersection = intersect_torus_fixed_sets(eigen_decompose_unitary(v1).w, eigen_decompose_unitary(v2).w)
        passed = verdict.isotropic_optimal and isinstance(intersection, Singleton)
        entry_tol = ToleranceConfig.ENTRY_TOL_FACTOR * math.sqrt(group.dim)
        report.add(f"Haar pair {index}: isotropic input forced", passed, (verdict.min_entry or 0.0) - entry_tol if passed else -1.0)

    v = haar_sample(group, generator)
    repeated = check_two_symmetry_condition(v, v)
    report.add("V1 = V2: inconclusive", not repeated.isotropic_optimal, 0.0)
    flip = check_two_symmetry_condition(np.diag([1.0, -1.0]), haar_sample(FullUnitary(2), generator))
    report.add("V1 = diag(1, -1): inconclusive", not flip.isotropic_optimal and flip.reason == "V1 standard", 0.0)
    exact = rational_independence(PhaseVector.from_exact([Fraction(0), Fraction(1, 2)]))
    report.add("phases (0, 1/2) are rationally dependent", not exact.independent, 0.0)

    _log_verdict(report)
    return report


def run_finiteness_suite(cfg: Optional[OptConfig] = None) -> VerificationReport:
    cfg = cfg or OptConfig()
    seed = _seed(cfg)
    report = VerificationReport(suite="prop4", seed=seed)
    streams = RandomStream(seed).split(7)

    for label, model, stream in (("Gaussian(2,2)", Gaussian(2, 2), streams[0]), ("H_1", SectionFiveAlpha(1.0), streams[1])):
        diagnostic = finiteness_diagnostic(model, rng=stream)
        passed = diagnostic.verdict == FinitenessVerdict.FINITE_LIKELY
        report.add(
            f"{label}: finite capacity likely (slope {diagnostic.slope:.3g})",
            passed,
            0.05 - diagnostic.slope,
            information=True,
        )

    heavy = heavy_tail_channel(2, 2)
    for index, stream in enumerate(streams[2:]):
        diagnostic = finiteness_diagnostic(heavy, rng=stream)
        passed = diagnostic.verdict == FinitenessVerdict.INFINITE_SUSPECTED
        report.add(
            f"heavy tail stream {index}: infinite capacity suspected (slope {diagnostic.slope:.3g})",
            passed,
            diagnostic.slope - 0.05,
            information=True,
        )

    _log_verdict(report)
    return report


SUITES: Dict[str, Callable[[OptConfig], VerificationReport]] = {
    "sec5": run_two_antenna_suite,
    "prop1": run_prop1_suite,
    "thm1b": run_inclusion_suite,
    "prop3": run_two_symmetry_suite,
    "prop4": run_finiteness_suite,
    **{f"corollary{k}": (lambda cfg, k=k: run_corollary_suite(k, cfg)) for k in COROLLARIES},
}


def suite_names() -> List[str]:
    return [*SUITES, "all"]


def run_suite(name: str, cfg: Optional[OptConfig] = None) -> VerificationReport:
    """
    Run one suite by name, or every suite for "all"

    Raises:
        ConfigError: For an unknown suite name
    """
    cfg = cfg or OptConfig()
    cfg = cfg.model_copy(update={"seed": _seed(cfg)})
    if name == "all":
        report = VerificationReport(suite="all", seed=cfg.seed)
        for suite in SUITES:
            report.extend(SUITES[suite](cfg), prefix=suite)
        _log_verdict(report)
        return report
    if name not in SUITES:
        raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason=f"unknown suite {name!r}, expected one of {suite_names()}"))
    return SUITES[name](cfg)
