"""Symcheck subcommand: two-symmetry sufficient condition for the isotropic input."""
from typing import Any, Dict, List, Tuple

from config.constants import ErrorMessages, ExitCode
from controllers.base_controller_impl import BaseControllerImpl
from models.enums import RelationBackend
from models.errors import ConfigError
from models.groups import FullUnitary
from models.matrices import RandomStream, UnitaryMatrix
from schemas.report_schema import SymcheckReportSchema
from schemas.run_config_schema import RunConfig
from services.standard_symmetry_service import (
    check_two_symmetry_condition,
    eigen_decompose_unitary,
    intersect_torus_fixed_sets,
)
from services.symmetry_service import describe_reduced_set, haar_sample


class SymcheckController(BaseControllerImpl):
    """Controller for the symcheck subcommand."""

    def __init__(self, subparsers):
        super().__init__(subparsers, SymcheckReportSchema, "Check whether two symmetries force the isotropic input")

    @property
    def command(self) -> str:
        return "symcheck"

    def _register_arguments(self):
        super()._register_arguments()
        self.parser.add_argument("--haar-dim", type=int, metavar="N", help="Draw V1, V2 Haar on U(N) from the seed")
        self.parser.add_argument(
            "--relation-backend",
            choices=[b.value for b in RelationBackend],
            help="Integer relation search (default auto: exhaustive up to N = 3, PSLQ above)",
        )

    def overrides(self, args) -> Dict[str, Any]:
        return {**super().overrides(args), "haar_dim": args.haar_dim, "relation_backend": args.relation_backend}

    def _pair(self, config: RunConfig) -> Tuple[UnitaryMatrix, UnitaryMatrix]:
        if config.haar_dim is not None:
            generator = RandomStream(config.seed).generator
            group = FullUnitary(config.haar_dim)
            return haar_sample(group, generator), haar_sample(group, generator)
        if config.v1 is None or config.v2 is None:
            raise ConfigError(ErrorMessages.INVALID_CONFIG.format(reason="symcheck needs v1 and v2, or --haar-dim"))
        return UnitaryMatrix(config.v1), UnitaryMatrix(config.v2)

    def execute(self, config: RunConfig) -> Tuple[SymcheckReportSchema, int, List[str]]:
        v1, v2 = self._pair(config)
        verdict = check_two_symmetry_condition(
            v1,
            v2,
            entry_tol=config.entry_tol,
            bound=config.relation_bound,
            backend=config.relation_backend,
        )
        intersection = intersect_torus_fixed_sets(
            eigen_decompose_unitary(v1).w, eigen_decompose_unitary(v2).w, entry_tol=config.entry_tol
        )

        report = SymcheckReportSchema.from_verdict(
            verdict, describe_reduced_set(intersection), v1.matrix, v2.matrix, config.seed
        )
        summary = [f"{'PASS' if check.passed else 'FAIL'}  {check.name}: {check.detail}" for check in verdict.checks]
        summary.append(f"torus intersection: {report.intersection}")
        summary.append(f"verdict: {report.verdict}")
        return report, ExitCode.SUCCESS, summary
