"""Optimizer configuration schema."""
from typing import Optional

from pydantic import Field

from config.constants import OptimizerDefaults
from models.enums import StepRule
from schemas.base_schema import BaseSchema


class OptConfig(BaseSchema):
    """Projected gradient ascent over a reduced covariance set"""

    n_saa_samples: int = Field(
        default=OptimizerDefaults.N_SAA_SAMPLES,
        ge=OptimizerDefaults.MIN_SAA_SAMPLES,
        description="Channel draws frozen for the sample-average objective",
    )
    max_iters: int = Field(default=OptimizerDefaults.MAX_ITERS, ge=1)
    step_rule: StepRule = Field(default=StepRule.BACKTRACKING)
    step_size: float = Field(default=OptimizerDefaults.INITIAL_STEP, gt=0, description="gamma for fixed steps, gamma_0 otherwise")
    armijo: float = Field(default=OptimizerDefaults.ARMIJO, gt=0, lt=1)
    conv_tol: float = Field(default=OptimizerDefaults.CONV_TOL, gt=0, description="Bound on the projected-gradient norm")
    n_eval_samples: int = Field(default=OptimizerDefaults.N_EVAL_SAMPLES, ge=100)
    quadrature_nodes: int = Field(default=OptimizerDefaults.QUADRATURE_NODES, ge=16)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    threads: Optional[int] = Field(default=None, ge=1)
