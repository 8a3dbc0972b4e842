"""
Contest analysis endpoints
"""

from typing import List, Optional

from fastapi import APIRouter, Depends
from pydantic import BaseModel, Field

from src.core.logging import get_logger
from src.models.contest import ContestSpec
from src.models.report import EquilibriumReport, IdentityCheckReport, MatrixReport, OracleVerdict, SweepRow
from src.services.contest_service import ContestService, get_contest_service

logger = get_logger(__name__)

router = APIRouter()


class MatrixRequest(BaseModel):
    """Finite-game analysis request"""
    spec: ContestSpec
    grid_step: Optional[float] = Field(None, gt=0, description="Discretize interval choice sets at this step")


class SweepRequest(BaseModel):
    """Threshold sweep request"""
    spec: ContestSpec
    e_high_min: float = Field(..., ge=0)
    e_high_max: float = Field(..., ge=0)
    steps: int = Field(11, ge=2, le=10_000)
    e_low: Optional[float] = Field(None, ge=0, description="Lower bracket effort (default: from the choice set)")


class OracleRequest(BaseModel):
    """Brute-force verification request"""
    spec: ContestSpec
    grid_step: Optional[float] = Field(None, gt=0)
    eps: Optional[float] = Field(None, ge=0)
    self_test_corrupt: bool = Field(False, description="Verify a deliberately corrupted report")


class IdentityCheckRequest(BaseModel):
    """Payoff identity check request"""
    valuation: float = Field(1.0, gt=0)
    r: float = Field(1.0, gt=0, le=1)
    a: float = Field(1.0, gt=0)
    samples: int = Field(10_000, ge=1, le=1_000_000)
    seed: int = 0
    force_equal: bool = False


@router.post("/solve", response_model=EquilibriumReport)
def solve(spec: ContestSpec, service: ContestService = Depends(get_contest_service)) -> EquilibriumReport:
    """Pure-strategy equilibria of a symmetric contest"""
    logger.info("solve request", valuations=spec.valuations)
    return service.solve(spec)


@router.post("/matrix", response_model=MatrixReport)
def matrix(request: MatrixRequest, service: ContestService = Depends(get_contest_service)) -> MatrixReport:
    """Payoff bimatrix, pure and small-support mixed equilibria"""
    logger.info("matrix request", valuations=request.spec.valuations, grid_step=request.grid_step)
    return service.matrix(request.spec, grid_step=request.grid_step)


@router.post("/sweep", response_model=List[SweepRow])
def sweep(request: SweepRequest, service: ContestService = Depends(get_contest_service)) -> List[SweepRow]:
    """Threshold effort and regime over evenly spaced upper bracket efforts"""
    return service.sweep(request.spec, request.e_high_min, request.e_high_max, request.steps, e_low=request.e_low)


@router.post("/oracle", response_model=OracleVerdict)
def verify(request: OracleRequest, service: ContestService = Depends(get_contest_service)) -> OracleVerdict:
    """Confirm or refute the analytical equilibria on a grid"""
    logger.info("oracle request", grid_step=request.grid_step, eps=request.eps, corrupt=request.self_test_corrupt)
    return service.oracle(request.spec, corrupt=request.self_test_corrupt, grid_step=request.grid_step, eps=request.eps)


@router.post("/identity-check", response_model=IdentityCheckReport)
def identity_check(
    request: IdentityCheckRequest,
    service: ContestService = Depends(get_contest_service),
) -> IdentityCheckReport:
    """Largest payoff-identity residual over seeded random effort pairs"""
    return service.identity_check(
        request.valuation, request.r, request.samples, request.seed, a=request.a, force_equal=request.force_equal
    )
