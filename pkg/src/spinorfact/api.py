"""FastAPI application exposing spinor factorization as a REST service.

The built-in spherical four-bar is solved once at startup via the FastAPI
lifespan mechanism; every other endpoint computes on request.  Domain
signals come back as HTTP 422 with an ``ErrorModel`` body.

Endpoints:
    GET  /health      -- Service health check.
    POST /factor      -- Factor a spinor polynomial into linear factors.
    POST /annihilate  -- Left and right annihilating points of a null displacement.
    POST /cofactor    -- Linear and real cofactors of a spinor polynomial.
    GET  /fourbar     -- Axes of the built-in spherical four-bar.

Usage:
    poetry run python -m spinorfact.api
    poetry run uvicorn spinorfact.api:app --reload
"""

from __future__ import annotations

import logging
import time
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager
from typing import Any, Dict, Literal

import numpy as np
import uvicorn
from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import Field

from spinorfact import __version__
from spinorfact.annihilator import left_annihilator, right_annihilator
from spinorfact.errors import DomainSignal, NumericalFailure
from spinorfact.factorization import DEFAULT_TOL, FactorOptions, factorize_all
from spinorfact.fourbar_demo import run_fourbar
from spinorfact.mult_technique import DEFAULT_MAX_ATTEMPTS, find_cofactor, real_cofactor
from spinorfact.schemas import (
    MAX_SEED,
    AnnihilatorReportModel,
    CofactorResultModel,
    ErrorModel,
    EvenElementModel,
    FactorReportModel,
    FourBarReportModel,
    PolynomialModel,
    WireModel,
)

# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
    datefmt="%H:%M:%S",
)
logger: logging.Logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Request schemas
# ---------------------------------------------------------------------------
class FactorRequest(WireModel):
    """Request body for ``/factor``."""

    polynomial: PolynomialModel
    all_orderings: bool = Field(default=False, description="Explore every quadratic ordering")
    side: Literal["left", "right"] = Field(default="left", description="Side of the linear factors")
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    tol: float = Field(default=DEFAULT_TOL, gt=0.0)


class AnnihilateRequest(WireModel):
    element: EvenElementModel
    method: Literal["nullspace", "sandwich", "cases"] = "nullspace"
    seed: int = Field(default=0, ge=0, le=MAX_SEED)


class CofactorRequest(WireModel):
    polynomial: PolynomialModel
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    max_attempts: int = Field(default=DEFAULT_MAX_ATTEMPTS, ge=1, le=1000)


class HealthResponse(WireModel):
    status: str
    fourbar_ready: bool
    version: str


# ---------------------------------------------------------------------------
# Application state
# ---------------------------------------------------------------------------
models: Dict[str, Any] = {}


# ---------------------------------------------------------------------------
# Lifespan
# ---------------------------------------------------------------------------
@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """Solve the built-in four-bar at startup and cache its report."""
    logger.info("Solving built-in four-bar ...")
    t_start: float = time.monotonic()
    try:
        models["fourbar"] = FourBarReportModel.from_report(run_fourbar())
    except (DomainSignal, NumericalFailure) as exc:
        # the service stays up; /fourbar answers 503
        logger.error("Four-bar precomputation failed: %s", exc)
    elapsed_ms: float = (time.monotonic() - t_start) * 1000.0
    logger.info("Startup finished in %.0f ms", elapsed_ms)

    yield

    models.clear()
    logger.info("Cached results released")


# ---------------------------------------------------------------------------
# FastAPI app
# ---------------------------------------------------------------------------
app: FastAPI = FastAPI(
    title="CGA Spinor Factorization API",
    description=(
        "Factors spinor polynomials of conformal geometric algebra into "
        "linear motion polynomials and recovers spherical four-bar axes."
    ),
    version=__version__,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(DomainSignal)
async def domain_signal_handler(request: Request, exc: DomainSignal) -> JSONResponse:
    """Map a domain signal to 422 with an ``ErrorModel`` body."""
    logger.warning("%s %s -- %s: %s", request.method, request.url.path, type(exc).__name__, exc)
    body: ErrorModel = ErrorModel(error=type(exc).__name__, detail=str(exc))
    return JSONResponse(status_code=422, content=body.model_dump())


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError) -> JSONResponse:
    logger.warning("%s %s -- invalid input: %s", request.method, request.url.path, exc)
    body: ErrorModel = ErrorModel(error=type(exc).__name__, detail=str(exc))
    return JSONResponse(status_code=400, content=body.model_dump())


@app.exception_handler(NumericalFailure)
async def numerical_failure_handler(request: Request, exc: NumericalFailure) -> JSONResponse:
    logger.error("%s %s -- %s: %s", request.method, request.url.path, type(exc).__name__, exc)
    body: ErrorModel = ErrorModel(error=type(exc).__name__, detail=str(exc))
    return JSONResponse(status_code=500, content=body.model_dump())


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------
def _get_fourbar() -> FourBarReportModel:
    """Cached four-bar report.

    Raises:
        HTTPException: 503 if the startup solve has not produced a report.
    """
    report: FourBarReportModel | None = models.get("fourbar")
    if report is None:
        raise HTTPException(
            status_code=503,
            detail="Four-bar report is not available. Please try again shortly.",
        )
    return report


# ---------------------------------------------------------------------------
# Endpoints
# ---------------------------------------------------------------------------
@app.get(
    "/health",
    response_model=HealthResponse,
    tags=["system"],
    summary="Service health check",
)
async def health() -> HealthResponse:
    return HealthResponse(status="ok", fourbar_ready="fourbar" in models, version=__version__)


@app.post(
    "/factor",
    response_model=FactorReportModel,
    tags=["factorization"],
    summary="Factor a spinor polynomial into linear factors",
)
def factor(request: FactorRequest) -> FactorReportModel:
    """Walk the quadratic-factor orderings and report verified factorizations.

    ``no_factorization`` is a regular report, not an error.
    """
    poly = request.polynomial.to_polynomial()
    logger.info("POST /factor -- degree=%d side=%s", poly.degree, request.side)
    options: FactorOptions = FactorOptions(
        all_orderings=request.all_orderings,
        seed=request.seed,
        tol=request.tol,
        side=request.side,
    )
    return FactorReportModel.from_report(factorize_all(poly, options))


@app.post(
    "/annihilate",
    response_model=AnnihilatorReportModel,
    response_model_by_alias=True,
    tags=["annihilators"],
    summary="Annihilating points of a null displacement",
)
def annihilate(request: AnnihilateRequest) -> AnnihilatorReportModel:
    n = request.element.to_multivector()
    rng: np.random.Generator = np.random.default_rng(request.seed)
    left = left_annihilator(n, request.method, rng=rng)
    right = right_annihilator(n, request.method, rng=rng)
    return AnnihilatorReportModel.from_spaces(left, right)


@app.post(
    "/cofactor",
    response_model=CofactorResultModel,
    tags=["factorization"],
    summary="Linear and real cofactors of a spinor polynomial",
)
def cofactor(request: CofactorRequest) -> CofactorResultModel:
    """Sample ``H = t - e^f`` until ``P H`` factors, then build ``R`` from the same seed."""
    poly = request.polynomial.to_polynomial()
    logger.info("POST /cofactor -- degree=%d seed=%d", poly.degree, request.seed)
    t_start: float = time.monotonic()
    found = find_cofactor(poly, request.seed, request.max_attempts)
    real = real_cofactor(poly, request.seed, request.max_attempts)
    elapsed_ms: float = (time.monotonic() - t_start) * 1000.0
    logger.info("POST /cofactor -- %d attempt(s) in %.1f ms", found.attempts, elapsed_ms)
    return CofactorResultModel.from_results(found, real)


@app.get(
    "/fourbar",
    response_model=FourBarReportModel,
    tags=["fourbar"],
    summary="Axes of the built-in spherical four-bar",
)
async def fourbar() -> FourBarReportModel:
    return _get_fourbar()


# ---------------------------------------------------------------------------
# CLI entry-point
# ---------------------------------------------------------------------------
def main() -> None:
    """Start the API server via uvicorn."""
    uvicorn.run(
        "spinorfact.api:app",
        host="0.0.0.0",
        port=8000,
        reload=True,
        log_level="info",
    )


if __name__ == "__main__":
    main()
