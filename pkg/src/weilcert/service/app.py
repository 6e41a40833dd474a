"""HTTP service exposing the certification pipelines.

The handler functions (`handle_*`) are plain dict-in/dict-out and are also
called in-process by the CLI, so the CLI needs no running server.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..certify import (
    run_hyper_pipeline,
    run_plane_pipeline,
    verify_certificate,
)
from ..grammar import format_quad
from ..pell import InvalidParameterError, solve_negative_pell
from .schemas import (
    CertificateModel,
    HealthResponse,
    HyperRequest,
    PellRequest,
    PellResponse,
    PlaneRequest,
    VerifyRequest,
    VerifyResponse,
)


def handle_pell(D: int) -> dict:
    sol = solve_negative_pell(D)
    if sol is None:
        return {"D": D, "solvable": False}
    return {
        "D": D,
        "solvable": True,
        "a": sol.a,
        "b": sol.b,
        "unit": format_quad(sol.unit()),
    }


def handle_hyper(D: int, genus: int, t="auto", etas="auto", bound=100) -> dict:
    return run_hyper_pipeline(D, genus, t, etas, bound)


def handle_plane(D: int, d: int, t="auto", etas="auto", bound=100) -> dict:
    return run_plane_pipeline(D, d, t, etas, bound)


def handle_verify(certificate: dict) -> dict:
    match, diffs, recomputed = verify_certificate(certificate)
    return {"match": match, "diffs": diffs, "recomputed": recomputed}


def create_app() -> FastAPI:
    app = FastAPI(
        title="weilcert",
        version=__version__,
        description="Exact certification of Weil-descent obstructions "
        "for explicit real curve families",
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/pell", response_model=PellResponse, response_model_exclude_none=True)
    def pell(req: PellRequest) -> dict:
        try:
            return handle_pell(req.D)
        except InvalidParameterError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/hyper", response_model=CertificateModel, response_model_exclude_none=True)
    def hyper(req: HyperRequest) -> dict:
        return handle_hyper(req.D, req.genus, req.t, req.etas, req.bound)

    @app.post("/plane", response_model=CertificateModel, response_model_exclude_none=True)
    def plane(req: PlaneRequest) -> dict:
        return handle_plane(req.D, req.d, req.t, req.etas, req.bound)

    @app.post("/verify", response_model=VerifyResponse, response_model_exclude_none=True)
    def verify(req: VerifyRequest) -> dict:
        try:
            return handle_verify(req.certificate.model_dump(exclude_none=True))
        except InvalidParameterError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    return app


app = create_app()
