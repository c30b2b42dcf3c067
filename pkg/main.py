#!/usr/bin/env python3
"""
FastAPI server exposing transceiver design, closed-form analysis and small
Monte Carlo sweeps over HTTP.

Matrices are exchanged as nested lists of ``[re, im]`` pairs (row-major).
"""

import asyncio
import logging
import os
from contextlib import asynccontextmanager
from datetime import datetime
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv
from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from blockdfe.analysis import (
    BerCoeffs,
    ClosedFormKind,
    DetectorKind,
    ber_lower_bound,
    closed_form_mse,
    error_covariance,
    gmi,
    mse_report,
)
from blockdfe.channel import ChannelModel, whitened_gram
from blockdfe.config import load_config
from blockdfe.errors import BlockDfeError, InvalidInput, UnknownScenario
from blockdfe.linalg.matrix_core import hermitian_eig
from blockdfe.log import configure_logging
from blockdfe.sim.config import SimConfig
from blockdfe.sim.engine import run_sweep
from blockdfe.sim.presets import scenario_preset
from blockdfe.transceiver.registry import SCHEME_REGISTRY, load_scheme
from blockdfe.transceiver.types import DesignSpec

load_dotenv()
logger = logging.getLogger(__name__)

# =============================================================================
# REQUEST / RESPONSE MODELS
# =============================================================================

MatrixPayload = List[List[List[float]]]


class ChannelPayload(BaseModel):
    """Channel matrix plus either a noise covariance or a white noise variance."""
    H: MatrixPayload
    Rvv: Optional[MatrixPayload] = None
    sigma2: float = Field(default=1.0, gt=0)
    M: int = Field(ge=1)
    p0: float = Field(gt=0)


class DesignRequest(ChannelPayload):
    scheme: str = "OPT_MMSE_BDFD"


class AnalyzeRequest(ChannelPayload):
    b: int = Field(default=1, ge=1, le=8)


class SimulateRequest(BaseModel):
    preset: Optional[str] = None
    config: Optional[Dict[str, Any]] = None
    channels: Optional[int] = Field(default=None, ge=1)
    blocks: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)


# =============================================================================
# MATRIX CONVERSION
# =============================================================================


def matrix_from_payload(rows: MatrixPayload, name: str) -> np.ndarray:
    try:
        a = np.array(rows, dtype=float)
    except ValueError as e:
        raise InvalidInput(f"{name}: ragged matrix payload ({e})") from e
    if a.ndim != 3 or a.shape[2] != 2:
        raise InvalidInput(f"{name}: expected rows of [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def matrix_to_payload(a: np.ndarray) -> MatrixPayload:
    return np.stack([a.real, a.imag], axis=-1).tolist()


def channel_from_payload(req: ChannelPayload) -> ChannelModel:
    H = matrix_from_payload(req.H, "H")
    if req.Rvv is not None:
        return ChannelModel(H=H, Rvv=matrix_from_payload(req.Rvv, "Rvv"))
    return ChannelModel(H=H).with_noise_variance(req.sigma2)


# =============================================================================
# FASTAPI APP SETUP
# =============================================================================


@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup
    app.state.config = load_config()
    configure_logging(app.state.config["runtime_settings"].get("log_level", "INFO"))
    logger.info("blockdfe service started")
    yield
    # Shutdown
    logger.info("blockdfe service shutting down")


app = FastAPI(
    title="blockdfe",
    description="Precoder and block decision-feedback detector design service",
    version="0.1.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(BlockDfeError)
async def blockdfe_error_handler(request: Request, exc: BlockDfeError):
    status = 422 if exc.exit_code == 1 else 400
    return JSONResponse(status_code=status, content={"success": False, "error": f"{type(exc).__name__}: {exc}"})


# =============================================================================
# DEPENDENCY INJECTION
# =============================================================================


def get_server_settings() -> Dict[str, Any]:
    config = getattr(app.state, "config", None) or load_config()
    return config.get("server_settings", {})


# =============================================================================
# API ENDPOINTS
# =============================================================================


@app.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "timestamp": datetime.now().isoformat(), "schemes": list(SCHEME_REGISTRY)}


@app.get("/presets/{name}")
async def get_preset(name: str):
    """Sweep configuration of a named preset."""
    try:
        return scenario_preset(name).model_dump(mode="json")
    except UnknownScenario as e:
        raise HTTPException(status_code=404, detail=str(e))


@app.post("/design")
async def design(req: DesignRequest):
    """Design one transceiver."""
    ch = channel_from_payload(req)
    t = load_scheme(req.scheme).design(ch, DesignSpec(M=req.M, p0=req.p0))
    return {
        "success": True,
        "scheme": req.scheme,
        "kind": t.kind.value,
        "F": matrix_to_payload(t.F),
        "W": matrix_to_payload(t.W),
        "B": matrix_to_payload(t.B),
        "predicted_mse": t.predicted_mse,
        "q_active": t.q_active,
        "power": t.power,
        "notes": list(t.notes),
    }


@app.post("/analyze")
async def analyze(req: AnalyzeRequest):
    """Closed-form MSEs and per-scheme predictions for one channel."""
    ch = channel_from_payload(req)
    spec = DesignSpec(M=req.M, p0=req.p0)
    coeffs = BerCoeffs.from_bits(req.b)
    _, gram = whitened_gram(ch)
    lam = hermitian_eig(gram).values

    closed_form: Dict[str, Optional[float]] = {}
    for kind in ClosedFormKind:
        try:
            closed_form[kind.value] = closed_form_mse(kind, lam[:spec.M], spec)
        except BlockDfeError:
            closed_form[kind.value] = None

    schemes: Dict[str, Any] = {}
    for name in SCHEME_REGISTRY:
        scheme = load_scheme(name)
        try:
            t = scheme.design(ch, spec)
            kind = DetectorKind(scheme.detector_kind)
            rep = mse_report(error_covariance(ch, t), kind)
            bound = ber_lower_bound(rep.arithmetic_mse * spec.M, spec.M, coeffs, kind, per_symbol_snr=True)
            schemes[name] = {
                "success": True,
                "arithmetic_mse": rep.arithmetic_mse,
                "geometric_mse": rep.geometric_mse,
                "sinr": rep.per_element_sinr.tolist(),
                "gmi_bits": gmi(ch, t.F),
                "ber_bound": bound.value,
                "convex_regime": bound.convex_regime,
            }
        except BlockDfeError as e:
            schemes[name] = {"success": False, "error": f"{type(e).__name__}: {e}"}

    return {"eigenvalues": lam.tolist(), "closed_form_mse": closed_form, "schemes": schemes}


@app.post("/simulate")
async def simulate(req: SimulateRequest, settings: Dict[str, Any] = Depends(get_server_settings)):
    """Run a small sweep; channel count is capped by ``server_settings.max_simulation_channels``."""
    if (req.preset is None) == (req.config is None):
        raise InvalidInput("give exactly one of preset or config")
    cfg = scenario_preset(req.preset) if req.preset else SimConfig.from_mapping(req.config)
    cap = int(settings.get("max_simulation_channels", 50))
    channels = min(req.channels or cfg.channels_per_point, cap)
    cfg = cfg.with_overrides(channels_per_point=channels, blocks_per_channel=req.blocks, master_seed=req.seed)

    report = await asyncio.to_thread(run_sweep, cfg)
    return {
        "success": True,
        "channels_per_point": cfg.channels_per_point,
        "rows": [r.as_dict() for r in report.rows],
        "skipped": report.skipped,
    }


if __name__ == "__main__":
    import uvicorn

    server = load_config().get("server_settings", {})
    host = os.environ.get("HOST", server.get("host", "0.0.0.0"))
    port = int(os.environ.get("PORT", server.get("port", 8000)))
    log_level = os.environ.get("LOG_LEVEL", "info")

    uvicorn.run("main:app", host=host, port=port, log_level=log_level)
