"""JSON-over-HTTP facade for the pool analytics engine.

Endpoints live under /api/v1 and wrap the library one to one: il,
profile, depth, table, and simulate as POST, plus a GET health probe.
Request bodies are parsed and validated by hand so that a malformed
body maps to 400, a parameter outside its domain maps to 422 naming
the offending field, and an oversized simulation path maps to 413;
only an internal numeric failure may produce a 500.  Responses are a
pure function of the request body: the envelope echoes request_id and
carries the engine version, a warnings list, and the result payload.

Floats are emitted with shortest round-trip decimal representation,
so a client that parses them into IEEE binary64 recovers the exact
bits the engine produced.  Non-finite values (the open upper price
bound) are mapped to null, keeping every payload strict JSON.
"""

from __future__ import annotations

import json
import math
import re
import time
from typing import Any

import numpy as np
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from ._serialize import jsonable
from .concentrated import Convention, PriceRange, RangePosition, position_reserves
from .core import PoolState
from .depth import Side, depth_ladder
from .errors import InvalidParameter, NumericalFailure, PoolMathError
from .il import default_price_grid, il_point, il_table, preset_table, risk_profile
from .sim import ArbModel, PricePath, gbm_path, simulate

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8787
MAX_PATH_STEPS = 100_000
MAX_GRID_POINTS = 100_000

_QUADRATIC_CLAMP_WARNING = (
    "quadratic convention queried outside [p_low, p_high]; "
    "price was clamped to the nearest band edge"
)


class ServiceError(Exception):
    """Request failure with an explicit HTTP status (400 malformed, 413 too large)."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code


def _error_code(exc: PoolMathError) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


async def _read_body(request: Request) -> dict:
    raw = await request.body()
    try:
        body = json.loads(raw)
    except (UnicodeDecodeError, ValueError) as exc:
        raise ServiceError(400, "malformed_body", f"body is not valid JSON: {exc}")
    if not isinstance(body, dict):
        raise ServiceError(400, "malformed_body", "body must be a JSON object")
    return body


def _as_number(value: Any, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidParameter(f"{field} must be a number")
    return float(value)


def _as_int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParameter(f"{field} must be an integer")
    return value


def _require(body: dict, field: str) -> Any:
    if field not in body or body[field] is None:
        raise InvalidParameter(f"missing required field: {field}")
    return body[field]


def _number_list(value: Any, field: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise InvalidParameter(f"{field} must be a non-empty array of numbers")
    return [_as_number(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _parse_convention(value: Any, field: str) -> Convention:
    if isinstance(value, str):
        try:
            return Convention(value)
        except ValueError:
            pass
    names = ", ".join(repr(c.value) for c in Convention)
    raise InvalidParameter(f"{field} must be one of {names}")


def _parse_position(spec: Any, field: str = "position") -> RangePosition:
    if not isinstance(spec, dict):
        raise InvalidParameter(f"{field} must be an object")
    kind = spec.get("kind")
    if kind is None:
        kind = "range" if "p_low" in spec or "p_high" in spec else "v2"
    if kind not in ("v2", "range"):
        raise InvalidParameter(f"{field}.kind must be 'v2' or 'range'")
    sqrt_k = _as_number(spec.get("sqrt_k", 1.0), f"{field}.sqrt_k")
    convention = _parse_convention(spec.get("convention", "virtual"), f"{field}.convention")
    if kind == "v2":
        return RangePosition(sqrt_k, PriceRange.full(), convention)
    low = spec.get("p_low", 0.0)
    p_low = 0.0 if low is None else _as_number(low, f"{field}.p_low")
    high = spec.get("p_high")
    p_high = math.inf if high is None else _as_number(high, f"{field}.p_high")
    return RangePosition(sqrt_k, PriceRange(p_low, p_high), convention)


def _clamp_warnings(position: RangePosition, prices) -> list[str]:
    # the quadratic form is only defined on the band; out-of-band queries
    # are answered from the clamped edge and flagged
    if position.convention is not Convention.QUADRATIC:
        return []
    if all(position.bounds.contains(float(p)) for p in prices):
        return []
    return [_QUADRATIC_CLAMP_WARNING]


def _respond(body: dict, result: Any, warnings: list[str] | None = None) -> JSONResponse:
    request_id = body.get("request_id")
    if request_id is not None and not isinstance(request_id, (str, int)):
        raise InvalidParameter("request_id must be a string or integer")
    return JSONResponse(
        {
            "request_id": request_id,
            "engine_version": __version__,
            "warnings": list(warnings or []),
            "result": jsonable(result),
        }
    )


def _parse_grid(spec: Any, p0: float) -> np.ndarray:
    if spec is None:
        return default_price_grid(p0)
    if isinstance(spec, list):
        return np.asarray(_number_list(spec, "grid"))
    if not isinstance(spec, dict):
        raise InvalidParameter("grid must be an object or an array of prices")
    if "values" in spec:
        return np.asarray(_number_list(spec["values"], "grid.values"))
    kind = spec.get("kind")
    lo = _as_number(_require(spec, "lo"), "grid.lo")
    hi = _as_number(_require(spec, "hi"), "grid.hi")
    n = _as_int(_require(spec, "n"), "grid.n")
    if n < 1 or n > MAX_GRID_POINTS:
        raise InvalidParameter(f"grid.n must be in [1, {MAX_GRID_POINTS}], got {n}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0.0 or hi < lo:
        raise InvalidParameter("grid bounds must satisfy 0 < lo <= hi < inf")
    if kind == "log":
        return np.geomspace(lo, hi, n)
    if kind == "lin":
        return np.linspace(lo, hi, n)
    raise InvalidParameter("grid.kind must be 'log' or 'lin'")


def _parse_path(body: dict) -> PricePath:
    spec = body.get("path")
    gbm = body.get("gbm")
    if (spec is None) == (gbm is None):
        raise InvalidParameter("exactly one of 'path' or 'gbm' is required")
    if gbm is not None:
        if not isinstance(gbm, dict):
            raise InvalidParameter("gbm must be an object")
        n_steps = _as_int(_require(gbm, "n_steps"), "gbm.n_steps")
        if n_steps > MAX_PATH_STEPS:
            raise ServiceError(
                413, "path_too_long", f"gbm.n_steps exceeds the cap of {MAX_PATH_STEPS}"
            )
        dt = gbm.get("dt")
        seed = gbm.get("seed")
        if seed is not None:
            seed = _as_int(seed, "gbm.seed")
        return gbm_path(
            _as_number(_require(gbm, "p0"), "gbm.p0"),
            _as_number(gbm.get("mu", 0.0), "gbm.mu"),
            _as_number(_require(gbm, "sigma"), "gbm.sigma"),
            n_steps,
            dt=1.0 / 52.0 if dt is None else _as_number(dt, "gbm.dt"),
            seed=seed,
        )
    if isinstance(spec, list):
        spec = {"prices": spec}
    if not isinstance(spec, dict):
        raise InvalidParameter("path must be an object or an array of prices")
    prices = _number_list(_require(spec, "prices"), "path.prices")
    if len(prices) - 1 > MAX_PATH_STEPS:
        raise ServiceError(
            413, "path_too_long", f"path length exceeds the cap of {MAX_PATH_STEPS} steps"
        )
    stamps = spec.get("timestamps")
    if stamps is None:
        return PricePath.from_prices(prices)
    return PricePath(
        np.asarray(_number_list(stamps, "path.timestamps")), np.asarray(prices)
    )


def _handle_il(body: dict) -> JSONResponse:
    kind = body.get("kind")
    if kind is None:
        kind = "v2" if "R" in body else "range"
    if kind == "v2":
        point = il_point(_as_number(_require(body, "R"), "R"))
        return _respond(
            body,
            {
                "kind": "v2",
                "ratio": point.ratio,
                "epsilon_paper": point.epsilon_paper,
                "epsilon_common": point.epsilon_common,
            },
        )
    if kind != "range":
        raise InvalidParameter("kind must be 'v2' or 'range'")
    position = _parse_position(body, field="request")
    p0 = _as_number(_require(body, "P0"), "P0")
    p1 = _as_number(_require(body, "P1"), "P1")
    x0, y0 = position_reserves(position, p0)
    x1, y1 = position_reserves(position, p1)
    v0 = x0 + p0 * y0
    v_hold = x0 + p1 * y0
    gap = x1 + p1 * y1 - v_hold
    result = {
        "kind": "range",
        "p_low": position.bounds.p_low,
        "p_high": position.bounds.p_high,
        "P0": p0,
        "P1": p1,
        "epsilon_paper": gap / v0,
        "epsilon_common": gap / v_hold,
    }
    return _respond(body, result, _clamp_warnings(position, (p0, p1)))


def _handle_profile(body: dict) -> JSONResponse:
    position = _parse_position(_require(body, "position"))
    p0 = _as_number(_require(body, "p0" if "p0" in body else "P0"), "p0")
    grid = _parse_grid(body.get("grid"), p0)
    curve = risk_profile(position, p0, grid)
    result = {
        "p0": curve.p0,
        "v0": curve.v0,
        "price": curve.price,
        "v_lp": curve.v_lp,
        "v_hold": curve.v_hold,
        "il_paper": curve.il_paper,
        "il_common": curve.il_common,
    }
    return _respond(body, result, _clamp_warnings(position, curve.price))


def _handle_depth(body: dict) -> JSONResponse:
    pool = body.get("pool")
    if pool is not None:
        if not isinstance(pool, dict):
            raise InvalidParameter("pool must be an object")
        source: PoolState | RangePosition = PoolState(
            _as_number(_require(pool, "x"), "pool.x"),
            _as_number(_require(pool, "y"), "pool.y"),
        )
    else:
        source = _parse_position(_require(body, "position"))
    side_raw = body.get("side", "asks")
    try:
        side = Side(side_raw) if isinstance(side_raw, str) else None
    except ValueError:
        side = None
    if side is None:
        raise InvalidParameter("side must be 'asks' or 'bids'")
    price = body.get("price")
    ladder = depth_ladder(
        source,
        _as_number(_require(body, "bucket"), "bucket"),
        _as_int(body.get("levels", 10), "levels"),
        side,
        price=None if price is None else _as_number(price, "price"),
        fee_rate=_as_number(body.get("fee_rate", 0.0), "fee_rate"),
    )
    warnings = []
    if isinstance(source, RangePosition) and price is not None:
        warnings = _clamp_warnings(source, (float(price),))
    result = {
        "side": ladder.side,
        "bucket": ladder.bucket,
        "avg_price": ladder.avg_price,
        "marginal_price": ladder.marginal_price,
        "quantity": ladder.quantity,
        "cumulative_cost": ladder.cumulative_cost,
    }
    return _respond(body, result, warnings)


def _handle_table(body: dict) -> JSONResponse:
    p0 = _as_number(body.get("p0", 1.0), "p0")
    sqrt_k = _as_number(body.get("sqrt_k", 1.0), "sqrt_k")
    preset = body.get("preset")
    if preset is not None:
        if not isinstance(preset, str):
            raise InvalidParameter("preset must be a string")
        table = preset_table(preset, p0=p0, sqrt_k=sqrt_k)
    else:
        raw_ranges = _require(body, "ranges")
        if not isinstance(raw_ranges, list) or not raw_ranges:
            raise InvalidParameter("ranges must be a non-empty array of [p_low, p_high] pairs")
        ranges = []
        for i, pair in enumerate(raw_ranges):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InvalidParameter(f"ranges[{i}] must be a [p_low, p_high] pair")
            lo = _as_number(pair[0], f"ranges[{i}][0]")
            hi = math.inf if pair[1] is None else _as_number(pair[1], f"ranges[{i}][1]")
            ranges.append((lo, hi))
        moves = _number_list(_require(body, "moves"), "moves")
        convention = _parse_convention(body.get("convention", "virtual"), "convention")
        table = il_table(ranges, moves, p0=p0, sqrt_k=sqrt_k, convention=convention)
    result = {
        "p0": table.p0,
        "ranges": list(table.ranges),
        "moves": list(table.moves),
        "cells": table.cells,
        "text": table.render_text(),
    }
    return _respond(body, result)


def _handle_simulate(body: dict) -> JSONResponse:
    position = _parse_position(_require(body, "position"))
    path = _parse_path(body)
    arb_raw = body.get("arb", ArbModel.FULL_CONVERGENCE.value)
    try:
        arb = ArbModel(arb_raw) if isinstance(arb_raw, str) else None
    except ValueError:
        arb = None
    if arb is None:
        names = ", ".join(repr(a.value) for a in ArbModel)
        raise InvalidParameter(f"arb must be one of {names}")
    want_trace = body.get("trace", False)
    if not isinstance(want_trace, bool):
        raise InvalidParameter("trace must be a boolean")
    res = simulate(
        position,
        path,
        fee_rate=_as_number(body.get("fee_rate", 0.0), "fee_rate"),
        arb=arb,
        record_trace=want_trace,
    )
    result = {
        "p0": res.p0,
        "mark_price": res.mark_price,
        "x": res.x,
        "y": res.y,
        "fees_x": res.fees_x,
        "fees_y": res.fees_y,
        "fees_collected": res.fees_collected,
        "v0": res.v0,
        "pnl_total": res.pnl_total,
        "pnl_hold": res.pnl_hold,
        "pnl_il": res.pnl_il,
        "pnl_fees": res.pnl_fees,
    }
    if want_trace:
        result["trace"] = res.trace
    return _respond(body, result)


_HANDLERS = {
    "il": _handle_il,
    "profile": _handle_profile,
    "depth": _handle_depth,
    "table": _handle_table,
    "simulate": _handle_simulate,
}


def create_app(static_dir: str | None = None) -> FastAPI:
    """Build the service; optionally serve a static UI bundle at the root."""
    app = FastAPI(title="poolmath", version=__version__, docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    started = time.monotonic()

    @app.exception_handler(ServiceError)
    async def on_service_error(request: Request, exc: ServiceError):
        return JSONResponse(
            {"error": {"code": exc.code, "message": str(exc)}}, status_code=exc.status
        )

    @app.exception_handler(PoolMathError)
    async def on_domain_error(request: Request, exc: PoolMathError):
        status = 500 if isinstance(exc, NumericalFailure) else 422
        return JSONResponse(
            {"error": {"code": _error_code(exc), "message": str(exc)}}, status_code=status
        )

    def register(name: str, handler) -> None:
        async def endpoint(request: Request) -> JSONResponse:
            return handler(await _read_body(request))

        app.post(f"/api/v1/{name}", name=name)(endpoint)

    for name, handler in _HANDLERS.items():
        register(name, handler)

    @app.get("/api/v1/health")
    async def health() -> JSONResponse:
        return JSONResponse(
            {
                "status": "ok",
                "version": __version__,
                "uptime_seconds": time.monotonic() - started,
            }
        )

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


app = create_app()
