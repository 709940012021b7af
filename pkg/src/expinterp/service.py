"""HTTP editing service for shape models.

Sessions hold one model each plus an undo stack.  All responses are
serialized with sorted keys and shortest round-trip floats, so identical
states produce byte-identical bodies.  Mutations take a per-session lock;
concurrent edits serialize instead of interleaving.
"""

from __future__ import annotations

import json
import threading
import uuid
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .errors import (
    DegenerateFrame,
    ExpSplineError,
    IndexOutOfRange,
    NotSymmetric,
    OddFactor,
    OrderTooLow,
    ReproductionConditionViolated,
    SingularSystem,
    UnknownShape,
)
from .interpolator import RieszBounds, estimate_riesz_bounds
from .modelio import to_document
from .presets import PRESET_NAMES, preset_domain, preset_shape
from .shapes import (
    ShapeModel,
    dirty_window,
    move_control_point,
    refine_model,
    tessellate,
)

UNDO_DEPTH = 50

_ERROR_STATUS = {
    "unknown_session": 404,
    "unknown_shape": 404,
    "index_out_of_range": 404,
    "nothing_to_undo": 409,
}


class ApiError(Exception):
    """Service-level error carrying a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = _ERROR_STATUS.get(code, 422)


_EXC_CODES = [
    (UnknownShape, "unknown_shape"),
    (IndexOutOfRange, "index_out_of_range"),
    (OddFactor, "odd_factor"),
    (OrderTooLow, "order_too_low"),
    (NotSymmetric, "not_symmetric"),
    (SingularSystem, "singular_system"),
    (DegenerateFrame, "degenerate_frame"),
    (ReproductionConditionViolated, "reproduction_condition_violated"),
]


def _to_api_error(exc: Exception) -> ApiError:
    for etype, code in _EXC_CODES:
        if isinstance(exc, etype):
            return ApiError(code, str(exc))
    if isinstance(exc, (ValueError, TypeError, KeyError)):
        return ApiError("invalid_request", str(exc))
    raise exc


@dataclass
class Session:
    id: str
    model: ShapeModel
    undo: deque = field(default_factory=lambda: deque(maxlen=UNDO_DEPTH))
    lock: threading.Lock = field(default_factory=threading.Lock)
    revision: int = 0


class SessionStore:
    """In-memory session registry with optional JSON snapshots on disk."""

    def __init__(self, snapshot_dir: str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self.snapshot_dir = Path(snapshot_dir) if snapshot_dir else None
        if self.snapshot_dir:
            self.snapshot_dir.mkdir(parents=True, exist_ok=True)

    def create(self, model: ShapeModel) -> Session:
        sid = uuid.uuid4().hex
        session = Session(id=sid, model=model)
        with self._lock:
            self._sessions[sid] = session
        self._snapshot(session)
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None:
            raise ApiError("unknown_session", f"no session {sid!r}")
        return session

    def _snapshot(self, session: Session) -> None:
        if not self.snapshot_dir:
            return
        path = self.snapshot_dir / f"{session.id}.json"
        payload = {"revision": session.revision, "document": to_document(session.model)}
        path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")))

    def mutate(self, sid: str, fn) -> Session:
        """Apply ``fn(model) -> model`` under the session lock, keeping undo."""
        session = self.get(sid)
        with session.lock:
            new_model = fn(session.model)
            session.undo.append(session.model)
            session.model = new_model
            session.revision += 1
        self._snapshot(session)
        return session

    def undo(self, sid: str) -> Session:
        session = self.get(sid)
        with session.lock:
            if not session.undo:
                raise ApiError("nothing_to_undo", "undo stack is empty")
            session.model = session.undo.pop()
            session.revision += 1
        self._snapshot(session)
        return session


_riesz_cache: dict = {}


def _axis_riesz(axis) -> RieszBounds:
    key = axis.roots
    if key not in _riesz_cache:
        _riesz_cache[key] = estimate_riesz_bounds(axis.interp)
    return _riesz_cache[key]


def _analysis(model: ShapeModel) -> list[dict]:
    out = []
    for axis in model.axes:
        riesz = _axis_riesz(axis)
        out.append(
            {
                "lambda": np.asarray(axis.interp.lam.one_sided(), dtype=float).tolist(),
                "condition_number": float(axis.interp.condition_number),
                "riesz": {
                    "lower": float(riesz.lower),
                    "upper": float(riesz.upper),
                    "grid_size": riesz.grid_size,
                },
            }
        )
    return out


def _session_payload(session: Session, **extra) -> dict:
    payload = {
        "session_id": session.id,
        "revision": session.revision,
        "undo_depth": len(session.undo),
        "document": to_document(session.model),
        "analysis": _analysis(session.model),
        "domain": [list(d) for d in preset_domain(session.model)],
    }
    payload.update(extra)
    return payload


def _json_response(payload: dict, status: int = 200) -> Response:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return Response(content=body, status_code=status, media_type="application/json")


def _error_response(err: ApiError) -> Response:
    return _json_response(
        {"error": {"code": err.code, "message": err.message}}, status=err.status
    )


def _parse_index(raw: str, model: ShapeModel):
    try:
        if "," in raw:
            parts = [int(p) for p in raw.split(",")]
            if len(parts) != model.dims:
                raise ValueError
            return tuple(parts)
        flat = int(raw)
    except ValueError:
        raise ApiError("invalid_request", f"bad point index {raw!r}")
    if model.dims == 1:
        return flat
    shape = model.net.points.shape[:-1]
    if not 0 <= flat < shape[0] * shape[1]:
        raise ApiError(
            "index_out_of_range", f"flat index {flat} outside net of shape {shape}"
        )
    return (flat // shape[1], flat % shape[1])


def create_app(snapshot_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="expinterp", docs_url=None, redoc_url=None)
    # browser editors are served from elsewhere; the API itself is the
    # only access control surface, so any origin may call it
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(snapshot_dir)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def on_api_error(request: Request, exc: ApiError):
        return _error_response(exc)

    @app.exception_handler(ExpSplineError)
    async def on_spline_error(request: Request, exc: ExpSplineError):
        return _error_response(_to_api_error(exc))

    @app.get("/presets")
    async def list_presets():
        return _json_response({"presets": list(PRESET_NAMES)})

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        name = body.get("preset")
        if not isinstance(name, str):
            raise ApiError("invalid_request", "body must include a preset name")
        params = body.get("params") or {}
        if not isinstance(params, dict):
            raise ApiError("invalid_request", "params must be an object")
        try:
            model = preset_shape(name, **params)
        except (ExpSplineError, ValueError, TypeError) as exc:
            raise _to_api_error(exc)
        session = store.create(model)
        return _json_response(_session_payload(session), status=201)

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return _json_response(_session_payload(store.get(sid)))

    @app.patch("/sessions/{sid}/points/{index}")
    async def patch_point(sid: str, index: str, request: Request):
        body = await request.json()
        pos = body.get("position")
        if not isinstance(pos, list):
            raise ApiError("invalid_request", "body must include a position array")
        session = store.get(sid)
        idx = _parse_index(index, session.model)
        try:
            session = store.mutate(
                sid, lambda m: move_control_point(m, idx, np.asarray(pos, dtype=float))
            )
        except (ExpSplineError, ValueError) as exc:
            raise _to_api_error(exc)
        dirty = dirty_window(session.model, idx)
        return _json_response(
            _session_payload(session, dirty=[list(w) for w in dirty])
        )

    @app.post("/sessions/{sid}/refine")
    async def refine_session(sid: str, request: Request):
        body = await request.json()
        factor = body.get("factor", 2)
        if not isinstance(factor, int) or isinstance(factor, bool):
            raise ApiError("invalid_request", "factor must be an integer")
        try:
            session = store.mutate(sid, lambda m: refine_model(m, factor))
        except (ExpSplineError, ValueError) as exc:
            raise _to_api_error(exc)
        return _json_response(_session_payload(session))

    @app.get("/sessions/{sid}/mesh")
    async def mesh(sid: str, samples: int = 8):
        session = store.get(sid)
        if samples < 1 or samples > 64:
            raise ApiError("invalid_request", "samples must be between 1 and 64")
        with session.lock:
            model = session.model
            revision = session.revision
        data = tessellate(model, samples)
        payload: dict = {
            "session_id": session.id,
            "revision": revision,
            "vertices": np.asarray(data["vertices"], dtype=float).tolist(),
        }
        if "faces" in data:
            payload["faces"] = np.asarray(data["faces"], dtype=int).tolist()
            payload["grid_shape"] = list(data["grid_shape"])
        else:
            payload["closed"] = bool(data["closed"])
        return _json_response(payload)

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        return _json_response(_session_payload(store.undo(sid)))

    return app


app = create_app()
