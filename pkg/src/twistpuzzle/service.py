"""Stateless HTTP facade over the engine.

Clients round-trip full board and state documents on every request; the
server keeps no sessions, so identical request bodies always produce
identical responses.  Malformed or invariant-violating payloads get 400,
an illegal move gets 422, and answers that would need more enumeration
than the cap come back 200 with ``{"undecided": true}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .classifier import classify, descriptor_to_dict, is_solvable
from .dynamics import (
    apply_move,
    legal_moves,
    moves_to_list,
    scramble,
    solved_state,
    state_from_dict,
    state_home,
    state_to_dict,
)
from .errors import IllegalMoveError, PuzzleError, UndecidedError
from .graph import TwistGraph, graph_from_dict, graph_to_dict, step_from_str
from .presets import preset
from .solver import solve

app = FastAPI(title="twistpuzzle", version="0.1.0")
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(RequestValidationError)
async def _bad_body(request: Request, exc: RequestValidationError):
    return JSONResponse(status_code=400, content={"detail": "malformed request body"})


@app.exception_handler(json.JSONDecodeError)
async def _bad_json(request: Request, exc: json.JSONDecodeError):
    return JSONResponse(status_code=400, content={"detail": "request body is not JSON"})


def _graph_of(payload: dict) -> TwistGraph:
    try:
        return graph_from_dict(payload.get("graph"))
    except (PuzzleError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"bad graph: {exc}")


def _state_of(payload: dict, g: TwistGraph):
    try:
        return state_from_dict(payload.get("state"), g)
    except (PuzzleError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"bad state: {exc}")


# Boards offered to fresh clients.  The twist choices pick instances whose
# groups land in distinct classification cases, so the demo set covers the
# whole case table.
_PRESET_MENU = (
    ("fifteen_plus_four", {}, "15 + 4 rotating tiles"),
    ("theta5", {"m": 3, "twists": {"e1": 1, "e2": 1, "e4": 1}}, "theta board, 5 sites"),
    ("theta7", {"m": 2, "twists": {"einfc": 1}}, "theta board, 7 sites"),
    ("figure8", {}, "two loops sharing a corner"),
    ("k4", {"m": 2, "twists": {"e12": 1}}, "complete graph on 4 sites"),
    ("k33", {"m": 3, "twists": {"a1b1": 1}}, "complete bipartite 3x3"),
    ("cycle:6", {"m": 3, "twists": {"e0": 1}}, "six-site cycle"),
    ("grid:3x3", {}, "eight puzzle"),
    ("grid:4x4", {}, "fifteen puzzle"),
    ("hyperbolic29", {}, "29 tiles, order-5 squares"),
    ("continental_drift", {}, "dodecahedral drift"),
)


@app.get("/api/presets")
def get_presets() -> dict:
    entries = []
    for name, kwargs, title in _PRESET_MENU:
        g = preset(name, **kwargs)
        entries.append(
            {
                "name": name,
                "title": title,
                "graph": graph_to_dict(g),
                "state": state_to_dict(solved_state(g)),
            }
        )
    return {"presets": entries}


@app.post("/api/classify")
def post_classify(payload: dict) -> dict:
    g = _graph_of(payload)
    try:
        desc = classify(g, payload.get("home"))
    except PuzzleError as exc:
        if isinstance(exc, UndecidedError):
            return {"undecided": True, "reason": str(exc)}
        raise HTTPException(status_code=400, detail=str(exc))
    doc = descriptor_to_dict(desc)
    doc["undecided"] = False
    return doc


@app.post("/api/moves")
def post_moves(payload: dict) -> dict:
    g = _graph_of(payload)
    s = _state_of(payload, g)
    moves = []
    for st in legal_moves(g, s):
        e = g.edge(st.edge)
        moves.append({"move": str(st), "edge": e.id, "to": e.head if st.sign > 0 else e.tail})
    return {"moves": moves}


@app.post("/api/apply")
def post_apply(payload: dict) -> dict:
    g = _graph_of(payload)
    s = _state_of(payload, g)
    try:
        st = step_from_str(str(payload.get("move")))
        out = apply_move(g, s, st)
    except IllegalMoveError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    except (PuzzleError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=f"bad move: {exc}")
    return {"state": state_to_dict(out)}


@app.post("/api/check")
def post_check(payload: dict) -> dict:
    g = _graph_of(payload)
    s = _state_of(payload, g)
    try:
        desc = classify(g, state_home(g, s))
        ok = is_solvable(g, s, desc)
    except UndecidedError as exc:
        return {"undecided": True, "solvable": None, "reason": str(exc)}
    return {
        "undecided": False,
        "solvable": ok,
        "case": desc.case,
        "order": str(desc.order),
        "certificates": desc.certificates,
    }


@app.post("/api/solve")
def post_solve(payload: dict) -> dict:
    g = _graph_of(payload)
    s = _state_of(payload, g)
    kwargs = {}
    if payload.get("cap") is not None:
        try:
            kwargs["cap"] = int(payload["cap"])
        except (TypeError, ValueError):
            raise HTTPException(status_code=400, detail="cap must be an integer")
    res = solve(g, s, **kwargs)
    if res.status == "cap_exceeded":
        return {"undecided": True, "status": res.status, "moves": None, "length": None}
    return {
        "undecided": False,
        "status": res.status,
        "moves": moves_to_list(res.moves) if res.moves is not None else None,
        "length": len(res.moves) if res.moves is not None else None,
    }


@app.post("/api/scramble")
def post_scramble(payload: dict) -> dict:
    g = _graph_of(payload)
    s = _state_of(payload, g)
    try:
        steps = int(payload.get("steps", 25))
        seed = int(payload.get("seed", 0))
    except (TypeError, ValueError):
        raise HTTPException(status_code=400, detail="steps and seed must be integers")
    if steps < 0 or steps > 100_000:
        raise HTTPException(status_code=400, detail="steps out of range")
    out, taken = scramble(g, s, steps, seed=seed)
    return {"state": state_to_dict(out), "moves": moves_to_list(taken)}


# When the web client has been built, serve it from the same origin.
_dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
if _dist.is_dir():  # pragma: no cover - depends on the checkout
    from fastapi.staticfiles import StaticFiles

    app.mount("/", StaticFiles(directory=str(_dist), html=True), name="ui")
