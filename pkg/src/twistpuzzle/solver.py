"""Optimal solving by bidirectional breadth-first search.

Solvability is decided first through the classifier, so the search only
runs when a meet is guaranteed to exist; both frontiers share the oracle's
packed-state encoding.  The returned move list is minimal: the search stops
only once no undiscovered meeting point could beat the best one found.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import GroupDescriptor, is_solvable
from .dynamics import PuzzleState, apply_move, solved_state, state_home
from .errors import IllegalMoveError, UndecidedError
from .graph import Step, TwistGraph
from .oracle import DEFAULT_CAP, StateCodec

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
CAP_EXCEEDED = "cap_exceeded"


@dataclass(frozen=True)
class SolveResult:
    status: str  # solved | unsolvable | cap_exceeded
    moves: list[Step] | None

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def _expand(codec: StateCodec, frontier, visited, other, steps_of):
    """Advance one BFS level; returns (new frontier, meet keys)."""
    meets = []
    nxt = []
    m = codec.m
    home_idx = codec.home_idx
    tile_stride, rot_stride = codec.tile_stride, codec.rot_stride
    moves_from = codec.moves_from
    for key, tiles, rots, b in frontier:
        tb = tiles[b]
        for mv, (w, tw) in enumerate(moves_from[b]):
            tw_new = rots[w] + tw
            if tw_new >= m:
                tw_new -= m
            nkey = (
                key
                + (tiles[w] - tb) * tile_stride[b]
                + (home_idx - tiles[w]) * tile_stride[w]
                + tw_new * rot_stride[b]
                - rots[w] * rot_stride[w]
            )
            if nkey in visited:
                continue
            visited[nkey] = (key, steps_of[b][mv])
            ntiles = list(tiles)
            ntiles[b] = tiles[w]
            ntiles[w] = home_idx
            nrots = list(rots)
            nrots[b] = tw_new
            nrots[w] = 0
            nxt.append((nkey, tuple(ntiles), tuple(nrots), w))
            if nkey in other:
                meets.append(nkey)
    return nxt, meets


def _chain(visited, key, start_key) -> list[tuple[int, Step]]:
    out = []
    while key != start_key:
        pkey, step = visited[key]
        out.append((key, step))
        key = pkey
    out.reverse()
    return out


def solve(
    g: TwistGraph,
    s: PuzzleState,
    cap: int = DEFAULT_CAP,
    descriptor: GroupDescriptor | None = None,
) -> SolveResult:
    """Minimal move sequence from ``s`` to the solved state, if one exists."""
    home = state_home(g, s)
    try:
        if not is_solvable(g, s, descriptor, oracle_cap=cap):
            return SolveResult(UNSOLVABLE, None)
    except UndecidedError:
        return SolveResult(CAP_EXCEEDED, None)
    codec = StateCodec(g, home)
    steps_of = []
    for v in codec.verts:
        entries = []
        for e in sorted(g.incident(v), key=lambda e: e.id):
            entries.append(Step(e.id, 1 if e.tail == v else -1))
        steps_of.append(entries)

    tiles0, rots0, b0 = codec.encode_state(s)
    key_start = codec.key(tiles0, rots0)
    goal = solved_state(g, home)
    tiles1, rots1, b1 = codec.encode_state(goal)
    key_goal = codec.key(tiles1, rots1)
    if key_start == key_goal:
        return SolveResult(SOLVED, [])

    fwd = {key_start: None}
    bwd = {key_goal: None}
    ffront = [(key_start, tiles0, rots0, b0)]
    bfront = [(key_goal, tiles1, rots1, b1)]
    fdepth = bdepth = 0
    depth_f = {key_start: 0}
    depth_b = {key_goal: 0}
    best: tuple[int, int] | None = None  # (total length, meet key)

    while ffront and bfront:
        if len(fwd) + len(bwd) > cap:
            return SolveResult(CAP_EXCEEDED, None)
        if len(ffront) <= len(bfront):
            ffront, meets = _expand(codec, ffront, fwd, bwd, steps_of)
            fdepth += 1
            for entry in ffront:
                depth_f[entry[0]] = fdepth
        else:
            bfront, meets = _expand(codec, bfront, bwd, fwd, steps_of)
            bdepth += 1
            for entry in bfront:
                depth_b[entry[0]] = bdepth
        for k in meets:
            total = depth_f[k] + depth_b[k]
            if best is None or (total, k) < best:
                best = (total, k)
        # any undiscovered meet costs more than fdepth + bdepth
        if best is not None and best[0] <= fdepth + bdepth:
            break

    if best is None:
        # solvability said yes, so only the cap can stop the meet
        return SolveResult(CAP_EXCEEDED, None)
    meet = best[1]
    forward_part = [step for _, step in _chain(fwd, meet, key_start)]
    backward_part = [step.reversed() for _, step in reversed(_chain(bwd, meet, key_goal))]
    return SolveResult(SOLVED, forward_part + backward_part)


def verify_solution(g: TwistGraph, s: PuzzleState, moves: list[Step]) -> bool:
    """Replay ``moves`` from ``s``: every move legal and the end state solved."""
    home = state_home(g, s)
    cur = s
    try:
        for st in moves:
            cur = apply_move(g, cur, st)
    except IllegalMoveError:
        return False
    return cur == solved_state(g, home)
