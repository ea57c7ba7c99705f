"""Board states and the blank's dynamics.

A state places one tile per non-blank vertex and gives each a rotation
residue.  Tiles are named by their home vertex, so the solved state reads
``tile_at[v] == v`` with zero rotations.  A move walks the blank across one
edge; the displaced tile lands on the blank's old vertex and gains the
edge's twist (negated against the edge's orientation).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import IllegalMoveError, PathError, StateFormatError
from .graph import Step, TwistGraph, canonical_spanning_tree, step_from_str, tree_path
from .groups import GroupElement
from .topology import ClosedPath, check_closed_path


@dataclass(frozen=True)
class PuzzleState:
    """Immutable snapshot: blank vertex, tile placement, rotations.

    ``tile_at`` maps occupied vertices to tile names (home vertices);
    ``rot`` maps the same vertices to rotation residues in [0, m).
    """

    blank: str
    tile_at: dict[str, str]
    rot: dict[str, int]

    def tile_position(self, tile: str) -> str:
        for v, t in self.tile_at.items():
            if t == tile:
                return v
        raise KeyError(tile)


def check_state(g: TwistGraph, s: PuzzleState) -> None:
    verts = set(g.vertices)
    if s.blank not in verts:
        raise StateFormatError(f"blank {s.blank!r} is not a vertex")
    occupied = verts - {s.blank}
    if set(s.tile_at) != occupied or set(s.rot) != occupied:
        raise StateFormatError("state must cover exactly the non-blank vertices")
    tiles = set(s.tile_at.values())
    if len(tiles) != len(s.tile_at):
        raise StateFormatError("a tile appears twice")
    absent = verts - tiles
    if not tiles <= verts or len(absent) != 1:
        raise StateFormatError("tiles must be every vertex except a single home")
    for v, r in s.rot.items():
        if not isinstance(r, int) or isinstance(r, bool) or not (0 <= r < g.m):
            raise StateFormatError(f"rotation {r!r} at {v!r} outside [0, {g.m})")


def state_home(g: TwistGraph, s: PuzzleState) -> str:
    """The home vertex a state's tiles were named against (the one vertex
    that is nobody's home)."""
    check_state(g, s)
    (home,) = set(g.vertices) - set(s.tile_at.values())
    return home


def solved_state(g: TwistGraph, home: str | None = None) -> PuzzleState:
    home = g.default_home() if home is None else home
    if home not in g.vertices:
        raise StateFormatError(f"home {home!r} is not a vertex")
    others = [v for v in g.vertices if v != home]
    return PuzzleState(home, {v: v for v in others}, {v: 0 for v in others})


def legal_moves(g: TwistGraph, s: PuzzleState) -> list[Step]:
    """Directed traversals available to the blank, in canonical order."""
    moves = []
    for e in g.incident(s.blank):
        moves.append(Step(e.id, 1 if e.tail == s.blank else -1))
    moves.sort(key=lambda st: (st.edge, -st.sign))
    return moves


def apply_move(g: TwistGraph, s: PuzzleState, step: Step) -> PuzzleState:
    frm, to = g.step_endpoints(step)
    if frm != s.blank:
        raise IllegalMoveError(f"move {step} starts at {frm!r}, blank is at {s.blank!r}")
    tile = s.tile_at[to]
    new_tiles = dict(s.tile_at)
    new_rot = dict(s.rot)
    del new_tiles[to], new_rot[to]
    new_tiles[frm] = tile
    new_rot[frm] = (s.rot[to] + g.twist_along(step)) % g.m
    return PuzzleState(to, new_tiles, new_rot)


def apply_moves(g: TwistGraph, s: PuzzleState, steps: Iterable[Step]) -> PuzzleState:
    for st in steps:
        s = apply_move(g, s, st)
    return s


def element_of_path(g: TwistGraph, p: ClosedPath) -> GroupElement:
    """Group element realized by a closed blank tour, over the sites
    V \\ {base}.  Later steps act on the left; the blank returns home with no
    rotation, so the restriction away from the base loses nothing."""
    check_closed_path(g, p)
    verts = sorted(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    sigma = list(range(n))  # accumulated permutation, image indices
    x = [0] * n
    for step in p.steps:
        frm, to = g.step_endpoints(step)
        tw = g.twist_along(step)
        i, j = index[frm], index[to]
        # left-multiply by the single-move element (x_e[frm]=tw, swap frm/to)
        x[i], x[j] = x[j], x[i]
        x[i] = (x[i] + tw) % g.m
        for k in range(n):
            if sigma[k] == i:
                sigma[k] = j
            elif sigma[k] == j:
                sigma[k] = i
    b = index[p.base]
    assert sigma[b] == b and x[b] == 0
    sigma_map = {}
    x_map = {}
    for k, v in enumerate(verts):
        if v == p.base:
            continue
        sigma_map[v] = verts[sigma[k]]
        x_map[v] = x[k]
    return GroupElement.from_maps(g.m, sigma_map, x_map)


def state_element_bridge(g: TwistGraph, s: PuzzleState) -> GroupElement:
    """Read a blank-at-home state as a group element: sigma sends each
    tile's home to its current vertex, x keeps the rotation at each vertex."""
    home = state_home(g, s)
    if s.blank != home:
        raise StateFormatError(f"bridge needs the blank at home {home!r}, found {s.blank!r}")
    sigma = {s.tile_at[v]: v for v in s.tile_at}
    x = dict(s.rot)
    return GroupElement.from_maps(g.m, sigma, x)


def state_from_element(g: TwistGraph, el: GroupElement, home: str | None = None) -> PuzzleState:
    home = g.default_home() if home is None else home
    expected = tuple(sorted(v for v in g.vertices if v != home))
    if el.sites != expected or el.m != g.m:
        raise StateFormatError("element sites/modulus do not match the board")
    sigma = el.sigma_map()
    tile_at = {sigma[t]: t for t in sigma}
    return PuzzleState(home, tile_at, el.x_map())


def transport_blank_home(g: TwistGraph, s: PuzzleState) -> tuple[PuzzleState, list[Step]]:
    """Walk the blank to the state's home along the canonical spanning tree.

    Any two transports differ by a closed tour of the blank, which changes
    the bridged element only within the reachable subgroup, so solvability
    verdicts do not depend on the route; the tree route makes it canonical.
    """
    home = state_home(g, s)
    tree = canonical_spanning_tree(g)
    steps = tree_path(tree, s.blank, home)
    return apply_moves(g, s, steps), steps


def scramble(
    g: TwistGraph, s: PuzzleState, steps: int, seed: int | None = None
) -> tuple[PuzzleState, list[Step]]:
    """Random legal walk of the blank; reproducible for a fixed seed."""
    check_state(g, s)
    rng = random.Random(seed)
    taken = []
    for _ in range(steps):
        options = legal_moves(g, s)
        st = options[rng.randrange(len(options))]
        s = apply_move(g, s, st)
        taken.append(st)
    return s, taken


def gauge_state(g: TwistGraph, s: PuzzleState, psi: Mapping[str, int]) -> PuzzleState:
    """Rewrite a state into the coordinates of ``gauge_transform(g, psi)``:
    rot'[v] = rot[v] + psi[v] - psi[home of the tile at v]."""
    check_state(g, s)
    new_rot = {
        v: (s.rot[v] + psi[v] - psi[s.tile_at[v]]) % g.m for v in s.rot
    }
    return PuzzleState(s.blank, dict(s.tile_at), new_rot)


# -- wire formats ----------------------------------------------------------------

_STATE_KEYS = {"format", "blank", "tiles"}
_TILE_KEYS = {"tile", "at", "rot"}


def state_from_dict(obj: object, g: TwistGraph) -> PuzzleState:
    if not isinstance(obj, dict):
        raise StateFormatError("twiststate document must be a JSON object")
    unknown = set(obj) - _STATE_KEYS
    if unknown:
        raise StateFormatError(f"unknown twiststate keys: {sorted(unknown)}")
    if obj.get("format") != "twiststate/1":
        raise StateFormatError(f"unsupported format {obj.get('format')!r}")
    if "blank" not in obj or "tiles" not in obj or not isinstance(obj["tiles"], list):
        raise StateFormatError("twiststate needs 'blank' and a 'tiles' array")
    tile_at: dict[str, str] = {}
    rot: dict[str, int] = {}
    for entry in obj["tiles"]:
        if not isinstance(entry, dict) or set(entry) != _TILE_KEYS:
            raise StateFormatError(f"bad tile entry {entry!r}")
        at = entry["at"]
        if at in tile_at:
            raise StateFormatError(f"vertex {at!r} occupied twice")
        tile_at[at] = entry["tile"]
        rot[at] = entry["rot"]
    s = PuzzleState(obj["blank"], tile_at, rot)
    check_state(g, s)
    return s


def parse_state(text: str, g: TwistGraph) -> PuzzleState:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON: {exc}") from exc
    return state_from_dict(obj, g)


def state_to_dict(s: PuzzleState) -> dict:
    tiles = [
        {"tile": s.tile_at[v], "at": v, "rot": s.rot[v]} for v in sorted(s.tile_at)
    ]
    return {"format": "twiststate/1", "blank": s.blank, "tiles": tiles}


def serialize_state(s: PuzzleState) -> str:
    return json.dumps(state_to_dict(s), indent=2, sort_keys=True)


def moves_to_list(steps: Iterable[Step]) -> list[str]:
    return [str(s) for s in steps]


def moves_from_list(tokens: Sequence[str], g: TwistGraph) -> list[Step]:
    steps = []
    for tok in tokens:
        st = step_from_str(tok)
        g.edge(st.edge)  # unknown edge -> GraphFormatError
        steps.append(st)
    return steps
