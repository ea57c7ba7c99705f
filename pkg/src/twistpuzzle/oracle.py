"""Brute-force ground truth: breadth-first enumeration of every state the
blank's moves can reach, independent of all closed-form classification.

States are packed into mixed-radix integers (placement digits base |V|,
rotation digits base m) so visited-set membership is cheap; the blank is a
phantom tile whose home is the state's home vertex, making every placement a
full permutation of the vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import PuzzleState, state_home
from .graph import TwistGraph
from .groups import GroupElement

DEFAULT_CAP = 5_000_000


class StateCodec:
    """Packs (placement, rotations) tuples for one board into integers.

    ``tiles[i]`` is the vertex-index of the occupant's home, with the blank
    encoded as the home vertex's index; ``rots[i]`` is the occupant's
    rotation (0 for the blank).
    """

    def __init__(self, g: TwistGraph, home: str):
        self.graph = g
        self.home = home
        self.verts = tuple(sorted(g.vertices))
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.home_idx = self.index[home]
        nv = len(self.verts)
        self.m = g.m
        # mixed-radix strides: tiles first, then rotations
        self.rot_stride = [self.m ** i for i in range(nv)]
        base = self.m ** nv
        self.tile_stride = [base * nv ** i for i in range(nv)]
        self.full_space = nv * _factorial(nv - 1) * self.m ** (nv - 1)
        # move table: from blank at index b, (to index, twist gained, step)
        from .dynamics import legal_moves, solved_state

        self.moves_from: list[list[tuple[int, int]]] = []
        for v in self.verts:
            entries = []
            for e in sorted(g.incident(v), key=lambda e: e.id):
                if e.tail == v:
                    entries.append((self.index[e.head], e.twist % g.m))
                else:
                    entries.append((self.index[e.tail], (-e.twist) % g.m))
            self.moves_from.append(entries)

    def encode_state(self, s: PuzzleState) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        """(tiles, rots, blank_index); the state's home must match the codec's."""
        if state_home(self.graph, s) != self.home:
            raise ValueError("state home does not match codec home")
        tiles = [0] * len(self.verts)
        rots = [0] * len(self.verts)
        for v, t in s.tile_at.items():
            tiles[self.index[v]] = self.index[t]
            rots[self.index[v]] = s.rot[v]
        b = self.index[s.blank]
        tiles[b] = self.home_idx
        return tuple(tiles), tuple(rots), b

    def key(self, tiles, rots) -> int:
        k = 0
        nv = len(self.verts)
        ts, rs = self.tile_stride, self.rot_stride
        for i in range(nv):
            k += tiles[i] * ts[i] + rots[i] * rs[i]
        return k

    def decode(self, key: int) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        nv = len(self.verts)
        rots = []
        for _ in range(nv):
            key, r = divmod(key, self.m)
            rots.append(r)
        tiles = []
        for _ in range(nv):
            key, t = divmod(key, nv)
            tiles.append(t)
        blank = tiles.index(self.home_idx)
        return tuple(tiles), tuple(rots), blank

    def to_state(self, key: int) -> PuzzleState:
        tiles, rots, blank = self.decode(key)
        tile_at, rot = {}, {}
        for i, v in enumerate(self.verts):
            if i == blank:
                continue
            tile_at[v] = self.verts[tiles[i]]
            rot[v] = rots[i]
        return PuzzleState(self.verts[blank], tile_at, rot)

    def element_at_home(self, tiles, rots) -> GroupElement:
        """Bridge a blank-at-home packed state to a group element."""
        sigma = {}
        x = {}
        for i, v in enumerate(self.verts):
            if tiles[i] == self.home_idx:
                continue
            sigma[self.verts[tiles[i]]] = v
            x[v] = rots[i]
        return GroupElement.from_maps(self.m, sigma, x)


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


@dataclass(frozen=True)
class ReachableSet:
    """BFS result: packed keys of every reached state, the group elements
    seen with the blank at home, and whether the walk ran to completion."""

    codec: StateCodec
    keys: frozenset[int]
    by_home: frozenset[GroupElement]
    exhausted: bool
    explored: int

    def __contains__(self, s: PuzzleState) -> bool:
        tiles, rots, _ = self.codec.encode_state(s)
        return self.codec.key(tiles, rots) in self.keys

    def blank_position_counts(self) -> dict[str, int]:
        counts = {v: 0 for v in self.codec.verts}
        for k in self.keys:
            _, _, blank = self.codec.decode(k)
            counts[self.codec.verts[blank]] += 1
        return counts


def enumerate_reachable(
    g: TwistGraph, start: PuzzleState, cap: int = DEFAULT_CAP
) -> ReachableSet:
    """All states reachable from ``start``.  Stops early (exhausted=False)
    as soon as the visited set would outgrow ``cap``."""
    home = state_home(g, start)
    codec = StateCodec(g, home)
    tiles0, rots0, b0 = codec.encode_state(start)
    key0 = codec.key(tiles0, rots0)
    m = codec.m
    home_idx = codec.home_idx
    tile_stride = codec.tile_stride
    rot_stride = codec.rot_stride
    moves_from = codec.moves_from

    visited = {key0}
    frontier = [(key0, tiles0, rots0, b0)]
    at_home: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    if b0 == home_idx:
        at_home.append((tiles0, rots0))
    truncated = False

    while frontier and not truncated:
        next_frontier = []
        for key, tiles, rots, b in frontier:
            tb = tiles[b]
            for w, tw in moves_from[b]:
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
                if len(visited) >= cap:
                    truncated = True
                    break
                visited.add(nkey)
                ntiles = list(tiles)
                ntiles[b] = tiles[w]
                ntiles[w] = home_idx
                nrots = list(rots)
                nrots[b] = tw_new
                nrots[w] = 0
                entry = (nkey, tuple(ntiles), tuple(nrots), w)
                next_frontier.append(entry)
                if w == home_idx:
                    at_home.append((entry[1], entry[2]))
            if truncated:
                break
        frontier = next_frontier
    elements = frozenset(codec.element_at_home(t, r) for t, r in at_home)
    return ReachableSet(
        codec=codec,
        keys=frozenset(visited),
        by_home=elements,
        exhausted=not truncated,
        explored=len(visited),
    )


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking the closed-form classification against the
    enumeration.  ``undecided`` means the enumeration could not finish
    within the cap (including the a-priori size bound |V| * order > cap)."""

    agree: bool | None
    undecided: bool
    case: str | None
    claimed_order: int | None
    enumerated_at_home: int | None
    extra: list[GroupElement]
    missing: list[GroupElement]
    reason: str


def verify_classifier(g: TwistGraph, home: str | None = None, cap: int = DEFAULT_CAP) -> VerifyReport:
    """Two-route check: classify, enumerate, compare memberships and counts.

    ``extra`` holds enumerated elements the descriptor rejects (soundness
    failures); ``missing`` is filled only for descriptors with an explicit
    finite element table, otherwise a count mismatch alone flags it.
    """
    from .classifier import classify  # deferred: classifier imports this module
    from .dynamics import solved_state
    from .errors import UndecidedError

    home = g.default_home() if home is None else home
    try:
        desc = classify(g, home, oracle_cap=cap)
    except UndecidedError as exc:
        return VerifyReport(None, True, None, None, None, [], [], f"classification undecided: {exc}")
    bound = desc.order * len(g.vertices)
    if bound > cap:
        return VerifyReport(
            None, True, desc.case, desc.order, None, [], [],
            f"size bound: |V| * order = {bound} exceeds cap {cap}",
        )
    reach = enumerate_reachable(g, solved_state(g, home), cap)
    if not reach.exhausted:
        return VerifyReport(
            None, True, desc.case, desc.order, None, [], [],
            f"enumeration truncated at cap {cap}",
        )
    extra = sorted(
        (el for el in reach.by_home if not desc.accepts_element(el)),
        key=lambda el: (el.sigma, el.x),
    )
    missing: list[GroupElement] = []
    table = desc.elements_in_original_coords()
    if table is not None:
        missing = sorted(
            (el for el in table if el not in reach.by_home),
            key=lambda el: (el.sigma, el.x),
        )
    agree = not extra and not missing and len(reach.by_home) == desc.order
    reason = "enumeration and classification agree" if agree else "mismatch"
    return VerifyReport(
        agree=agree,
        undecided=False,
        case=desc.case,
        claimed_order=desc.order,
        enumerated_at_home=len(reach.by_home),
        extra=extra[:10],
        missing=missing[:10],
        reason=reason,
    )


def verify_report_to_dict(rep: VerifyReport) -> dict:
    from .groups import element_to_dict

    return {
        "agree": rep.agree,
        "undecided": rep.undecided,
        "case": rep.case,
        "claimed_order": str(rep.claimed_order) if rep.claimed_order is not None else None,
        "enumerated_at_home": rep.enumerated_at_home,
        "extra": [element_to_dict(e) for e in rep.extra],
        "missing": [element_to_dict(e) for e in rep.missing],
        "reason": rep.reason,
    }
