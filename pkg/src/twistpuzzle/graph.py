"""Twist graphs: connected loop-free multigraphs whose oriented edges carry
rotation residues ("twists") in Z/mZ, with reversal negating the twist.

The JSON wire format is ``twistgraph/1``:

    {"format": "twistgraph/1", "m": 4, "home": "a",
     "vertices": [{"id": "a", "x": 0.0, "y": 0.0}, ...],
     "edges": [{"id": "e1", "tail": "a", "head": "b", "twist": 1}, ...]}

``x``/``y`` and ``home`` are optional; every other key is mandatory and
unknown keys are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Iterable, Mapping, NamedTuple

from .errors import GraphFormatError


class Edge(NamedTuple):
    id: str
    tail: str
    head: str
    twist: int


class Step(NamedTuple):
    """One directed traversal of an edge: sign +1 follows tail->head."""

    edge: str
    sign: int

    def reversed(self) -> "Step":
        return Step(self.edge, -self.sign)

    def __str__(self) -> str:
        return self.edge + ("+" if self.sign > 0 else "-")


def step_from_str(text: str) -> Step:
    if len(text) < 2 or text[-1] not in "+-":
        raise GraphFormatError(f"bad move token {text!r} (want '<edge-id>+' or '<edge-id>-')")
    return Step(text[:-1], 1 if text[-1] == "+" else -1)


class TwistGraph:
    """Immutable board description.  Construction validates everything:
    m >= 1, distinct ids, no loop edges, twists in [0, m), connectedness."""

    __slots__ = ("m", "vertices", "edges", "home", "coords", "_edge_by_id", "_incident")

    def __init__(
        self,
        m: int,
        vertices: Iterable[str],
        edges: Iterable[tuple | Edge],
        home: str | None = None,
        coords: Mapping[str, tuple[float, float]] | None = None,
    ):
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise GraphFormatError(f"modulus must be a positive integer, got {m!r}")
        verts = tuple(vertices)
        if len(verts) != len(set(verts)) or not verts:
            raise GraphFormatError("vertex ids must be nonempty and distinct")
        for v in verts:
            if not isinstance(v, str) or not v:
                raise GraphFormatError(f"bad vertex id {v!r}")
        vset = set(verts)
        built = []
        for e in edges:
            edge = Edge(*e)
            if not isinstance(edge.id, str) or not edge.id:
                raise GraphFormatError(f"bad edge id {edge.id!r}")
            if edge.tail not in vset or edge.head not in vset:
                raise GraphFormatError(f"edge {edge.id!r} references unknown vertex")
            if edge.tail == edge.head:
                raise GraphFormatError(f"edge {edge.id!r} is a loop")
            if not isinstance(edge.twist, int) or isinstance(edge.twist, bool) or not (
                0 <= edge.twist < m
            ):
                raise GraphFormatError(
                    f"edge {edge.id!r} twist {edge.twist!r} outside [0, {m})"
                )
            built.append(edge)
        ids = [e.id for e in built]
        if len(ids) != len(set(ids)):
            raise GraphFormatError("edge ids must be distinct")
        if home is not None and home not in vset:
            raise GraphFormatError(f"home {home!r} is not a vertex")
        cmap = {}
        if coords:
            for v, xy in coords.items():
                if v not in vset:
                    raise GraphFormatError(f"coordinates given for unknown vertex {v!r}")
                cmap[v] = (float(xy[0]), float(xy[1]))

        object.__setattr__(self, "m", m)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(built))
        object.__setattr__(self, "home", home)
        object.__setattr__(self, "coords", cmap)
        object.__setattr__(self, "_edge_by_id", {e.id: e for e in built})
        incident: dict[str, list[Edge]] = {v: [] for v in verts}
        for e in built:
            incident[e.tail].append(e)
            incident[e.head].append(e)
        object.__setattr__(self, "_incident", {v: tuple(es) for v, es in incident.items()})

        # connectedness is a type invariant, not a soft report entry
        if len(self._component_of(verts[0])) != len(verts):
            raise GraphFormatError("graph is not connected")

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("TwistGraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, TwistGraph)
            and self.m == other.m
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.home == other.home
            and self.coords == other.coords
        )

    def __repr__(self):
        return (
            f"TwistGraph(m={self.m}, |V|={len(self.vertices)}, "
            f"|E|={len(self.edges)}, home={self.home!r})"
        )

    def _component_of(self, start: str) -> set[str]:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for e in self._incident[v]:
                w = e.head if e.tail == v else e.tail
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    # -- lookups ---------------------------------------------------------------

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise GraphFormatError(f"unknown edge {edge_id!r}") from None

    def incident(self, v: str) -> tuple[Edge, ...]:
        try:
            return self._incident[v]
        except KeyError:
            raise GraphFormatError(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.incident(v))

    def step_endpoints(self, step: Step) -> tuple[str, str]:
        """(from, to) endpoints of a directed traversal."""
        e = self.edge(step.edge)
        return (e.tail, e.head) if step.sign > 0 else (e.head, e.tail)

    def twist_along(self, step: Step) -> int:
        """Twist gained by the displaced tile when the blank walks ``step``."""
        e = self.edge(step.edge)
        return e.twist % self.m if step.sign > 0 else (-e.twist) % self.m

    def with_twists(self, twists: Mapping[str, int]) -> "TwistGraph":
        """Copy with some twists replaced (values taken mod m)."""
        for eid in twists:
            self.edge(eid)
        edges = [
            Edge(e.id, e.tail, e.head, twists.get(e.id, e.twist) % self.m)
            for e in self.edges
        ]
        return TwistGraph(self.m, self.vertices, edges, self.home, self.coords)

    def default_home(self) -> str:
        return self.home if self.home is not None else min(self.vertices)


# -- wire format ---------------------------------------------------------------

_GRAPH_KEYS = {"format", "m", "home", "vertices", "edges"}
_VERTEX_KEYS = {"id", "x", "y"}
_EDGE_KEYS = {"id", "tail", "head", "twist"}


def graph_from_dict(obj: object) -> TwistGraph:
    if not isinstance(obj, dict):
        raise GraphFormatError("twistgraph document must be a JSON object")
    unknown = set(obj) - _GRAPH_KEYS
    if unknown:
        raise GraphFormatError(f"unknown twistgraph keys: {sorted(unknown)}")
    if obj.get("format") != "twistgraph/1":
        raise GraphFormatError(f"unsupported format {obj.get('format')!r}")
    for key in ("m", "vertices", "edges"):
        if key not in obj:
            raise GraphFormatError(f"missing twistgraph key {key!r}")
    if not isinstance(obj["vertices"], list) or not isinstance(obj["edges"], list):
        raise GraphFormatError("vertices and edges must be arrays")
    verts, coords = [], {}
    for ventry in obj["vertices"]:
        if not isinstance(ventry, dict) or "id" not in ventry:
            raise GraphFormatError(f"bad vertex entry {ventry!r}")
        vunknown = set(ventry) - _VERTEX_KEYS
        if vunknown:
            raise GraphFormatError(f"unknown vertex keys: {sorted(vunknown)}")
        if ("x" in ventry) != ("y" in ventry):
            raise GraphFormatError(f"vertex {ventry['id']!r} has only one coordinate")
        verts.append(ventry["id"])
        if "x" in ventry:
            if not all(isinstance(ventry[k], (int, float)) for k in ("x", "y")):
                raise GraphFormatError(f"vertex {ventry['id']!r} has non-numeric coordinates")
            coords[ventry["id"]] = (ventry["x"], ventry["y"])
    edges = []
    for eentry in obj["edges"]:
        if not isinstance(eentry, dict):
            raise GraphFormatError(f"bad edge entry {eentry!r}")
        eunknown = set(eentry) - _EDGE_KEYS
        if eunknown:
            raise GraphFormatError(f"unknown edge keys: {sorted(eunknown)}")
        missing = _EDGE_KEYS - set(eentry)
        if missing:
            raise GraphFormatError(f"edge entry missing keys: {sorted(missing)}")
        edges.append(Edge(eentry["id"], eentry["tail"], eentry["head"], eentry["twist"]))
    return TwistGraph(obj["m"], verts, edges, obj.get("home"), coords)


def parse_twist_graph(text: str) -> TwistGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(obj)


def graph_to_dict(g: TwistGraph) -> dict:
    verts = []
    for v in g.vertices:
        entry: dict = {"id": v}
        if v in g.coords:
            entry["x"], entry["y"] = g.coords[v]
        verts.append(entry)
    out: dict = {
        "format": "twistgraph/1",
        "m": g.m,
        "vertices": verts,
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "twist": e.twist}
            for e in g.edges
        ],
    }
    if g.home is not None:
        out["home"] = g.home
    return out


def serialize_twist_graph(g: TwistGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2, sort_keys=True)


# -- structure reports -----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    loop_free: bool
    two_vertex_connected: bool
    is_cycle: bool
    is_multi_cycle: bool
    has_parallel_edges: bool
    is_tree: bool
    simple_collapse_class: str  # "cycle" | "theta5" | "theta7" | "other"


def _collapsed_adjacency(g: TwistGraph) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        adj[e.tail].add(e.head)
        adj[e.head].add(e.tail)
    return adj


_THETA_REFS = {
    "theta5": (
        (2, 2, 2, 3, 3),
        [("L", "T"), ("T", "R"), ("L", "C"), ("C", "R"), ("L", "B"), ("B", "R")],
    ),
    "theta7": (
        (2, 2, 2, 2, 2, 3, 3),
        [
            ("2", "1"), ("1", "0"), ("0", "inf"), ("inf", "4"),
            ("4", "3"), ("3", "2"), ("inf", "c"), ("c", "2"),
        ],
    ),
}


def _isomorphic_to_theta(adj: dict[str, set[str]], which: str) -> bool:
    """Brute-force isomorphism of a collapsed simple graph against one of the
    two reference theta graphs, with a degree-sequence prefilter."""
    want_deg, ref_pairs = _THETA_REFS[which]
    verts = sorted(adj)
    if tuple(sorted(len(adj[v]) for v in verts)) != want_deg:
        return False
    edges = {frozenset((u, w)) for u in adj for w in adj[u]}
    ref_edges = {frozenset(p) for p in ref_pairs}
    if len(edges) != len(ref_edges):
        return False
    ref_deg: dict[str, int] = {}
    for e in ref_edges:
        for v in e:
            ref_deg[v] = ref_deg.get(v, 0) + 1
    by_deg: dict[int, list[str]] = {}
    for v in verts:
        by_deg.setdefault(len(adj[v]), []).append(v)
    ref_by_deg: dict[int, list[str]] = {}
    for v in ref_deg:
        ref_by_deg.setdefault(ref_deg[v], []).append(v)
    degrees = sorted(by_deg)

    def assignments(level: int, current: dict[str, str]):
        if level == len(degrees):
            yield current
            return
        d = degrees[level]
        for perm in permutations(ref_by_deg[d]):
            nxt = dict(current)
            nxt.update(zip(by_deg[d], perm))
            yield from assignments(level + 1, nxt)

    for mapping in assignments(0, {}):
        if {frozenset((mapping[u], mapping[w])) for u in adj for w in adj[u]} == ref_edges:
            return True
    return False


def _articulation_free(g: TwistGraph) -> bool:
    """True when no single vertex separates the (multi)graph.

    Lowlink DFS; the edge id used to enter a vertex is tracked so that a
    second parallel edge back to the parent counts as a genuine back edge.
    """
    n = len(g.vertices)
    if n <= 2:
        return True
    root = g.vertices[0]
    disc = {root: 0}
    low = {root: 0}
    parent_edge: dict[str, str | None] = {root: None}
    counter = 1
    root_children = 0
    work: list[tuple[str, Iterable]] = [(root, iter(g.incident(root)))]
    while work:
        v, it = work[-1]
        moved = False
        for e in it:
            w = e.head if e.tail == v else e.tail
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                parent_edge[w] = e.id
                if v == root:
                    root_children += 1
                work.append((w, iter(g.incident(w))))
                moved = True
                break
            elif e.id != parent_edge[v] and disc[w] < low[v]:
                low[v] = disc[w]
        if not moved:
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if u != root and low[v] >= disc[u]:
                    return False
    return root_children <= 1


def validate(g: TwistGraph) -> ValidationReport:
    """Structural report driving the classifier's routing."""
    nv, ne = len(g.vertices), len(g.edges)
    pair_counts: dict[frozenset, int] = {}
    for e in g.edges:
        key = frozenset((e.tail, e.head))
        pair_counts[key] = pair_counts.get(key, 0) + 1
    has_parallel = any(c > 1 for c in pair_counts.values())
    adj = _collapsed_adjacency(g)
    collapse_is_cycle = (
        nv >= 3
        and all(len(adj[v]) == 2 for v in g.vertices)
        and len(pair_counts) == nv
    )
    if collapse_is_cycle:
        cls = "cycle"
    elif _isomorphic_to_theta(adj, "theta5"):
        cls = "theta5"
    elif _isomorphic_to_theta(adj, "theta7"):
        cls = "theta7"
    else:
        cls = "other"
    return ValidationReport(
        connected=True,
        loop_free=True,
        two_vertex_connected=_articulation_free(g),
        is_cycle=collapse_is_cycle and not has_parallel,
        is_multi_cycle=collapse_is_cycle and has_parallel,
        has_parallel_edges=has_parallel,
        is_tree=ne == nv - 1,
        simple_collapse_class=cls,
    )


# -- spanning tree / tree paths -----------------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    """Canonical BFS spanning tree: root is a maximum-degree vertex (ties by
    smaller id), children discovered in edge-id order."""

    root: str
    parent_step: dict[str, Step]  # traversal parent -> v, keyed by child v
    parents: dict[str, str]
    depth: dict[str, int]
    edge_ids: frozenset[str]


def canonical_spanning_tree(g: TwistGraph) -> SpanningTree:
    root = min(g.vertices, key=lambda v: (-g.degree(v), v))
    parent_step: dict[str, Step] = {}
    parents: dict[str, str] = {}
    depth = {root: 0}
    frontier = [root]
    edge_ids = set()
    while frontier:
        next_frontier = []
        for v in frontier:
            for e in sorted(g.incident(v), key=lambda e: e.id):
                w = e.head if e.tail == v else e.tail
                if w in depth:
                    continue
                depth[w] = depth[v] + 1
                parent_step[w] = Step(e.id, 1 if e.tail == v else -1)
                parents[w] = v
                edge_ids.add(e.id)
                next_frontier.append(w)
        frontier = next_frontier
    return SpanningTree(root, parent_step, parents, depth, frozenset(edge_ids))


def _path_from_root(tree: SpanningTree, v: str) -> list[Step]:
    rev = []
    while v != tree.root:
        rev.append(tree.parent_step[v])
        v = tree.parents[v]
    rev.reverse()
    return rev


def tree_path(tree: SpanningTree, u: str, v: str) -> list[Step]:
    """Steps of the unique tree path u -> v (shared root prefix trimmed)."""
    pu = _path_from_root(tree, u)
    pv = _path_from_root(tree, v)
    k = 0
    while k < len(pu) and k < len(pv) and pu[k] == pv[k]:
        k += 1
    return [s.reversed() for s in reversed(pu[k:])] + pv[k:]


# -- gauge moves and reduction ---------------------------------------------------


def gauge_transform(g: TwistGraph, psi: Mapping[str, int]) -> TwistGraph:
    """Retwist by a vertex potential: gamma'_e = gamma_e + psi[tail] - psi[head].

    Gauge-equivalent graphs describe the same puzzle up to re-zeroing each
    socket's orientation, so classification factors through this move.
    """
    missing = set(g.vertices) - set(psi)
    if missing:
        raise GraphFormatError(f"gauge potential missing vertices {sorted(missing)}")
    edges = [
        Edge(e.id, e.tail, e.head, (e.twist + psi[e.tail] - psi[e.head]) % g.m)
        for e in g.edges
    ]
    return TwistGraph(g.m, g.vertices, edges, g.home, g.coords)


@dataclass(frozen=True)
class Reduction:
    """Normalization certificate: ``normalized = gauge_transform(g, gauge)``
    has zero twists on a canonical spanning tree, ``d`` is the gcd of m with
    the surviving twists, and ``reduced`` divides everything through by d."""

    gauge: dict[str, int]
    normalized: TwistGraph
    d: int
    reduced: TwistGraph


def normalize_and_reduce(g: TwistGraph) -> Reduction:
    tree = canonical_spanning_tree(g)
    psi = {tree.root: 0}
    pending = sorted((v for v in g.vertices if v != tree.root), key=lambda v: tree.depth[v])
    for v in pending:
        # psi[child] = psi[parent] + gamma(parent->child) zeroes the tree edge
        psi[v] = (psi[tree.parents[v]] + g.twist_along(tree.parent_step[v])) % g.m
    normalized = gauge_transform(g, psi)
    d = g.m
    for e in normalized.edges:
        d = gcd(d, e.twist)
    reduced = TwistGraph(
        g.m // d,
        g.vertices,
        [Edge(e.id, e.tail, e.head, e.twist // d) for e in normalized.edges],
        g.home,
        g.coords,
    )
    return Reduction(psi, normalized, d, reduced)


# -- two-coloring reports ---------------------------------------------------------


@dataclass(frozen=True)
class BipartiteReport:
    bipartite: bool
    coloring: dict[str, int] | None
    odd_cycle: list[Step] | None


@dataclass(frozen=True)
class TwistBipartiteReport:
    twist_bipartite: bool
    coloring: dict[str, int] | None
    violating_cycle: list[Step] | None


def _two_color(g: TwistGraph, crosses: Mapping[str, bool]):
    """Constrained 2-coloring: ``crosses[eid]`` means that edge must join
    opposite colors.  Returns (coloring, None) on success, else (None,
    witness) where the witness is a closed step sequence violating the
    constraint parity (it closes over the coloring's BFS tree)."""
    start = g.vertices[0]
    color = {start: 0}
    parents: dict[str, str] = {}
    parent_step: dict[str, Step] = {}
    frontier = [start]
    while frontier:
        next_frontier = []
        for v in frontier:
            for e in sorted(g.incident(v), key=lambda e: e.id):
                w = e.head if e.tail == v else e.tail
                want = color[v] ^ (1 if crosses[e.id] else 0)
                if w not in color:
                    color[w] = want
                    parents[w] = v
                    parent_step[w] = Step(e.id, 1 if e.tail == v else -1)
                    next_frontier.append(w)
                elif color[w] != want:
                    # witness cycle: tree path w -> v, then the edge back w<-v
                    a = w
                    ancestors_w = {a}
                    while a in parents:
                        a = parents[a]
                        ancestors_w.add(a)
                    b = v
                    path_v_up: list[Step] = []
                    while b not in ancestors_w:
                        path_v_up.append(parent_step[b])
                        b = parents[b]
                    # b = meet point; steps w -> meet are reversed parent steps
                    path_w_up: list[Step] = []
                    c = w
                    while c != b:
                        path_w_up.append(parent_step[c])
                        c = parents[c]
                    steps = [s.reversed() for s in path_w_up]
                    steps += list(reversed(path_v_up))
                    steps.append(Step(e.id, 1 if e.tail == v else -1))
                    return None, steps
        frontier = next_frontier
    return color, None


def is_bipartite(g: TwistGraph) -> BipartiteReport:
    """2-colorability of the underlying multigraph, with an odd closed walk
    as witness when it fails."""
    coloring, witness = _two_color(g, {e.id: True for e in g.edges})
    if coloring is not None:
        return BipartiteReport(True, coloring, None)
    return BipartiteReport(False, None, witness)


def is_twist_bipartite(g: TwistGraph) -> TwistBipartiteReport:
    """Twist 2-coloring: needs m even; even-twist edges must cross the two
    classes, odd-twist edges must stay inside one.  Equivalently every closed
    walk crosses an even number of even-twist edges."""
    if g.m % 2 != 0:
        return TwistBipartiteReport(False, None, None)
    coloring, witness = _two_color(g, {e.id: e.twist % 2 == 0 for e in g.edges})
    if coloring is not None:
        return TwistBipartiteReport(True, coloring, None)
    return TwistBipartiteReport(False, None, witness)
