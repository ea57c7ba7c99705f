"""Built-in boards.

Parameterized families take their size from the name ("grid:4x4",
"cycle:6"); every preset accepts an ``m`` override and a twist override
mapping.  Coordinates are included so front ends can draw the boards.
"""

from __future__ import annotations

import math
import re
from typing import Mapping

from .graph import TwistGraph

PRESET_NAMES = (
    "grid:WxH",
    "cycle:K",
    "theta5",
    "theta7",
    "fifteen_plus_four",
    "figure8",
    "k33",
    "k4",
    "hyperbolic29",
    "continental_drift",
)


def _grid(w: int, h: int, m: int) -> TwistGraph:
    if w < 2 or h < 2:
        raise ValueError("grid needs at least 2x2 vertices")
    verts, coords = [], {}
    for r in range(h):
        for c in range(w):
            v = f"r{r}c{c}"
            verts.append(v)
            coords[v] = (float(c), float(-r))
    edges = []
    for r in range(h):
        for c in range(w):
            if c + 1 < w:
                edges.append((f"h{r}_{c}", f"r{r}c{c}", f"r{r}c{c + 1}", 0))
            if r + 1 < h:
                edges.append((f"v{r}_{c}", f"r{r}c{c}", f"r{r + 1}c{c}", 0))
    return TwistGraph(m, verts, edges, home=f"r{h - 1}c{w - 1}", coords=coords)


def _cycle(k: int, m: int) -> TwistGraph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    verts = [f"v{i}" for i in range(k)]
    coords = {
        f"v{i}": (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k))
        for i in range(k)
    }
    edges = [(f"e{i}", f"v{i}", f"v{(i + 1) % k}", 0) for i in range(k)]
    return TwistGraph(m, verts, edges, home="v0", coords=coords)


def _theta5(m: int) -> TwistGraph:
    verts = ["left", "top", "right", "bottom", "center"]
    coords = {
        "left": (-1.0, 0.0),
        "top": (0.0, 1.0),
        "right": (1.0, 0.0),
        "bottom": (0.0, -1.0),
        "center": (0.0, 0.0),
    }
    edges = [
        ("e1", "left", "top", 0),
        ("e2", "top", "right", 0),
        ("e3", "left", "center", 0),
        ("e4", "center", "right", 0),
        ("e5", "left", "bottom", 0),
        ("e6", "bottom", "right", 0),
    ]
    return TwistGraph(m, verts, edges, home="left", coords=coords)


def _theta7(m: int) -> TwistGraph:
    ring = ["2", "1", "0", "inf", "4", "3"]
    verts = ring + ["c"]
    coords = {
        v: (math.cos(math.pi / 2 + 2 * math.pi * i / 6), math.sin(math.pi / 2 + 2 * math.pi * i / 6))
        for i, v in enumerate(ring)
    }
    coords["c"] = (0.0, 0.0)
    edges = [
        ("e21", "2", "1", 0),
        ("e10", "1", "0", 0),
        ("e0inf", "0", "inf", 0),
        ("einf4", "inf", "4", 0),
        ("e43", "4", "3", 0),
        ("e32", "3", "2", 0),
        ("einfc", "inf", "c", 0),
        ("ec2", "c", "2", 0),
    ]
    return TwistGraph(m, verts, edges, home="c", coords=coords)


def _figure8(m: int) -> TwistGraph:
    verts = ["u", "r", "b"]
    coords = {"u": (0.0, 0.0), "r": (1.0, 0.0), "b": (0.0, -1.0)}
    edges = [
        ("ur", "u", "r", 0),
        ("ur2", "u", "r", 1 % m),
        ("rb", "r", "b", 0),
        ("bu", "b", "u", 0),
    ]
    return TwistGraph(m, verts, edges, home="u", coords=coords)


def _fifteen_plus_four(m: int) -> TwistGraph:
    coords = {
        "a": (0, 0),
        "b": (-1, -1), "c": (1, -1),
        "d": (-2, -2), "e": (0, -2), "f": (2, -2),
        "g": (-3, -3), "h": (-1, -3), "i": (1, -3), "j": (3, -3),
        "k": (-2, -4), "l": (2, -4),
        "m": (-1, -4.5), "n": (1, -4.5),
        "o": (-2, -5.5), "p": (2, -5.5),
        "q": (-1, -6), "r": (1, -6),
        "s": (-2, -7), "t": (2, -7),
    }
    boundary = [
        ("ab", "a", "b"), ("bd", "b", "d"), ("dg", "d", "g"), ("gk", "g", "k"),
        ("ko", "k", "o"), ("os", "o", "s"), ("sq", "s", "q"), ("qm", "q", "m"),
        ("mh", "m", "h"), ("he", "h", "e"), ("ei", "e", "i"), ("in", "i", "n"),
        ("nr", "n", "r"), ("rt", "r", "t"), ("tp", "t", "p"), ("pl", "p", "l"),
        ("lj", "l", "j"), ("jf", "j", "f"), ("fc", "f", "c"), ("ca", "c", "a"),
    ]
    interior = [
        ("be", "b", "e"), ("ce", "c", "e"), ("dh", "d", "h"), ("hk", "h", "k"),
        ("fi", "f", "i"), ("il", "i", "l"), ("om", "o", "m"), ("pn", "p", "n"),
    ]
    twisted = [("mn", "m", "n"), ("qr", "q", "r")]
    edges = [(eid, t, h, 0) for eid, t, h in boundary + interior]
    edges += [(eid, t, h, 1 % m) for eid, t, h in twisted]
    verts = sorted(coords, key=lambda v: (-coords[v][1], coords[v][0]))
    cf = {v: (float(x), float(y)) for v, (x, y) in coords.items()}
    return TwistGraph(m, verts, edges, home="a", coords=cf)


def _k33(m: int) -> TwistGraph:
    verts = ["a1", "a2", "a3", "b1", "b2", "b3"]
    coords = {f"a{i}": (float(i - 2), 1.0) for i in (1, 2, 3)}
    coords.update({f"b{i}": (float(i - 2), -1.0) for i in (1, 2, 3)})
    edges = [
        (f"a{i}b{j}", f"a{i}", f"b{j}", 0) for i in (1, 2, 3) for j in (1, 2, 3)
    ]
    return TwistGraph(m, verts, edges, home="a1", coords=coords)


def _k4(m: int) -> TwistGraph:
    verts = ["v1", "v2", "v3", "v4"]
    coords = {"v1": (0.0, 1.0), "v2": (-1.0, -1.0), "v3": (1.0, -1.0), "v4": (0.0, 0.0)}
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    edges = [(f"e{i}{j}", f"v{i}", f"v{j}", 0) for i, j in pairs]
    return TwistGraph(m, verts, edges, home="v1", coords=coords)


# 30-vertex hyperbolic board: five pentagons around a central one, square
# tiles (m=4), every edge twisted by 1 along its arrow.
_H29_COORDS = {
    "a": (-1, 0), "b": (-1, 1), "c": (0, 2), "d": (1, 1), "e": (1, 0),
    "f": (-2, 1), "g": (-3, 0), "h": (-2, -1), "i": (-2, -2), "j": (-1, -2),
    "k": (-1, -1), "l": (0, -2), "m": (1, -1), "n": (1, -2), "o": (2, -2),
    "p": (2, -1), "q": (3, 0), "r": (2, 1), "s": (3, 1), "t": (3, 2),
    "u": (2, 2), "v": (2, 3), "w": (1, 3), "z": (1, 4), "a1": (-1, 4),
    "b1": (-1, 3), "c1": (-2, 3), "d1": (-2, 2), "e1": (-3, 2), "f1": (-3, 1),
}

_H29_ARROWS = [
    ("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"),
    ("b", "f"), ("f", "g"), ("g", "h"), ("h", "a"),
    ("i", "h"), ("j", "i"), ("k", "j"), ("a", "k"),
    ("k", "l"), ("l", "m"), ("m", "e"),
    ("n", "m"), ("o", "n"), ("p", "o"), ("e", "p"),
    ("p", "q"), ("q", "r"), ("r", "d"),
    ("s", "r"), ("t", "s"), ("u", "t"), ("d", "u"),
    ("u", "v"), ("v", "w"), ("w", "c"),
    ("z", "w"), ("a1", "z"), ("b1", "a1"), ("c", "b1"),
    ("b1", "c1"), ("c1", "d1"), ("d1", "b"),
    ("f", "f1"), ("f1", "e1"), ("e1", "d1"),
]


def _hyperbolic29(m: int) -> TwistGraph:
    verts = sorted(_H29_COORDS)
    coords = {v: (float(x), float(y)) for v, (x, y) in _H29_COORDS.items()}
    edges = [(f"{t}_{h}", t, h, 1 % m) for t, h in _H29_ARROWS]
    return TwistGraph(m, verts, edges, home="a", coords=coords)


def _continental_drift(m: int) -> TwistGraph:
    """Dodecahedral globe board: hexagonal tiles (m=6), every edge twisted by
    1 along its arrow, drawn as four concentric pentagon rings."""
    rings = {"a": 1.0, "b": 2.0, "c": 3.0, "d": 4.0}
    shift = {"a": 0.0, "b": 0.0, "c": math.pi / 5, "d": math.pi / 5}
    verts, coords = [], {}
    for ring, radius in rings.items():
        for i in range(1, 6):
            v = f"{ring}{i}"
            ang = math.pi / 2 + 2 * math.pi * (i - 1) / 5 + shift[ring]
            verts.append(v)
            coords[v] = (radius * math.cos(ang), radius * math.sin(ang))
    arrows = []
    for i in range(1, 6):
        nxt = i % 5 + 1
        arrows.append((f"a{i}", f"a{nxt}"))           # inner ring
        arrows.append((f"d{i}", f"d{nxt}"))           # outer ring
        arrows.append((f"c{i}", f"b{i}"))             # aligned spokes
        arrows.append((f"b{i}", f"a{i}"))
        arrows.append((f"c{i}", f"b{i % 5 + 1}"))     # shifted spokes
        arrows.append((f"d{i}", f"c{i}"))
    edges = [(f"{t}_{h}", t, h, 1 % m) for t, h in arrows]
    return TwistGraph(m, verts, edges, home="a1", coords=coords)


_DEFAULT_M = {
    "grid": 1,
    "cycle": 1,
    "theta5": 3,
    "theta7": 2,
    "figure8": 2,
    "fifteen_plus_four": 4,
    "k33": 1,
    "k4": 1,
    "hyperbolic29": 4,
    "continental_drift": 6,
}


def preset(
    name: str, m: int | None = None, twists: Mapping[str, int] | None = None
) -> TwistGraph:
    """Build a named board.  ``grid:WxH`` and ``cycle:K`` carry their size in
    the name; ``m`` overrides the family default and ``twists`` rewrites
    individual edge twists (values taken mod m)."""
    base = name.split(":", 1)[0]
    if base not in _DEFAULT_M:
        raise ValueError(f"unknown preset {name!r}")
    mm = _DEFAULT_M[base] if m is None else m
    if base == "grid":
        match = re.fullmatch(r"grid:(\d+)x(\d+)", name)
        if not match:
            raise ValueError("grid preset must look like 'grid:4x4'")
        g = _grid(int(match.group(1)), int(match.group(2)), mm)
    elif base == "cycle":
        match = re.fullmatch(r"cycle:(\d+)", name)
        if not match:
            raise ValueError("cycle preset must look like 'cycle:6'")
        g = _cycle(int(match.group(1)), mm)
    elif name == "theta5":
        g = _theta5(mm)
    elif name == "theta7":
        g = _theta7(mm)
    elif name == "figure8":
        g = _figure8(mm)
    elif name == "fifteen_plus_four":
        g = _fifteen_plus_four(mm)
    elif name == "k33":
        g = _k33(mm)
    elif name == "k4":
        g = _k4(mm)
    elif name == "hyperbolic29":
        g = _hyperbolic29(mm)
    elif name == "continental_drift":
        g = _continental_drift(mm)
    else:
        raise ValueError(f"unknown preset {name!r}")
    if twists:
        g = g.with_twists(twists)
    return g
