"""Cycle structure of a twist graph and the twist character.

Closed blank tours act on the tiles; homotopic tours (differing by
backtracking) act identically, so everything here lives on the first
homology of the board with Z/mZ coefficients.  The character phi sends a
cycle to its total signed twist and controls which pure rotations are
reachable.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple

from .errors import CycleConditionError, PathError
from .graph import Step, TwistGraph, canonical_spanning_tree, tree_path
from .groups import GroupElement, multiply, power


@dataclass(frozen=True)
class ClosedPath:
    """A closed edge walk based at ``base``; steps are directed traversals."""

    base: str
    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "ClosedPath":
        return ClosedPath(self.base, tuple(s.reversed() for s in reversed(self.steps)))


def walk_vertices(g: TwistGraph, start: str, steps: Iterable[Step]) -> list[str]:
    """Vertex itinerary of a step sequence; raises PathError on a gap."""
    if start not in g.vertices:
        raise PathError(f"unknown start vertex {start!r}")
    at = start
    out = [at]
    for s in steps:
        frm, to = g.step_endpoints(s)
        if frm != at:
            raise PathError(f"step {s} starts at {frm!r}, expected {at!r}")
        at = to
        out.append(at)
    return out


def check_closed_path(g: TwistGraph, p: ClosedPath) -> None:
    itinerary = walk_vertices(g, p.base, p.steps)
    if itinerary[-1] != p.base:
        raise PathError(f"path ends at {itinerary[-1]!r}, not its base {p.base!r}")


def concat(p: ClosedPath, q: ClosedPath) -> ClosedPath:
    """p then q (both must share a base)."""
    if p.base != q.base:
        raise PathError("cannot concatenate paths with different bases")
    return ClosedPath(p.base, p.steps + q.steps)


def reduce_steps(steps: Iterable[Step]) -> tuple[Step, ...]:
    """Cancel adjacent mutually-inverse traversals until none remain."""
    stack: list[Step] = []
    for s in steps:
        if stack and stack[-1].edge == s.edge and stack[-1].sign == -s.sign:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


@dataclass(frozen=True)
class CycleVector:
    """Edge weights omega over Z/mZ satisfying the closed 1-cycle condition:
    at every vertex the signed incident weights sum to zero."""

    omega: tuple[tuple[str, int], ...]  # (edge id, residue), sorted by id

    @classmethod
    def from_weights(cls, weights: dict[str, int], m: int) -> "CycleVector":
        return cls(tuple(sorted((e, w % m) for e, w in weights.items())))

    def weight(self, edge_id: str) -> int:
        for e, w in self.omega:
            if e == edge_id:
                return w
        return 0


def check_cycle_vector(g: TwistGraph, omega: CycleVector) -> None:
    net = {v: 0 for v in g.vertices}
    for eid, w in omega.omega:
        e = g.edge(eid)
        net[e.tail] -= w
        net[e.head] += w
    bad = [v for v, s in net.items() if s % g.m != 0]
    if bad:
        raise CycleConditionError(f"not a closed 1-cycle at vertices {sorted(bad)}")


def cycle_vector_of_path(g: TwistGraph, p: ClosedPath) -> CycleVector:
    check_closed_path(g, p)
    weights: dict[str, int] = {}
    for s in p.steps:
        weights[s.edge] = weights.get(s.edge, 0) + s.sign
    return CycleVector.from_weights(weights, g.m)


def phi_gamma(g: TwistGraph, omega: CycleVector) -> int:
    """Total twist of a 1-cycle: sum of gamma_e * omega_e mod m."""
    check_cycle_vector(g, omega)
    total = 0
    for eid, w in omega.omega:
        total += g.edge(eid).twist * w
    return total % g.m


def phi_of_path(g: TwistGraph, p: ClosedPath) -> int:
    """Signed twist a blank tour picks up; equals phi of its cycle vector."""
    check_closed_path(g, p)
    return sum(g.twist_along(s) for s in p.steps) % g.m


def fundamental_generators(g: TwistGraph, base: str) -> list[ClosedPath]:
    """One closed path per off-tree edge, conjugated to ``base``.

    Each generator runs base -> tail(e) along the canonical spanning tree,
    across e, then head(e) -> base back along the tree, with backtracking
    cancelled.  Their homotopy classes generate all closed paths at base.
    """
    if base not in g.vertices:
        raise PathError(f"unknown base vertex {base!r}")
    tree = canonical_spanning_tree(g)
    out = []
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.id in tree.edge_ids:
            continue
        steps = tree_path(tree, base, e.tail)
        steps.append(Step(e.id, 1))
        steps += tree_path(tree, e.head, base)
        out.append(ClosedPath(base, reduce_steps(steps)))
    return out


class SurjectivityReport(NamedTuple):
    surjective: bool
    gcd: int


def is_phi_surjective(g: TwistGraph) -> SurjectivityReport:
    """Whether phi hits every residue mod m; the witness gcd is of m with
    the generator values (m itself when the graph is a tree)."""
    base = g.default_home()
    d = g.m
    for p in fundamental_generators(g, base):
        d = gcd(d, phi_of_path(g, p))
    return SurjectivityReport(d == 1, d)


@dataclass(frozen=True)
class RotationKernelGenerator:
    """A reachable pure rotation: the path element of ``path`` raised to the
    order of its permutation part.  Rotates every tile on the permutation's
    support by the path's total twist ``a`` and touches nothing else."""

    path: ClosedPath
    a: int
    support: frozenset[str]
    x: dict[str, int]
    element: GroupElement


def rotation_kernel_generators(g: TwistGraph, base: str) -> list[RotationKernelGenerator]:
    from .dynamics import element_of_path  # deferred: dynamics sits above topology

    out = []
    for p in fundamental_generators(g, base):
        el = element_of_path(g, p)
        k = _permutation_order(el.sigma)
        rot = power(el, k)
        support = frozenset(
            el.sites[i] for i, image in enumerate(el.sigma) if image != i
        )
        out.append(
            RotationKernelGenerator(
                path=p,
                a=phi_of_path(g, p),
                support=support,
                x=rot.x_map(),
                element=rot,
            )
        )
    return out


def _permutation_order(sigma: tuple[int, ...]) -> int:
    seen = [False] * len(sigma)
    order = 1
    for i in range(len(sigma)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            length += 1
        if length > 1:
            order = order * length // gcd(order, length)
    return order
