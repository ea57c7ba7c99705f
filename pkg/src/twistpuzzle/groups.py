"""Exact arithmetic in generalized symmetric groups.

An element pairs a permutation sigma of a fixed site set with a rotation
vector x over Z/mZ, indexed by *destination*: x[v] is the rotation carried by
whatever currently occupies site v.  Composition follows the wreath-product
law, the permutation acting on rotation vectors by reindexing:

    (y, tau) * (x, sigma) = (y + tau*x, tau o sigma),   (tau*x)[v] = x[tau^-1(v)]

so in a product the left factor acts *after* the right one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

from .errors import ClosureCapExceeded, CompositionError, DivisorError


@dataclass(frozen=True)
class GroupElement:
    """(x, sigma) over Z/mZ with a fixed, sorted site tuple.

    ``sigma[i]`` is the index (into ``sites``) of the image of ``sites[i]``;
    ``x[i]`` is the rotation residue at ``sites[i]``.  Keeping sites sorted
    and residues normalized makes equality and hashing canonical.
    """

    m: int
    sites: tuple[str, ...]
    sigma: tuple[int, ...]
    x: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")
        n = len(self.sites)
        if list(self.sites) != sorted(set(self.sites)):
            raise ValueError("sites must be sorted and distinct")
        if sorted(self.sigma) != list(range(n)):
            raise ValueError("sigma is not a permutation of the sites")
        if len(self.x) != n or any(not (0 <= r < self.m) for r in self.x):
            raise ValueError("rotation vector out of range for modulus")

    @classmethod
    def identity(cls, m: int, sites: Iterable[str]) -> "GroupElement":
        ordered = tuple(sorted(sites))
        n = len(ordered)
        return cls(m, ordered, tuple(range(n)), (0,) * n)

    @classmethod
    def from_maps(
        cls, m: int, sigma: Mapping[str, str], x: Mapping[str, int]
    ) -> "GroupElement":
        """Build an element from site-keyed mappings."""
        ordered = tuple(sorted(sigma))
        if set(x) != set(ordered):
            raise ValueError("sigma and x must be defined on the same sites")
        index = {v: i for i, v in enumerate(ordered)}
        try:
            sig = tuple(index[sigma[v]] for v in ordered)
        except KeyError as exc:
            raise ValueError(f"sigma image {exc} is not a site") from exc
        return cls(m, ordered, sig, tuple(x[v] % m for v in ordered))

    # -- site-keyed accessors -------------------------------------------------

    def sigma_map(self) -> dict[str, str]:
        return {self.sites[i]: self.sites[self.sigma[i]] for i in range(len(self.sites))}

    def x_map(self) -> dict[str, int]:
        return dict(zip(self.sites, self.x))

    def image_of(self, site: str) -> str:
        return self.sites[self.sigma[self.sites.index(site)]]

    def rotation_at(self, site: str) -> int:
        return self.x[self.sites.index(site)]

    @property
    def is_identity(self) -> bool:
        return all(s == i for i, s in enumerate(self.sigma)) and not any(self.x)


class Projection(NamedTuple):
    """Quotient data of an element: its permutation part, rotations mod a,
    total rotation mod a, and permutation sign (+1/-1)."""

    sigma: dict[str, str]
    x_mod_a: dict[str, int]
    eta: int
    sign: int


def _check_compatible(a: GroupElement, b: GroupElement) -> None:
    if a.m != b.m:
        raise CompositionError(f"moduli differ: {a.m} != {b.m}")
    if a.sites != b.sites:
        raise CompositionError("site sets differ")


def multiply(outer: GroupElement, inner: GroupElement) -> GroupElement:
    """Product outer*inner: ``inner`` acts first, ``outer`` second."""
    _check_compatible(outer, inner)
    n = len(outer.sites)
    tau, y, sigma, x, m = outer.sigma, outer.x, inner.sigma, inner.x, outer.m
    inv_tau = [0] * n
    for i, t in enumerate(tau):
        inv_tau[t] = i
    new_sigma = tuple(tau[sigma[i]] for i in range(n))
    new_x = tuple((y[i] + x[inv_tau[i]]) % m for i in range(n))
    return GroupElement(m, outer.sites, new_sigma, new_x)


def inverse(g: GroupElement) -> GroupElement:
    n = len(g.sites)
    inv_sigma = [0] * n
    for i, t in enumerate(g.sigma):
        inv_sigma[t] = i
    new_x = tuple((-g.x[g.sigma[i]]) % g.m for i in range(n))
    return GroupElement(g.m, g.sites, tuple(inv_sigma), new_x)


def power(g: GroupElement, k: int) -> GroupElement:
    """g**k for any integer k (negative powers via the inverse)."""
    if k < 0:
        return power(inverse(g), -k)
    acc = GroupElement.identity(g.m, g.sites)
    base = g
    while k:
        if k & 1:
            acc = multiply(base, acc)
        base = multiply(base, base)
        k >>= 1
    return acc


def element_order(g: GroupElement) -> int:
    order = 1
    acc = g
    while not acc.is_identity:
        acc = multiply(g, acc)
        order += 1
    return order


def permutation_sign(sigma: Iterable[int]) -> int:
    """Sign (+1/-1) of a permutation given as an image tuple on 0..n-1."""
    sig = list(sigma)
    seen = [False] * len(sig)
    sign = 1
    for i in range(len(sig)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sig[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sign_of(g: GroupElement) -> int:
    return permutation_sign(g.sigma)


def project(g: GroupElement, a: int) -> Projection:
    """Push an element down the quotient tower: rotations mod a (a | m),
    total rotation mod a, and the bare permutation with its sign."""
    if a < 1 or g.m % a != 0:
        raise DivisorError(f"{a} does not divide modulus {g.m}")
    x_mod = {v: r % a for v, r in zip(g.sites, g.x)}
    eta = sum(g.x) % a if a > 1 else 0
    return Projection(g.sigma_map(), x_mod, eta, permutation_sign(g.sigma))


def closure(
    generators: Iterable[GroupElement],
    cap: int = 1_000_000,
    *,
    m: int | None = None,
    sites: Iterable[str] | None = None,
) -> frozenset[GroupElement]:
    """Subgroup generated by ``generators``, as a frozen set of elements.

    The group is finite, so products of the generators alone suffice (no
    explicit inverses needed).  Raises ClosureCapExceeded as soon as the set
    would outgrow ``cap``; with no generators the ambient (m, sites) must be
    given so the trivial subgroup has a home.
    """
    gens = list(generators)
    if gens:
        first = gens[0]
        for g in gens[1:]:
            _check_compatible(first, g)
        ident = GroupElement.identity(first.m, first.sites)
    else:
        if m is None or sites is None:
            raise ValueError("empty generator set needs explicit m and sites")
        ident = GroupElement.identity(m, sites)
    seen: set[GroupElement] = {ident}
    frontier = [ident]
    while frontier:
        next_frontier = []
        for f in frontier:
            for g in gens:
                p = multiply(g, f)
                if p not in seen:
                    if len(seen) >= cap:
                        raise ClosureCapExceeded(f"closure exceeds cap {cap}")
                    seen.add(p)
                    next_frontier.append(p)
        frontier = next_frontier
    return frozenset(seen)


def element_to_dict(g: GroupElement) -> dict:
    """JSON-friendly view: site -> image vertex and site -> rotation."""
    return {
        "m": g.m,
        "sigma": {v: g.sites[g.sigma[i]] for i, v in enumerate(g.sites)},
        "x": {v: g.x[i] for i, v in enumerate(g.sites)},
    }


def element_from_dict(doc: Mapping) -> GroupElement:
    return GroupElement.from_maps(doc["m"], doc["sigma"], doc["x"])
