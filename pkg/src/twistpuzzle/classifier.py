"""Closed-form classification of the reachable group of a board.

After gauge-normalizing and dividing out the common twist divisor d, the
reachable elements with the blank at home form a subgroup of the
generalized symmetric group over the reduced modulus.  For 2-connected
boards beyond a handful of exceptional shapes the subgroup is decided by
two certificates (bipartiteness and twist-bipartiteness); simple cycles are
cyclic; the two theta-shaped boards carry smaller permutation groups (A4 on
five vertices, the fractional-linear group PGL(2,5) on seven) with optional
rotation constraints.  Everything else falls back to exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .dynamics import (
    PuzzleState,
    element_of_path,
    state_element_bridge,
    state_home,
    solved_state,
    transport_blank_home,
)
from .errors import StateFormatError, UndecidedError
from .graph import (
    TwistGraph,
    is_bipartite,
    is_twist_bipartite,
    normalize_and_reduce,
    validate,
)
from .groups import GroupElement, closure, permutation_sign
from .topology import fundamental_generators, is_phi_surjective, phi_of_path

FULL_GEN_SYM = "FullGenSym"
EVEN_PERM_FULL_ROT = "EvenPermFullRot"
TWIST_BIPARTITE_PARITY = "TwistBipartiteParity"
CYCLIC = "Cyclic"
THETA5_PLAIN = "Theta5Plain"
THETA5_MOD3 = "Theta5Mod3"
THETA7_PLAIN = "Theta7Plain"
THETA7_PARITY = "Theta7Parity"
ORACLE_FALLBACK = "OracleFallback"

CASES = (
    FULL_GEN_SYM,
    EVEN_PERM_FULL_ROT,
    TWIST_BIPARTITE_PARITY,
    CYCLIC,
    THETA5_PLAIN,
    THETA5_MOD3,
    THETA7_PLAIN,
    THETA7_PARITY,
    ORACLE_FALLBACK,
)

DEFAULT_ORACLE_CAP = 5_000_000


@dataclass(frozen=True)
class GroupDescriptor:
    """Machine-checkable description of the reachable blank-at-home group.

    Membership of an original-coordinates element is tested by gauging with
    ``gauge``, requiring every rotation to be divisible by ``d``, dividing
    through, and applying the case predicate at the reduced modulus ``m``.
    """

    case: str
    home: str
    sites: tuple[str, ...]
    n: int
    original_m: int
    m: int  # reduced modulus
    d: int
    gauge: dict[str, int]
    order: int
    certificates: dict
    perm_table: frozenset[tuple[int, ...]] | None = None
    q_table: dict[tuple[int, ...], int] | None = None
    element_table: frozenset[GroupElement] | None = None  # reduced coordinates

    def reduce_element(self, el: GroupElement) -> GroupElement | None:
        """Original-coordinates element -> reduced coordinates, or None when
        some gauged rotation is not divisible by d (instant unsolvable)."""
        if el.m != self.original_m or el.sites != self.sites:
            raise StateFormatError("element does not match the descriptor's board")
        psi = self.gauge
        n = len(self.sites)
        inv = [0] * n
        for i, t in enumerate(el.sigma):
            inv[t] = i
        gauged = []
        for i, v in enumerate(self.sites):
            pre = self.sites[inv[i]]  # the tile at v came from home pre
            val = (el.x[i] + psi[v] - psi[pre]) % self.original_m
            if val % self.d:
                return None
            gauged.append(val // self.d)
        return GroupElement(self.m, self.sites, el.sigma, tuple(gauged))

    def accepts_element(self, el: GroupElement) -> bool:
        red = self.reduce_element(el)
        if red is None:
            return False
        case = self.case
        if case == FULL_GEN_SYM:
            return True
        if case == EVEN_PERM_FULL_ROT:
            return permutation_sign(red.sigma) == 1
        if case == TWIST_BIPARTITE_PARITY:
            parity = 0 if permutation_sign(red.sigma) == 1 else 1
            return sum(red.x) % 2 == parity
        if case == THETA5_PLAIN or case == THETA7_PLAIN:
            return red.sigma in self.perm_table
        if case == THETA5_MOD3:
            return red.sigma in self.perm_table and sum(red.x) % 3 == self.q_table[red.sigma]
        if case == THETA7_PARITY:
            parity = 0 if permutation_sign(red.sigma) == 1 else 1
            return red.sigma in self.perm_table and sum(red.x) % 2 == parity
        if case == CYCLIC or case == ORACLE_FALLBACK:
            return red in self.element_table
        raise AssertionError(f"unhandled case {case}")

    def elements_in_original_coords(self) -> frozenset[GroupElement] | None:
        """The explicit element table mapped back to original coordinates
        (None for cases described by predicates rather than tables)."""
        if self.element_table is None:
            return None
        psi = self.gauge
        out = []
        for red in self.element_table:
            n = len(self.sites)
            inv = [0] * n
            for i, t in enumerate(red.sigma):
                inv[t] = i
            x = tuple(
                (red.x[i] * self.d - psi[v] + psi[self.sites[inv[i]]]) % self.original_m
                for i, v in enumerate(self.sites)
            )
            out.append(GroupElement(self.original_m, self.sites, red.sigma, x))
        return frozenset(out)


def _perm_image(el: GroupElement) -> GroupElement:
    """Forget rotations: the same permutation over modulus 1."""
    return GroupElement(1, el.sites, el.sigma, (0,) * len(el.sites))


def _sigma_closure(gens: list[GroupElement]) -> frozenset[tuple[int, ...]]:
    perms = closure([_perm_image(g) for g in gens], cap=10_000)
    return frozenset(p.sigma for p in perms)


def _labeled_sigma_closure(
    gens: list[tuple[GroupElement, int]], modulus: int
) -> dict[tuple[int, ...], int] | None:
    """Closure of the permutation images carrying additive labels mod
    ``modulus`` (label of a product = sum of labels).  Returns None when the
    labels are inconsistent, i.e. no such homomorphism exists."""
    if not gens:
        return None
    sites = gens[0][0].sites
    ident = tuple(range(len(sites)))
    table = {ident: 0}
    frontier = [ident]
    perm_gens = [(g.sigma, phi % modulus) for g, phi in gens]
    while frontier:
        nxt = []
        for sig in frontier:
            base = table[sig]
            for gsig, phi in perm_gens:
                prod = tuple(gsig[sig[i]] for i in range(len(sig)))
                want = (base + phi) % modulus
                if prod not in table:
                    table[prod] = want
                    nxt.append(prod)
                elif table[prod] != want:
                    return None
        frontier = nxt
    return table


def _steps_json(steps) -> list[str]:
    return [str(s) for s in steps]


def classify(
    g: TwistGraph, home: str | None = None, *, oracle_cap: int = DEFAULT_ORACLE_CAP
) -> GroupDescriptor:
    """Descriptor of the blank-at-home reachable group.

    Raises UndecidedError when the board needs the enumeration fallback and
    the reachable set exceeds ``oracle_cap``.
    """
    home = g.default_home() if home is None else home
    if home not in g.vertices:
        raise StateFormatError(f"home {home!r} is not a vertex")
    red = normalize_and_reduce(g)
    gr = red.reduced
    report = validate(gr)
    surj = is_phi_surjective(gr)
    n = len(g.vertices) - 1
    sites = tuple(sorted(v for v in g.vertices if v != home))
    m_r = gr.m
    base_cert = {
        "d": red.d,
        "reduced_m": m_r,
        "gauge": dict(sorted(red.gauge.items())),
        "phi_gcd_after_reduction": surj.gcd,
        "collapse_class": report.simple_collapse_class,
        "two_vertex_connected": report.two_vertex_connected,
    }

    def build(case, order, certs, **tables):
        return GroupDescriptor(
            case=case,
            home=home,
            sites=sites,
            n=n,
            original_m=g.m,
            m=m_r,
            d=red.d,
            gauge=red.gauge,
            order=order,
            certificates={**base_cert, **certs},
            **tables,
        )

    if n == 0:
        return build(FULL_GEN_SYM, 1, {"reason": "single vertex"})

    needs_oracle = None
    if report.is_tree:
        needs_oracle = "tree board: the blank can only shuttle"
    elif not report.two_vertex_connected:
        needs_oracle = "separating vertex"
    elif report.is_multi_cycle:
        needs_oracle = "cycle with parallel edges"
    elif len(g.vertices) == 2:
        needs_oracle = "two-vertex multigraph"
    elif report.has_parallel_edges and report.simple_collapse_class in ("theta5", "theta7"):
        needs_oracle = f"{report.simple_collapse_class} with parallel edges"

    if needs_oracle is not None:
        return _oracle_descriptor(gr, home, build, needs_oracle, oracle_cap)

    if report.is_cycle:
        gens = fundamental_generators(gr, home)
        assert len(gens) == 1
        loop = element_of_path(gr, gens[0])
        elements = frozenset(closure([loop], cap=oracle_cap))
        return build(
            CYCLIC,
            len(elements),
            {"generator": _steps_json(gens[0].steps), "generator_order": len(elements)},
            element_table=elements,
        )

    if report.simple_collapse_class == "theta5":
        return _theta5_descriptor(gr, home, build)
    if report.simple_collapse_class == "theta7":
        return _theta7_descriptor(gr, home, build)

    bip = is_bipartite(gr)
    if bip.bipartite:
        return build(
            EVEN_PERM_FULL_ROT,
            m_r ** n * factorial(n) // 2,
            {"bipartition": bip.coloring},
        )
    twb = is_twist_bipartite(gr)
    if twb.twist_bipartite:
        return build(
            TWIST_BIPARTITE_PARITY,
            m_r ** n * factorial(n) // 2,
            {"twist_coloring": twb.coloring, "odd_cycle": _steps_json(bip.odd_cycle)},
        )
    certs = {"odd_cycle": _steps_json(bip.odd_cycle)}
    if m_r % 2 == 0:
        certs["twist_violation_cycle"] = _steps_json(twb.violating_cycle)
    else:
        certs["twist_violation_cycle"] = "reduced modulus is odd"
    return build(FULL_GEN_SYM, m_r ** n * factorial(n), certs)


def _oracle_descriptor(gr, home, build, reason, cap):
    from .oracle import enumerate_reachable

    reach = enumerate_reachable(gr, solved_state(gr, home), cap)
    if not reach.exhausted:
        raise UndecidedError(
            f"enumeration fallback ({reason}) exceeded cap {cap} "
            f"after {reach.explored} states"
        )
    return build(
        ORACLE_FALLBACK,
        len(reach.by_home),
        {"reason": reason, "reachable_states": reach.explored},
        element_table=reach.by_home,
    )


def _theta5_descriptor(gr, home, build):
    gens = [(p, element_of_path(gr, p)) for p in fundamental_generators(gr, home)]
    perm_table = _sigma_closure([el for _, el in gens])
    assert len(perm_table) == 12, "theta5 permutation image must be A4"
    gen_cert = [
        {"path": _steps_json(p.steps), "phi": phi_of_path(gr, p)} for p, _ in gens
    ]
    if gr.m % 3 == 0:
        labeled = _labeled_sigma_closure(
            [(el, phi_of_path(gr, p)) for p, el in gens], 3
        )
        if labeled is not None:
            order = 12 * gr.m ** 4 // 3
            return build(
                THETA5_MOD3,
                order,
                {"generators": gen_cert, "rotation_constraint": "sum mod 3"},
                perm_table=perm_table,
                q_table=labeled,
            )
    reason = (
        "modulus not divisible by 3"
        if gr.m % 3
        else "generator twists inconsistent with any mod-3 homomorphism"
    )
    return build(
        THETA5_PLAIN,
        12 * gr.m ** 4,
        {"generators": gen_cert, "rotation_constraint": f"none ({reason})"},
        perm_table=perm_table,
    )


def _theta7_descriptor(gr, home, build):
    gens = [(p, element_of_path(gr, p)) for p in fundamental_generators(gr, home)]
    perm_table = _sigma_closure([el for _, el in gens])
    assert len(perm_table) == 120, "theta7 permutation image must be PGL(2,5)"
    gen_cert = [
        {"path": _steps_json(p.steps), "phi": phi_of_path(gr, p)} for p, _ in gens
    ]
    twb = is_twist_bipartite(gr)
    if twb.twist_bipartite:
        return build(
            THETA7_PARITY,
            120 * gr.m ** 6 // 2,
            {
                "generators": gen_cert,
                "twist_coloring": twb.coloring,
                "rotation_constraint": "sum parity = permutation parity",
            },
            perm_table=perm_table,
        )
    certs = {"generators": gen_cert, "rotation_constraint": "none"}
    if gr.m % 2 == 0:
        certs["twist_violation_cycle"] = _steps_json(twb.violating_cycle)
    else:
        certs["twist_violation_cycle"] = "reduced modulus is odd"
    return build(THETA7_PLAIN, 120 * gr.m ** 6, certs, perm_table=perm_table)


def group_order(desc: GroupDescriptor) -> int:
    return desc.order


def is_solvable(
    g: TwistGraph,
    s: PuzzleState,
    descriptor: GroupDescriptor | None = None,
    *,
    oracle_cap: int = DEFAULT_ORACLE_CAP,
) -> bool:
    """Whether ``s`` can be walked back to the solved state.

    Transports the blank home along the canonical tree route, bridges the
    state to a group element and asks the descriptor.  Route choice cannot
    change the verdict: two transports differ by a closed blank tour, i.e.
    by a reachable factor.
    """
    home = state_home(g, s)
    if descriptor is None:
        descriptor = classify(g, home, oracle_cap=oracle_cap)
    elif descriptor.home != home:
        raise StateFormatError(
            f"descriptor was built for home {descriptor.home!r}, state implies {home!r}"
        )
    at_home, _ = transport_blank_home(g, s)
    return descriptor.accepts_element(state_element_bridge(g, at_home))


def exceptional_tables() -> dict:
    """Reference tables for the exceptional boards, in a fixed labeling.

    ``pgl25``: the 120 fractional-linear permutations of P1(F5), generated
    by z -> z+1, z -> 2z, and z -> 1/z over the site names 0..4, inf (the
    scale map has non-square determinant, which is what reaches the odd
    half that z -> z+1 and z -> 1/z alone cannot).
    ``a4_q``: the quotient homomorphism A4 -> Z/3 on sites 0..3 sending the
    3-cycle (0 1 2) to 1 (its kernel is the Klein four-group).  Instances
    calibrate their own copy from their fundamental generators; these fixed
    tables are for reference and cross-checks only.
    """
    sites6 = ("0", "1", "2", "3", "4", "inf")
    shift = GroupElement.from_maps(
        1,
        {"0": "1", "1": "2", "2": "3", "3": "4", "4": "0", "inf": "inf"},
        {v: 0 for v in sites6},
    )
    scale = GroupElement.from_maps(
        1,
        {"0": "0", "1": "2", "2": "4", "3": "1", "4": "3", "inf": "inf"},
        {v: 0 for v in sites6},
    )
    invert = GroupElement.from_maps(
        1,
        {"0": "inf", "inf": "0", "1": "1", "2": "3", "3": "2", "4": "4"},
        {v: 0 for v in sites6},
    )
    pgl25 = closure([shift, scale, invert], cap=1000)

    sites4 = ("0", "1", "2", "3")
    c3 = GroupElement.from_maps(
        1, {"0": "1", "1": "2", "2": "0", "3": "3"}, {v: 0 for v in sites4}
    )
    double = GroupElement.from_maps(
        1, {"0": "1", "1": "0", "2": "3", "3": "2"}, {v: 0 for v in sites4}
    )
    a4_q = _labeled_sigma_closure([(c3, 1), (double, 0)], 3)
    return {"pgl25": pgl25, "a4_q": a4_q, "a4_sites": sites4}


def descriptor_to_dict(desc: GroupDescriptor) -> dict:
    """Stable JSON document for reports: identity of the case plus the
    certificates that justify it.  Raw membership tables are summarized by
    size (they can run to thousands of elements)."""
    doc = {
        "case": desc.case,
        "home": desc.home,
        "sites": list(desc.sites),
        "n": desc.n,
        "m": desc.m,
        "original_m": desc.original_m,
        "d": desc.d,
        "order": str(desc.order),
        "certificates": desc.certificates,
    }
    if desc.perm_table is not None:
        doc["perm_table_size"] = len(desc.perm_table)
    if desc.q_table is not None:
        doc["q_table_size"] = len(desc.q_table)
    if desc.element_table is not None:
        doc["element_table_size"] = len(desc.element_table)
    return doc
