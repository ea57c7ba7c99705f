"""End-to-end acceptance gate.

One test per contract line.  Every expected number is frozen, and the
wall-clock bounds are part of the contract, not advisory.
"""

import time

import test_properties as props

from twistpuzzle.classifier import classify, exceptional_tables, is_solvable
from twistpuzzle.dynamics import (
    apply_moves,
    element_of_path,
    solved_state,
    state_element_bridge,
)
from twistpuzzle.graph import step_from_str
from twistpuzzle.groups import GroupElement, multiply, permutation_sign
from twistpuzzle.oracle import enumerate_reachable, verify_classifier
from twistpuzzle.presets import preset
from twistpuzzle.topology import ClosedPath, fundamental_generators


def timed(fn, bound):
    t0 = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - t0
    assert elapsed < bound, f"needed {elapsed:.2f}s, contract allows {bound}s"
    return out


def test_theta5_enumeration_matches_closed_form():
    g = preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})
    rep = timed(lambda: verify_classifier(g), 5.0)
    assert rep.agree and not rep.undecided
    assert rep.case == "Theta5Mod3"
    assert rep.claimed_order == 324 == rep.enumerated_at_home

    reach = enumerate_reachable(g, solved_state(g))
    assert reach.exhausted and reach.codec.full_space == 9720
    assert reach.explored == 324 * 5  # every blank position carries a coset

    # with a single unit twist the calibration constraint disappears
    g1 = preset("theta5", m=3, twists={"e1": 1})
    rep1 = timed(lambda: verify_classifier(g1), 5.0)
    assert rep1.agree and rep1.case == "Theta5Plain"
    assert rep1.claimed_order == 972 == rep1.enumerated_at_home


def test_theta7_enumeration_matches_closed_form():
    g = preset("theta7", m=2, twists={"einfc": 1})
    rep = timed(lambda: verify_classifier(g), 60.0)
    assert rep.agree and not rep.undecided
    assert rep.case == "Theta7Parity"
    assert rep.claimed_order == 3840 == rep.enumerated_at_home
    reach = enumerate_reachable(g, solved_state(g))
    assert reach.exhausted and reach.codec.full_space == 322560


def test_complete_bipartite_and_cycle_counts():
    for g, case, order in [
        (preset("k4", m=2, twists={"e12": 1}), "FullGenSym", 48),
        (preset("k33", m=3, twists={"a1b1": 1}), "EvenPermFullRot", 14580),
        (preset("cycle:4", m=3, twists={"e0": 1}), "Cyclic", 9),
    ]:
        rep = timed(lambda: verify_classifier(g), 60.0)
        assert rep.agree and not rep.undecided, rep.reason
        assert rep.case == case
        assert rep.claimed_order == order == rep.enumerated_at_home


def test_fifteen_plus_four_pop_out_verdicts():
    g = preset("fifteen_plus_four")
    s0 = solved_state(g)
    occupied = sorted(s0.tile_at)
    u, v = occupied[0], occupied[1]

    rotated = type(s0)(s0.blank, dict(s0.tile_at), {**s0.rot, u: 1})
    swap = dict(s0.tile_at)
    swap[u], swap[v] = swap[v], swap[u]
    swapped = type(s0)(s0.blank, swap, dict(s0.rot))
    both = type(s0)(s0.blank, dict(swap), {**s0.rot, u: 1})

    def verdicts():
        desc = classify(g)
        return (
            is_solvable(g, rotated, desc),
            is_solvable(g, swapped, desc),
            is_solvable(g, both, desc),
        )

    assert timed(verdicts, 0.1) == (False, False, True)


def test_plain_grid_parity_and_small_grid_oracle():
    g = preset("grid:4x4")
    s0 = solved_state(g)
    desc = classify(g)
    swap = dict(s0.tile_at)
    swap["r0c0"], swap["r0c1"] = swap["r0c1"], swap["r0c0"]
    assert not is_solvable(g, type(s0)(s0.blank, swap, dict(s0.rot)), desc)
    cyc = dict(s0.tile_at)
    cyc["r0c0"], cyc["r0c1"], cyc["r1c0"] = cyc["r0c1"], cyc["r1c0"], cyc["r0c0"]
    assert is_solvable(g, type(s0)(s0.blank, cyc, dict(s0.rot)), desc)

    g6 = preset("grid:2x3")
    rep = timed(lambda: verify_classifier(g6), 60.0)
    assert rep.agree and rep.claimed_order == 60 == rep.enumerated_at_home
    reach = enumerate_reachable(g6, solved_state(g6))
    assert reach.codec.full_space == 720 and reach.explored == 360


def test_figure8_loops_do_not_commute():
    g = preset("figure8")
    p = ClosedPath("u", tuple(step_from_str(t) for t in ["ur+", "ur2-"]))
    q = ClosedPath("u", tuple(step_from_str(t) for t in ["ur+", "rb+", "bu+"]))
    el_p, el_q = element_of_path(g, p), element_of_path(g, q)
    pq = multiply(el_q, el_p)  # later loop multiplies on the left
    qp = multiply(el_p, el_q)
    swap = {"b": "r", "r": "b"}
    assert pq == GroupElement.from_maps(g.m, swap, {"r": 0, "b": 1})
    assert qp == GroupElement.from_maps(g.m, swap, {"r": 1, "b": 0})
    assert pq != qp

    # the algebra must match what the board actually does
    s0 = solved_state(g, "u")
    for order, expect in [(p.steps + q.steps, pq), (q.steps + p.steps, qp)]:
        assert state_element_bridge(g, apply_moves(g, s0, order)) == expect


def test_randomized_property_suites():
    props.test_group_axioms()
    props.test_path_element_laws()
    props.test_conjugation_reindexes_rotations()
    props.test_gauge_invariance_of_classification()
    props.test_transport_route_cannot_change_the_verdict()
    props.test_rotation_kernel_generator_shape()


def test_projective_permutation_table():
    table = exceptional_tables()["pgl25"]
    assert len(table) == 120
    assert any(permutation_sign(el.sigma) == -1 for el in table)

    # independently close the board's own loop permutations under composition
    g = preset("theta7", m=2, twists={"einfc": 1})
    home = g.default_home()
    gens = {element_of_path(g, p).sigma for p in fundamental_generators(g, home)}
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = tuple(a[b[i]] for i in range(len(a)))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    assert seen == {el.sigma for el in table}

    desc = classify(g)
    assert desc.perm_table == seen
