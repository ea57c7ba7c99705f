"""Case routing and membership predicates, pinned to hand-checked orders."""

import math

import pytest

from twistpuzzle.classifier import (
    classify,
    descriptor_to_dict,
    exceptional_tables,
    group_order,
    is_solvable,
)
from twistpuzzle.dynamics import PuzzleState, apply_moves, solved_state
from twistpuzzle.errors import UndecidedError
from twistpuzzle.graph import TwistGraph, step_from_str
from twistpuzzle.groups import GroupElement, multiply, permutation_sign
from twistpuzzle.presets import preset


def rotate_tile(s, v, k, m):
    rot = dict(s.rot)
    rot[v] = (rot[v] + k) % m
    return PuzzleState(s.blank, dict(s.tile_at), rot)


def swap_tiles(s, v, w):
    tiles = dict(s.tile_at)
    tiles[v], tiles[w] = tiles[w], tiles[v]
    return PuzzleState(s.blank, tiles, dict(s.rot))


def test_case_routing_and_orders():
    expected = {
        ("theta5", frozenset({("e1", 1), ("e2", 1), ("e4", 1)}), 3): ("Theta5Mod3", 324),
        ("theta5", frozenset({("e1", 1)}), 3): ("Theta5Plain", 972),
        ("theta7", frozenset({("einfc", 1)}), 2): ("Theta7Parity", 3840),
        ("k4", frozenset({("e12", 1)}), 2): ("FullGenSym", 48),
        ("k33", frozenset({("a1b1", 1)}), 3): ("EvenPermFullRot", 14580),
        ("cycle:4", frozenset({("e0", 1)}), 3): ("Cyclic", 9),
    }
    for (name, twists, m), (case, order) in expected.items():
        desc = classify(preset(name, m=m, twists=dict(twists)))
        assert (desc.case, desc.order) == (case, order), name
        assert group_order(desc) == order


def test_fifteen_plus_four_descriptor():
    desc = classify(preset("fifteen_plus_four"))
    assert desc.case == "TwistBipartiteParity"
    assert desc.n == 19 and desc.m == 4 and desc.d == 1
    assert desc.order == 4**19 * math.factorial(19) // 2
    assert desc.order == 16718775295186229425864704000
    blue = {v for v, c in desc.certificates["twist_coloring"].items() if c == desc.certificates["twist_coloring"]["a"]}
    assert blue == {"a", "d", "e", "f", "k", "l", "m", "n", "s", "t"}


def test_bipartite_boards_get_alternating_with_full_rotation():
    desc = classify(preset("grid:4x4"))
    assert desc.case == "EvenPermFullRot"
    assert desc.order == math.factorial(15) // 2 == 653837184000
    desc = classify(preset("k33", m=3, twists={"a1b1": 1}))
    assert "bipartition" in desc.certificates


def test_small_and_degenerate_boards_fall_back():
    fig8 = classify(preset("figure8"))
    assert fig8.case == "OracleFallback" and fig8.order == 8
    assert fig8.element_table is not None

    path3 = TwistGraph(2, ("a", "b", "c"), [("e1", "a", "b", 1), ("e2", "b", "c", 1)])
    tree = classify(path3)
    assert tree.case == "OracleFallback" and tree.order == 1

    # two-vertex multigraph: one tile, rotations only (Z/m once twists differ)
    c2 = TwistGraph(3, ("a", "b"), [("e1", "a", "b", 0), ("e2", "a", "b", 1)])
    two = classify(c2)
    assert two.case == "OracleFallback" and two.order == 3
    c2w = TwistGraph(4, ("a", "b"), [("e1", "a", "b", 0), ("e2", "a", "b", 1)])
    assert classify(c2w).order == 4

    with pytest.raises(UndecidedError):
        classify(preset("figure8"), oracle_cap=3)


def test_cycles_stay_cyclic():
    assert classify(preset("grid:2x2")).case == "Cyclic"
    assert classify(preset("grid:2x2")).order == 3
    desc = classify(preset("cycle:4", m=4, twists={"e0": 2}))
    assert desc.case == "Cyclic" and desc.order == 6


def test_membership_predicates_on_pop_out_states():
    g = preset("fifteen_plus_four")
    desc = classify(g)
    s = solved_state(g)
    assert is_solvable(g, s, desc)
    assert not is_solvable(g, rotate_tile(s, "e", 1, g.m), desc)
    assert not is_solvable(g, swap_tiles(s, "e", "i"), desc)
    assert is_solvable(g, rotate_tile(swap_tiles(s, "e", "i"), "e", 1, g.m), desc)

    g = preset("k33", m=3, twists={"a1b1": 1})
    desc = classify(g)
    s = solved_state(g)
    assert not is_solvable(g, swap_tiles(s, "a2", "a3"), desc)  # odd permutation
    assert is_solvable(g, rotate_tile(s, "a2", 1, g.m), desc)  # rotations are free

    g = preset("cycle:4", m=3, twists={"e0": 1})
    desc = classify(g)
    s = solved_state(g)
    assert not is_solvable(g, rotate_tile(s, "v1", 1, g.m), desc)


def test_is_solvable_accepts_replayed_walks():
    g = preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})
    desc = classify(g)
    walk = [step_from_str(t) for t in ["e1+", "e2+", "e4-", "e3-"] * 2]
    s = apply_moves(g, solved_state(g), walk)
    assert is_solvable(g, s, desc)
    # and without a precomputed descriptor
    assert is_solvable(g, s)


def test_descriptor_home_must_match_state_home():
    g = preset("figure8")
    desc = classify(g, "u")
    s = solved_state(g, "r")
    with pytest.raises(ValueError):
        is_solvable(g, s, desc)
    # classified at the right home it works
    assert is_solvable(g, s, classify(g, "r"))


def test_reduce_element_divisibility():
    # triangle, m=6, one twist of 2: d == 2, reduced modulus 3
    g = TwistGraph(6, ("a", "b", "c"), [("e1", "a", "b", 0), ("e2", "b", "c", 2), ("e3", "c", "a", 0)])
    desc = classify(g)
    assert desc.d == 2 and desc.m == 3
    sites = desc.sites
    ident = {v: v for v in sites}
    odd = GroupElement.from_maps(6, ident, {sites[0]: 1, sites[1]: 0})
    assert desc.reduce_element(odd) is None  # 1 is not divisible by d=2
    even = GroupElement.from_maps(6, ident, {sites[0]: 4, sites[1]: 2})
    red = desc.reduce_element(even)
    assert red is not None and red.m == 3


def test_exceptional_tables_shapes():
    tables = exceptional_tables()
    pgl = tables["pgl25"]
    assert len(pgl) == 120
    signs = {permutation_sign(el.sigma) for el in pgl}
    assert signs == {1, -1}  # odd permutations are present
    a4 = tables["a4_q"]
    assert len(a4) == 12
    assert set(a4.values()) == {0, 1, 2}
    ident = tuple(range(4))
    assert a4[ident] == 0
    # q is a homomorphism to Z/3: label of a product = sum of labels
    sites = tables["a4_sites"]
    elems = {sig: GroupElement(3, sites, sig, (0,) * 4) for sig in a4}
    for sig1 in list(a4)[:6]:
        for sig2 in list(a4)[:6]:
            prod = multiply(elems[sig1], elems[sig2]).sigma
            assert a4[prod] == (a4[sig1] + a4[sig2]) % 3


def test_descriptor_to_dict_schema():
    doc = descriptor_to_dict(classify(preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})))
    assert doc["case"] == "Theta5Mod3"
    assert doc["order"] == "324"
    assert doc["perm_table_size"] == 12 and doc["q_table_size"] == 12
    assert doc["certificates"]["reduced_m"] == 3
    assert isinstance(doc["certificates"]["gauge"], dict)
