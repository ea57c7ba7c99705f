import random

from twistpuzzle.classifier import classify
from twistpuzzle.dynamics import (
    PuzzleState,
    apply_moves,
    scramble,
    solved_state,
    state_element_bridge,
)
from twistpuzzle.graph import TwistGraph
from twistpuzzle.groups import inverse, multiply
from twistpuzzle.oracle import (
    StateCodec,
    enumerate_reachable,
    verify_classifier,
    verify_report_to_dict,
)
from twistpuzzle.presets import preset


def test_codec_key_round_trip():
    rng = random.Random(880)
    for name, kw in [("figure8", {}), ("theta5", {"m": 3, "twists": {"e1": 1}}), ("grid:2x3", {})]:
        g = preset(name, **kw)
        home = g.default_home()
        codec = StateCodec(g, home)
        for _ in range(200):
            s, _ = scramble(g, solved_state(g, home), rng.randrange(0, 40), seed=rng.randrange(10**9))
            tiles, rots, blank = codec.encode_state(s)
            key = codec.key(tiles, rots)
            assert key >= 0
            t2, r2, b2 = codec.decode(key)
            assert (t2, r2, b2) == (tiles, rots, blank)
            assert codec.to_state(key) == s


def test_figure8_enumeration_counts():
    g = preset("figure8")
    reach = enumerate_reachable(g, solved_state(g))
    assert reach.exhausted
    assert reach.explored == 24  # 3 blank spots x 2 placements x 2^2 rotations
    assert len(reach.by_home) == 8
    counts = reach.blank_position_counts()
    assert sum(counts.values()) == 24
    assert counts == {"u": 8, "r": 8, "b": 8}


def test_theta5_enumeration_counts():
    g = preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})
    reach = enumerate_reachable(g, solved_state(g))
    assert reach.exhausted
    assert (reach.explored, len(reach.by_home)) == (1620, 324)
    assert reach.codec.full_space == 9720


def test_cap_stops_early():
    g = preset("grid:2x3")
    reach = enumerate_reachable(g, solved_state(g), cap=50)
    assert not reach.exhausted
    assert reach.explored <= 50
    full = enumerate_reachable(g, solved_state(g))
    assert full.exhausted and full.explored == 360
    assert len(full.by_home) == 60
    assert full.codec.full_space == 720


def test_membership_and_symmetry_of_reachability():
    g = preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})
    home = g.default_home()
    s0 = solved_state(g, home)
    fwd = enumerate_reachable(g, s0)
    scrambled, _ = scramble(g, s0, 19, seed=21)
    assert scrambled in fwd
    assert s0 in enumerate_reachable(g, scrambled)

    # a popped-out rotation is unreachable, in both directions
    rot = dict(s0.rot)
    rot["top"] = 1
    popped = PuzzleState(s0.blank, dict(s0.tile_at), rot)
    assert popped not in fwd
    assert s0 not in enumerate_reachable(g, popped)


def test_by_home_is_subgroup_closed():
    g = preset("k4", m=2, twists={"e12": 1})
    reach = enumerate_reachable(g, solved_state(g))
    assert reach.exhausted and len(reach.by_home) == 48
    rng = random.Random(5)
    elems = sorted(reach.by_home, key=lambda e: (e.sigma, e.x))
    for _ in range(300):
        a, b = rng.choice(elems), rng.choice(elems)
        assert multiply(a, b) in reach.by_home
        assert inverse(a) in reach.by_home


def test_bridge_agrees_with_enumeration():
    g = preset("figure8")
    home = g.default_home()
    reach = enumerate_reachable(g, solved_state(g, home))
    rng = random.Random(31)
    for _ in range(60):
        s, _ = scramble(g, solved_state(g, home), rng.randrange(0, 30), seed=rng.randrange(10**9))
        if s.blank == home:
            assert state_element_bridge(g, s) in reach.by_home


def test_verify_classifier_agreement_battery():
    boards = [
        preset("figure8"),
        preset("theta5", m=3, twists={"e1": 1}),
        preset("cycle:4", m=3, twists={"e0": 1}),
        preset("grid:2x3"),
        preset("k4", m=2, twists={"e12": 1}),
        TwistGraph(2, ("a", "b", "c"), [("e1", "a", "b", 1), ("e2", "b", "c", 1)]),
        TwistGraph(4, ("a", "b"), [("e1", "a", "b", 0), ("e2", "a", "b", 1)]),
    ]
    for g in boards:
        rep = verify_classifier(g)
        assert rep.agree and not rep.undecided, rep
        assert rep.extra == [] and rep.missing == []
        doc = verify_report_to_dict(rep)
        assert doc["agree"] is True


def test_verify_classifier_undecided_when_too_big():
    rep = verify_classifier(preset("grid:4x4"), cap=10_000)
    assert rep.undecided and not rep.agree
    assert rep.case == "EvenPermFullRot"
    assert rep.claimed_order == 653837184000


def test_verify_catches_a_wrong_claim():
    # hand the verifier a descriptor whose order is falsified by enumeration
    g = preset("figure8")
    rep = verify_classifier(g)
    assert rep.agree
    # sanity: the fallback's element table is exactly the enumerated set
    desc = classify(g)
    reach = enumerate_reachable(g, solved_state(g))
    assert desc.elements_in_original_coords() == reach.by_home
