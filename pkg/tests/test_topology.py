import random

import pytest

from twistpuzzle.errors import CycleConditionError, PathError
from twistpuzzle.graph import Step, TwistGraph, step_from_str
from twistpuzzle.presets import preset
from twistpuzzle.topology import (
    ClosedPath,
    CycleVector,
    check_closed_path,
    check_cycle_vector,
    concat,
    cycle_vector_of_path,
    fundamental_generators,
    is_phi_surjective,
    phi_gamma,
    phi_of_path,
    reduce_steps,
    rotation_kernel_generators,
    walk_vertices,
)

THETA5 = preset("theta5", m=3, twists={"e1": 1, "e2": 1, "e4": 1})


def path(base, tokens):
    return ClosedPath(base, tuple(step_from_str(t) for t in tokens))


def test_walk_and_closed_path_checks():
    p = path("left", ["e1+", "e2+", "e4-", "e3-"])
    assert walk_vertices(THETA5, "left", p.steps) == ["left", "top", "right", "center", "left"]
    check_closed_path(THETA5, p)
    with pytest.raises(PathError):
        check_closed_path(THETA5, path("left", ["e1+", "e2+"]))  # open
    with pytest.raises(PathError):
        check_closed_path(THETA5, path("left", ["e2+", "e1+"]))  # not contiguous
    with pytest.raises(PathError):
        check_closed_path(THETA5, path("top", ["e1+"]))  # wrong base for e1


def test_concat_and_reversal():
    p = path("left", ["e1+", "e1-"])
    q = path("left", ["e3+", "e3-"])
    pq = concat(p, q)
    assert [str(s) for s in pq.steps] == ["e1+", "e1-", "e3+", "e3-"]
    with pytest.raises(PathError):
        concat(p, path("top", ["e2+", "e2-"]))
    r = path("left", ["e1+", "e2+", "e4-", "e3-"]).reversed()
    assert [str(s) for s in r.steps] == ["e3+", "e4+", "e2-", "e1-"]


def test_reduce_steps_cancels_backtracking():
    steps = tuple(step_from_str(t) for t in ["e1+", "e2+", "e2-", "e2+", "e2-", "e1-", "e3+"])
    assert [str(s) for s in reduce_steps(steps)] == ["e3+"]
    assert reduce_steps(()) == ()


def test_cycle_vector_of_path_and_condition():
    p = path("left", ["e1+", "e2+", "e4-", "e3-"])
    omega = cycle_vector_of_path(THETA5, p)
    assert omega.weight("e1") == 1
    assert omega.weight("e4") == THETA5.m - 1  # reverse traversal
    assert omega.weight("e5") == 0
    check_cycle_vector(THETA5, omega)
    with pytest.raises(CycleConditionError):
        check_cycle_vector(THETA5, CycleVector.from_weights({"e1": 1}, THETA5.m))


def test_phi_values():
    p1 = path("left", ["e1+", "e2+", "e4-", "e3-"])
    assert phi_of_path(THETA5, p1) == 1
    assert phi_gamma(THETA5, cycle_vector_of_path(THETA5, p1)) == 1
    # traversing the same cycle backwards negates phi
    assert phi_of_path(THETA5, p1.reversed()) == 2
    # a backtrack contributes nothing
    noop = path("left", ["e1+", "e1-"])
    assert phi_of_path(THETA5, noop) == 0


def test_fundamental_generators_theta5():
    gens = fundamental_generators(THETA5, "left")
    assert len(gens) == 2  # |E| - |V| + 1
    assert [[str(s) for s in p.steps] for p in gens] == [
        ["e3+", "e4+", "e2-", "e1-"],
        ["e5+", "e6+", "e2-", "e1-"],
    ]
    assert [phi_of_path(THETA5, p) for p in gens] == [2, 1]
    for p in gens:
        check_closed_path(THETA5, p)
    # re-rooted at another vertex they still close up there
    for p in fundamental_generators(THETA5, "right"):
        assert p.base == "right"
        check_closed_path(THETA5, p)


def test_is_phi_surjective():
    assert is_phi_surjective(THETA5) == (True, 1)
    zero = preset("theta5", m=3)
    rep = is_phi_surjective(zero)
    assert not rep.surjective and rep.gcd == 3
    assert is_phi_surjective(preset("theta5", m=1)).surjective
    tree = TwistGraph(4, ("a", "b", "c"), [("e1", "a", "b", 2), ("e2", "b", "c", 1)])
    rep = is_phi_surjective(tree)
    assert not rep.surjective and rep.gcd == 4  # no cycles at all


def test_rotation_kernel_generators_shape():
    gens = rotation_kernel_generators(THETA5, "left")
    assert [g.a for g in gens] == [2, 1]
    for g in gens:
        el = g.element
        assert all(s == i for i, s in enumerate(el.sigma))  # pure rotation
        for v, r in el.x_map().items():
            assert r == (g.a if v in g.support else 0)
    # the cube of the first fundamental path's element rotates its support by 2
    assert gens[0].x == {v: (2 if v in gens[0].support else 0) for v in gens[0].x}
    assert gens[0].support  # non-empty on a theta board


def test_rotation_kernel_off_support_zero_on_random_boards():
    rng = random.Random(5150)
    for _ in range(40):
        m = rng.choice([2, 3, 4, 5])
        n = rng.randrange(4, 7)
        verts = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(1, n):
            edges.append((f"t{i}", verts[rng.randrange(i)], verts[i], rng.randrange(m)))
        for k in range(rng.randrange(1, 3)):
            a, b = rng.sample(range(n), 2)
            edges.append((f"c{k}", verts[a], verts[b], rng.randrange(m)))
        g = TwistGraph(m, tuple(verts), edges)
        base = rng.choice(verts)
        for gen in rotation_kernel_generators(g, base):
            x = gen.element.x_map()
            if gen.support:
                assert all(x[v] == (gen.a % m if v in gen.support else 0) for v in x)
            else:
                # identity permutation part: the twist lands on a single vertex
                nonzero = [v for v, r in x.items() if r]
                assert len(nonzero) <= 1
                assert all(x[v] == gen.a % m for v in nonzero)
