import random

import pytest

from raygraph.coding import parse_code
from raygraph.graphs import LOOP, build_slice, enumerate_codes
from raygraph.model import geometric_intersection, is_essential_loop, is_simple
from raygraph.unicorn import (OrientedLoop, check_subpath_property, check_thin_triangle, unicorn_arcs,
                              unicorn_path)


def loop(text, reverse=False):
    return OrientedLoop(parse_code(text, loop=True), reverse)


@pytest.fixture(scope="module")
def loops():
    codes, _ = enumerate_codes(LOOP, 6, 2)
    return codes


def test_frozen_example():
    a, b = loop("s1 s-1 s2 s-1"), loop("s0 s2 s-2 s1")
    assert [str(c) for c in unicorn_path(a, b).vertices] == ["s1 s-1 s2 s-1", "s1", "s0 s2 s-2 s1"]
    assert [str(c) for c in unicorn_path(a, b.flipped()).vertices] == [
        "s1 s-1 s2 s-1", "s1 s-1 s2 s1", "s1 s-2 s2 s1", "s0 s2 s-2 s1"]


def test_equal_loops_give_single_vertex():
    a = loop("s1 s-1")
    assert unicorn_path(a, a).vertices == (a.loop,)


def test_disjoint_pairs_give_edges():
    sl = build_slice(LOOP, 4, 2)
    for u, v in list(sl.edges())[:100]:
        assert unicorn_path(OrientedLoop(u), OrientedLoop(v)).vertices == (u, v)


def test_paths_are_paths_of_simple_loops(loops):
    rng = random.Random(1)
    for _ in range(60):
        a, b = (OrientedLoop(c, rng.random() < 0.5) for c in rng.sample(loops, 2))
        vs = unicorn_path(a, b).vertices
        assert vs[0] == a.loop and vs[-1] == b.loop
        assert len(vs) - 2 <= geometric_intersection(a.loop, b.loop)
        for c in vs:
            assert is_simple(c) and is_essential_loop(c)
        for x, y in zip(vs, vs[1:]):
            assert geometric_intersection(x, y) == 0


def test_reversed_roles_give_reversed_path(loops):
    rng = random.Random(2)
    for _ in range(40):
        a, b = (OrientedLoop(c, rng.random() < 0.5) for c in rng.sample(loops, 2))
        assert set(unicorn_arcs(a, b)) == set(unicorn_arcs(b, a))


def test_thin_triangles_and_subpaths(loops):
    rng = random.Random(4)
    for _ in range(25):
        a, b, d = (OrientedLoop(c, rng.random() < 0.5) for c in rng.sample(loops, 3))
        r = check_thin_triangle(a, b, d)
        assert r["thin"], r
        n = len(r["path"]) - 1
        for i in range(n + 1):
            for j in range(i, n + 1):
                assert check_subpath_property(a, b, i, j)["result"] != "violation"
