import itertools

import numpy as np
import pytest

from raygraph.coding import A, alpha, parse_code
from raygraph.graphs import (LOOP, RAY, axis_certificate, build_slice, delta_sample, distance,
                             enumerate_codes, independence_check, lipschitz_scan, lower_bound, qi_check)
from raygraph.model import canonical, geometric_intersection, is_simple


def brute_codes(kind, L, N):
    """Every raw word within the bounds that is its own canonical form and simple."""
    out = set()
    atts = [f" @p{j}" for j in range(-N, N + 1)] if kind == RAY else [""]
    for n in range(0 if kind == RAY else 1, L + 1):
        for w in itertools.product(range(-N, N + 1), repeat=n):
            for north in ("", "^ "):
                for at in atts:
                    c = parse_code(north + " ".join(f"s{x}" for x in w) + at)
                    if canonical(c, window=N + 1) == c and is_simple(c):
                        out.add(c)
    return out


@pytest.mark.parametrize("kind,L,N,size", [(RAY, 2, 1, 8), (RAY, 3, 2, 144), (LOOP, 3, 2, 11), (LOOP, 4, 2, 31)])
def test_enumeration_matches_brute_force(kind, L, N, size):
    codes, _ = enumerate_codes(kind, L, N)
    assert len(codes) == size
    assert set(codes) == brute_codes(kind, L, N)


@pytest.mark.parametrize("kind,L,N", [(RAY, 3, 2), (LOOP, 4, 2)])
def test_slice_edges_match_pairwise_oracle(kind, L, N):
    sl = build_slice(kind, L, N, use_numba=False)
    fast = build_slice(kind, L, N, use_numba=True)
    assert sl.adj == fast.adj
    vs = sl.vertices
    want = {(i, j) for i in range(len(vs)) for j in range(i + 1, len(vs))
            if geometric_intersection(vs[i], vs[j]) == 0}
    got = {(sl.index[u], sl.index[v]) for u, v in sl.edges()}
    assert got == want


def test_slice_sizes_frozen():
    assert build_slice(RAY, 3, 2).n_edges == 1924
    assert build_slice(LOOP, 4, 2).n_edges == 141


def test_lipschitz_scan_matches_slice():
    seeds = [alpha(k) for k in range(3)]
    r = lipschitz_scan(3, 2, seeds)
    sl = build_slice(RAY, 3, 2, seeds)
    assert r["vertices"] == len(sl.vertices)
    assert r["edges"] == sl.n_edges
    assert r["violations"] == 0
    assert max(abs(A(u) - A(v)) for u, v in sl.edges()) <= 1


@pytest.mark.parametrize("n", range(7))
def test_axis_is_geodesic(n):
    cert = axis_certificate(n)
    assert cert.exact and cert.upper == n


def test_lower_bounds():
    assert lower_bound(alpha(0), alpha(0)) == (0, "equal")
    assert lower_bound(alpha(0), alpha(1)) == (1, "distinct")
    assert lower_bound(alpha(0), alpha(2)) == (2, "I-bound")
    assert lower_bound(alpha(0), alpha(5)) == (5, "A-bound")


def test_distance_certificate_in_slice():
    sl = build_slice(RAY, 3, 2, [alpha(2)])
    cert = distance(sl, alpha(0), alpha(2))
    assert cert.exact and cert.upper == 2
    for x, y in zip(cert.path, cert.path[1:]):
        assert geometric_intersection(x, y) == 0


def test_bfs_matches_scipy():
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path
    sl = build_slice(LOOP, 4, 2)
    rows = [i for i, a in enumerate(sl.adj) for _ in a]
    cols = [j for a in sl.adj for j in a]
    D = shortest_path(csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(sl.vertices),) * 2),
                      unweighted=True)
    dist, _ = sl.bfs(sl.vertices[0])
    want = np.where(np.isinf(D[0]), -1, D[0]).astype(int)
    assert list(dist) == list(want)


def test_qi_check_small():
    pool = build_slice(RAY, 2, 1).vertices
    pairs = list(itertools.combinations(pool, 2))
    r = qi_check(pairs)
    assert r["violations"] == 0 and r["companion_violations"] == 0
    assert r["certified"] + r["undecided"] == len(pairs)


def test_delta_sample_is_seeded():
    sl = build_slice(LOOP, 4, 2)
    assert delta_sample(sl, 30, 5) == delta_sample(sl, 30, 5)
    assert delta_sample(sl, 30, 5)["max_thinness"] <= 2


def test_independence_small():
    r = independence_check(2, 2)
    assert r["ok"]
    assert [(b["n"], b["m"], b["certified_lower"]) for b in r["bounds"]] == [(2, 2, 3)]
