import random

import pytest

from raygraph import _kernels
from raygraph.coding import alpha, parse_code
from raygraph.model import (WindowError, build_model, canonical, crossing_counts, encode,
                            geometric_intersection, hat, is_essential_loop, is_simple, is_tight,
                            positive_intersection, realize, shared_model, tighten)


def _closed(k):
    return (3 ** (k - 1) + 2 * k - 3) // 4, (3 ** (k - 1) - 2 * k + 1) // 4


@pytest.mark.parametrize("k", range(2, 8))
def test_signed_counts_match_closed_form(k):
    assert positive_intersection(alpha(0), alpha(k)) == _closed(k)[0]
    assert positive_intersection(alpha(k), alpha(0)) == _closed(k)[1]


def test_geometric_is_sum_of_signed():
    for k in range(1, 6):
        geom, fwd = crossing_counts(alpha(0), alpha(k))
        assert geom == fwd + positive_intersection(alpha(k), alpha(0))


def test_axis_neighbours_are_disjoint(axis):
    for k in range(len(axis) - 1):
        assert geometric_intersection(axis[k], axis[k + 1]) == 0


def test_alpha_is_canonical_and_simple(axis):
    for c in axis:
        assert canonical(c) == c
        assert is_simple(c)


def test_tighten_removes_backtracks():
    c = parse_code("s1 s2 s2 s1 @p1")
    m = shared_model(c)
    a = tighten(m, realize(m, c))
    assert is_tight(a)
    assert str(encode(m, a)) == "@p1"


def test_canonical_independent_of_window():
    c = alpha(2)
    assert canonical(c, window=3) == canonical(c, window=5) == c


def test_window_too_small():
    m = build_model([alpha(1)])
    with pytest.raises(WindowError):
        realize(m, alpha(3))


def test_hat_is_disjoint_essential_loop(axis):
    assert str(hat(alpha(0))) == "s1"
    for c in axis[:5]:
        lp = hat(c)
        assert is_essential_loop(lp)
        assert geometric_intersection(lp, c) == 0


def test_self_crossing_word():
    assert not is_simple(parse_code("s0 s1 s0 s1"))


def _random_code(rng):
    w = [rng.randint(-3, 3)]
    while len(w) < rng.randint(1, 9):
        x = rng.randint(-3, 3)
        if x != w[-1]:
            w.append(x)
    return parse_code(" ".join(f"s{x}" for x in w) + f" @p{rng.randint(-3, 3)}")


def test_numba_and_numpy_kernels_agree():
    rng = random.Random(7)
    for _ in range(150):
        a, b = _random_code(rng), _random_code(rng)
        m = shared_model(a, b)
        la = tighten(m, realize(m, a)).lift
        lb = tighten(m, realize(m, b)).lift
        assert _kernels.count_crossings(m.n, la, lb, True) == _kernels.count_crossings(m.n, la, lb, False)


def test_env_flag_selects_numpy_fallback():
    import os
    import subprocess
    import sys
    code = ("from raygraph import _kernels; from raygraph.coding import alpha;"
            "from raygraph.model import positive_intersection as p;"
            "print(_kernels.HAVE_NUMBA, p(alpha(0), alpha(5)))")
    env = dict(os.environ, RAYGRAPH_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["False", str(_closed(5)[0])]
