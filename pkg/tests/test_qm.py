import pytest

from raygraph.coding import alpha
from raygraph.mcg import PHI, T1, T2, apply, h
from raygraph.qm import (A_neg, AxisSegment, axis_positions, axis_ray, c_w, count_copies, homogenize,
                         move_words, non_reversal_check, q_w, sigma)


def test_axis_ray_extends_both_ways():
    assert [axis_ray(k) for k in range(4)] == [alpha(k) for k in range(4)]
    assert apply(h(), axis_ray(-1)) == alpha(0)
    # alpha_{-n} is the mirror of phi(alpha_{n-1})
    assert [A_neg(axis_ray(-n)) for n in range(1, 5)] == [0, 1, 2, 3]


def test_sigma_is_involution():
    for k in range(4):
        assert sigma(sigma(alpha(k))) == alpha(k)


def test_axis_positions():
    assert 2 in axis_positions(alpha(2), 0)
    assert -2 in axis_positions(axis_ray(-2), 0)


def test_segment_basics():
    w = AxisSegment(0, 2)
    assert len(w) == 2
    assert str(w) == "alpha[0..2]" and str(w.inverse()) == "alpha[2..0]"
    assert w.inverse().indices == [2, 1, 0]


def test_count_copies_on_axis():
    path = [alpha(k) for k in range(7)]
    w = AxisSegment(0, 2)
    r = count_copies(path, w)
    assert (r["lower"], r["upper"]) == (3, 3)
    assert (count_copies(path, w.inverse())["upper"]) == 0
    assert (count_copies(path[::-1], w)["upper"]) == 0


@pytest.mark.parametrize("k", [1, 2])
def test_c_w_on_powers_of_h(k):
    w = AxisSegment(0, 2)
    assert c_w(h() ** (2 * k), w, alpha(0))["interval"] == [k, k]
    assert c_w(h() ** (2 * k), w.inverse(), alpha(0))["interval"] == [0, 0]


def test_q_w_vanishes_on_twists():
    w = AxisSegment(0, 2)
    for gen in (T1, T2):
        assert q_w(gen, w, alpha(0))["interval"] == [0, 0]


def test_homogenization_of_h2():
    seq = homogenize(h() ** 2, AxisSegment(0, 2), alpha(0), 2)["sequence"]
    assert seq == [[1.0, 1.0], [1.0, 1.0]]


def test_move_words_count():
    assert sum(1 for _ in move_words(1)) == 6
    assert sum(1 for _ in move_words(2)) == 31


def test_non_reversal_on_generators():
    w = AxisSegment(-2, 2)
    for mc in (T1, T2, PHI, h()):
        r = non_reversal_check(w, mc)
        assert r["verdict"] != "reversed"
        assert r["I_invariant"]
