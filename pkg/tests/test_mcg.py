import random

import pytest

from raygraph.coding import alpha, gamma, parse_code
from raygraph.mcg import PHI, T1, T2, apply, apply_many, g, h, h2, invert, parse_moves
from raygraph.model import canonical, crossing_counts, geometric_intersection

SAMPLE = ["s0 @p0", "s1 s-1 @p1", "s2 s-1 @p-2", "^ s-2 s0 @p-2", "s1 s-1 s2", "@p1"]


@pytest.mark.parametrize("k", range(6))
def test_h_translates_axis(k):
    assert apply(h(), alpha(k)) == alpha(k + 1)


def test_h_inverse_translates_back():
    for k in range(1, 5):
        assert apply(invert(h()), alpha(k)) == alpha(k - 1)


def test_generator_images_of_alpha0():
    assert str(apply(T1, alpha(0))) == "@p1"
    assert str(apply(T2, alpha(0))) == "s-1 @p-1"
    assert str(apply(PHI, alpha(1))) == "^ s-2 s0 @p-2"


@pytest.mark.parametrize("text", SAMPLE)
@pytest.mark.parametrize("mc", [T1, T2, PHI, h(), h2()])
def test_move_then_inverse_is_identity(text, mc):
    c = parse_code(text)
    assert apply(invert(mc), apply(mc, c)) == canonical(c)


def test_phi_is_an_involution():
    for text in SAMPLE:
        c = parse_code(text)
        assert apply(PHI, apply(PHI, c)) == apply(PHI * PHI, c)
        assert apply(PHI * PHI, c) == apply(parse_moves(""), c)


def test_action_preserves_intersection():
    rng = random.Random(3)
    codes = [parse_code(t) for t in SAMPLE] + [alpha(2), gamma(2)]
    for _ in range(20):
        a, b = rng.sample(codes, 2)
        mc = rng.choice([T1, T2, PHI, T1 * PHI])
        assert crossing_counts(apply(mc, a), apply(mc, b))[0] == crossing_counts(a, b)[0]


def test_composition_order():
    # rightmost acts first
    c = alpha(0)
    assert apply(T1 * T2, c) == apply(T1, apply(T2, c))


def test_parse_moves():
    assert parse_moves("t1 t2 t1") == h()
    assert parse_moves("h'") == invert(h())
    assert str(parse_moves("phi t1'")) == "phi t1'"
    with pytest.raises(ValueError):
        parse_moves("t3")


def test_apply_many_matches_apply():
    codes = [alpha(k) for k in range(4)]
    assert apply_many(h(), codes) == [apply(h(), c) for c in codes]


def test_translates_stay_disjoint():
    for k in range(4):
        assert geometric_intersection(apply(h(), alpha(k)), apply(h(), alpha(k + 1))) == 0
