import pytest

from raygraph.coding import (A, CodeParseError, Inner, LoopCode, Point, RayCode, alpha, alpha_ring,
                             gamma, long, max_index, parse_code, reduce_word)

ALPHA2 = "s1 s-1 s2 s1 s-1 s1 s0 s-1 s1 s-1 @p2"


def test_alpha2_matches_figure_word():
    assert str(alpha(2)) == ALPHA2


@pytest.mark.parametrize("text", [ALPHA2, "s0 @p0", "^ s-2 s0 @p-2", "s1 s-1", "^ s1 s2", "u3 s1 @q-1", "@p1"])
def test_parse_format_round_trip(text):
    c = parse_code(text)
    assert str(c) == text
    assert parse_code(str(c)) == c


def test_parse_kinds():
    assert isinstance(parse_code("s0 @p0"), RayCode)
    assert isinstance(parse_code("s0 s1"), LoopCode)
    assert parse_code("u3 s1 @q-1").word == (Inner(3), 1)
    assert parse_code("s0 @q2").attach == Point(2, True)


@pytest.mark.parametrize("bad", ["sx", "s1 @p", "s1 @p1 s2", "t1 @p0"])
def test_parse_errors(bad):
    with pytest.raises(CodeParseError):
        parse_code(bad)


def test_loop_and_ray_restrictions():
    with pytest.raises(CodeParseError):
        parse_code("s0 s1", loop=False)
    with pytest.raises(CodeParseError):
        parse_code("s0 @p0", loop=True)


def test_long_recursion_and_parity():
    # long(alpha_1) = 3, then 3x + 2
    lens = [long(alpha(k)) for k in range(1, 13)]
    want = [3]
    while len(want) < 12:
        want.append(3 * want[-1] + 2)
    assert lens == want
    assert all(x % 2 == 1 for x in lens)


def test_alpha_ring_nesting():
    # the inner part of alpha_{k+1} starts with the inner part of alpha_k
    for k in range(1, 6):
        assert alpha_ring(k + 1)[:len(alpha_ring(k))] == alpha_ring(k)


def test_gamma_small():
    assert str(gamma(0)) == "s0 @p0"
    assert gamma(1) == alpha(1)


def test_A_counts_axis_steps():
    assert [A(alpha(k)) for k in range(7)] == list(range(7))
    assert A(parse_code("^ s1 @p1")) == 0


def test_reduce_word_cancels_backtracks():
    assert reduce_word((1, 2, 2, 1)) == ()
    assert reduce_word((1, 2, 2, 3)) == (1, 3)


def test_max_index():
    assert max_index([alpha(3)]) == 3
    assert max_index([parse_code("s-4 s0")]) == 4
