import json

import pytest

from raygraph.cli import main

ALPHA2 = "s1 s-1 s2 s1 s-1 s1 s0 s-1 s1 s-1 @p2"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def test_gen_alpha2(capsys):
    assert run(capsys, "gen", "--alpha", "2")[:2] == (0, ALPHA2)


def test_intersect_signed(capsys):
    code, out, _ = run(capsys, "intersect", "--signed", "--json", "s0 @p0", ALPHA2)
    assert json.loads(out) == {"c1": "s0 @p0", "c2": ALPHA2, "I": 1, "forward": 1, "backward": 0}


def test_act_h_on_alpha0(capsys):
    assert run(capsys, "act", "t1 t2 t1", "s0 @p0")[1] == "s1 s-1 @p1"


def test_canon(capsys):
    assert run(capsys, "canon", "s1 s2 s2 s1 @p1")[1] == "@p1"


def test_distance_report(capsys):
    code, out, err = run(capsys, "distance", "--L", "3", "s0 @p0", ALPHA2)
    r = json.loads(out)
    assert (r["lower"], r["upper"], r["exact"]) == (2, 2, True)
    assert "slice" in err


def test_unicorn_report(capsys):
    code, out, _ = run(capsys, "unicorn", "s1 s-1 s2 s-1", "s0 s2 s-2 s1", "--via", "s1 s-1")
    r = json.loads(out)
    assert r["path"] == ["s1 s-1 s2 s-1", "s1", "s0 s2 s-2 s1"]
    assert r["thin_triangle"]["thin"]


def test_qm_report(capsys):
    r = json.loads(run(capsys, "qm", "h h")[1])
    assert r["interval"] == [1, 1]


def test_reports_are_deterministic(capsys):
    a = run(capsys, "delta", "--L", "4", "--N", "2", "--triangles", "20", "--seed", "3")[1]
    b = run(capsys, "delta", "--L", "4", "--N", "2", "--triangles", "20", "--seed", "3")[1]
    assert a == b


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--only", "1,3")
    assert code == 0
    assert [r["ok"] for r in json.loads(out)] == [True, True]
    assert "PASS 1" in err


@pytest.mark.parametrize("argv", [["canon", "sx"], ["act", "t9", "s0 @p0"], ["bogus"], ["gen"]])
def test_parse_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2
