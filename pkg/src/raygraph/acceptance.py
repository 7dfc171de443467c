"""The acceptance battery, shared by ``raygraph verify`` and the test suite.

Each check returns ``(ok, detail)`` where ``detail`` is JSON-ready.
"""

from __future__ import annotations

import itertools
import random
import time

from .coding import alpha, gamma, long, parse_code
from .graphs import (LOOP, RAY, axis_certificate, build_slice, delta_sample, enumerate_codes,
                     independence_check, lipschitz_scan, qi_check)
from .mcg import T1, T2, apply, g, h
from .model import canonical, crossing_counts
from .qm import AxisSegment, homogenize, non_reversal_search, q_w
from .unicorn import (OrientedLoop, check_subpath_property, check_thin_triangle, unicorn_path)

ALPHA2 = "s1 s-1 s2 s1 s-1 s1 s0 s-1 s1 s-1 @p2"


def c1_coding():
    ok = str(alpha(2)) == ALPHA2
    lens = [long(alpha(k)) for k in range(1, 13)]
    rec = all(lens[i + 1] == 3 * lens[i] + 2 for i in range(len(lens) - 1))
    odd = all(x % 2 for x in lens)
    return ok and rec and odd, {"alpha2": str(alpha(2)), "long": lens, "recursion": rec, "odd": odd}


def _random_word(rng, n_max=12, N=4):
    while True:
        k = rng.randint(1, n_max)
        w = [rng.randint(-N, N)]
        while len(w) < k:
            x = rng.randint(-N, N)
            if x != w[-1]:
                w.append(x)
        return w


def c2_roundtrip(samples=1000, seed=0):
    fam = [alpha(k) for k in range(7)] + [gamma(k) for k in range(7)]
    fixed = [c for c in fam if canonical(c) != c]
    rng = random.Random(seed)
    not_idem = []
    for _ in range(samples):
        w = _random_word(rng)
        text = " ".join(f"s{x}" for x in w)
        c = parse_code(text + f" @p{rng.randint(-4, 4)}") if rng.random() < 0.7 else parse_code(text)
        once = canonical(c)
        if canonical(once) != once:
            not_idem.append(str(c))
    return not fixed and not not_idem, {"family_not_fixed": [str(c) for c in fixed],
                                        "not_idempotent": not_idem[:5], "samples": samples, "seed": seed}


def c3_intersections():
    rows, ok = [], True
    prev = None
    for k in range(2, 9):
        p = crossing_counts(alpha(0), alpha(k))[1]
        n = crossing_counts(alpha(k), alpha(0))[1]
        want = ((3 ** (k - 1) + 2 * k - 3) // 4, (3 ** (k - 1) - 2 * k + 1) // 4)
        good = (p, n) == want
        if prev is not None:
            good &= (p, n) == (2 * prev[0] + prev[1] + 1, prev[0] + 2 * prev[1])
        ok &= good
        rows.append({"k": k, "I(a0,ak)": p, "I(ak,a0)": n, "expected": list(want), "ok": good})
        prev = (p, n)
    return ok, rows


def c4_translation():
    H = h()
    ha = [apply(H, alpha(k)) == alpha(k + 1) for k in range(7)]
    G = g()
    gg = [apply(G, gamma(2 * n)) == gamma(2 * n + 2) for n in range(4)]
    return all(ha) and all(gg), {"h_alpha": ha, "g_gamma": gg}


def c5_axis():
    rows = []
    for n in range(9):
        cert = axis_certificate(n)
        rows.append({"n": n, "lower": cert.lower, "upper": cert.upper, "exact": cert.exact,
                     "by": cert.lower_by})
    return all(r["exact"] and r["upper"] == r["n"] for r in rows), rows


def c6_lipschitz(L=6, N=4):
    r = lipschitz_scan(L, N, seeds=[alpha(k) for k in range(4)])
    return r["violations"] == 0 and r["edges"] >= 10 ** 4, r


def _oriented_sample(codes, rng, k):
    return [OrientedLoop(c, rng.random() < 0.5) for c in rng.sample(codes, k)]


def c7_unicorn(triples=200, seed=0):
    codes, _ = enumerate_codes(LOOP, 8, 3)
    rng = random.Random(seed)
    thick, bad_sub, queries = [], [], 0
    for _ in range(triples):
        a, b, d = _oriented_sample(codes, rng, 3)
        r = check_thin_triangle(a, b, d)
        if not r["thin"]:
            thick.append(r)
        n = len(r["path"]) - 1
        for i in range(n + 1):
            for j in range(i, n + 1):
                queries += 1
                s = check_subpath_property(a, b, i, j)
                if s["result"] == "violation":
                    bad_sub.append(s)
    # disjoint pairs give the two-vertex path
    sl = build_slice(LOOP, 4, 2)
    bad_pair = 0
    for u, v in itertools.islice(sl.edges(), 300):
        p = unicorn_path(OrientedLoop(u), OrientedLoop(v))
        bad_pair += p.vertices != (u, v)
    ok = not thick and not bad_sub and bad_pair == 0
    return ok, {"loops": len(codes), "triples": triples, "seed": seed, "thick": len(thick),
                "subpath_queries": queries, "subpath_violations": len(bad_sub),
                "disjoint_pair_failures": bad_pair}


def c8_qi(n_pairs=200, seed=0):
    pool = build_slice(RAY, 2, 2).vertices
    rng = random.Random(seed)
    pairs = [tuple(rng.sample(pool, 2)) for _ in range(n_pairs)] + [(alpha(0), alpha(n)) for n in range(1, 4)]
    r = qi_check(pairs)
    ok = r["certified"] >= 50 and r["violations"] == 0 and r["companion_violations"] == 0
    return ok, {k: v for k, v in r.items() if k not in ("pairs", "companions")}


def c9_quasimorphism(m=2):
    w = AxisSegment(0, m)
    p = alpha(0)
    hm = h() ** m
    rows, ok = [], True
    for k in range(1, 4):
        r = q_w(hm ** k, w, p)
        good = r["c_w"]["interval"] == [k, k] and r["c_w_inv"]["interval"] == [0, 0]
        ok &= good
        rows.append({"k": k, "c_w": r["c_w"]["interval"], "c_w_inv": r["c_w_inv"]["interval"]})
    seq = homogenize(hm, w, p, 3)["sequence"]
    ok &= all(s == [1.0, 1.0] for s in seq)
    t = []
    for gen in (T1, T2):
        for k in range(1, 4):
            dist = crossing_counts(p, apply(gen ** k, p))[0] == 0 and apply(gen ** k, p) != p
            val = q_w(gen ** k, w, p)["interval"]
            t.append({"g": f"{gen}^{k}", "d_is_1": dist, "q": val})
            ok &= dist and val == [0, 0]
    return ok, {"c_w": rows, "q_tilde_h^m": seq, "t1_t2": t,
                "restriction": "infimum over paths inside the 1-neighbourhood of a certified geodesic"}


def c10_non_reversal(max_len=4):
    r = non_reversal_search(AxisSegment(-5, 5), max_len)
    return r["ok"], r


def c11_independence():
    r = independence_check(3, 3)
    return r["ok"], r


def c12_delta(n_triangles=200, seed=0):
    sl = build_slice(LOOP, 6, 3)
    r = delta_sample(sl, n_triangles, seed)
    return r["max_thinness"] <= 20, r


CRITERIA = [
    ("1 coding exactness", c1_coding),
    ("2 round-trip", c2_roundtrip),
    ("3 intersection closed forms", c3_intersections),
    ("4 translation action", c4_translation),
    ("5 axis geodesity", c5_axis),
    ("6 A-Lipschitz", c6_lipschitz),
    ("7 unicorn lemmas", c7_unicorn),
    ("8 QI bounds", c8_qi),
    ("9 quasimorphism values", c9_quasimorphism),
    ("10 non-reversal", c10_non_reversal),
    ("11 independence", c11_independence),
    ("12 hyperbolicity sampling", c12_delta),
]


def run_all(only=None, log=None) -> list:
    out = []
    for name, fn in CRITERIA:
        if only and name.split()[0] not in only:
            continue
        t = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, {"error": repr(exc)}
        row = {"criterion": name, "ok": bool(ok), "seconds": round(time.time() - t, 2), "detail": detail}
        if log:
            log(f"{'PASS' if ok else 'FAIL'} {name} ({row['seconds']}s)")
        out.append(row)
    return out
