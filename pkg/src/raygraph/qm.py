"""Counting quasimorphisms along the axis of h, copy detection and the
non-reversal test.

Copies of a segment w on a path are Gamma-translates g.w sitting on
consecutive vertices; two copies may share an end vertex. Membership in a
Gamma-orbit is not decided here, so copy counts are intervals: the lower end
counts copies with an explicit witness word, the upper end counts segments
that pass the invariant test (same pairwise intersection and positive
intersection numbers as w). Quasimorphism values are intervals for the same
reason, and every report carries the Morse parameter and the path
restriction used.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .coding import A, RayCode, alpha
from .graphs import GraphSlice, lower_bound
from .mcg import (IDENTITY, PHI, MappingClass, Move, T1, T2, apply, h, invert, parse_moves)
from .model import crossing_counts, encode, realize, tighten, build_model


@dataclass(frozen=True)
class MorseConfig:
    B: int = 1

    def __post_init__(self):
        if self.B < 1:
            raise ValueError("B must be at least 1")

    @property
    def min_w_len(self) -> int:
        return 10 * self.B


@lru_cache(maxsize=None)
def axis_ray(k: int) -> RayCode:
    """alpha_k for any integer k; negative indices are h^k(alpha_0)."""
    if k >= 0:
        return alpha(k)
    return apply(h() ** k, alpha(0))


@dataclass(frozen=True)
class AxisSegment:
    start: int
    stop: int
    forward: bool = True

    def __post_init__(self):
        if self.start >= self.stop:
            raise ValueError("axis segment needs start < stop")

    @property
    def indices(self) -> list:
        r = list(range(self.start, self.stop + 1))
        return r if self.forward else r[::-1]

    @property
    def vertices(self) -> list:
        return [axis_ray(k) for k in self.indices]

    def __len__(self) -> int:
        return self.stop - self.start

    def inverse(self) -> "AxisSegment":
        return AxisSegment(self.start, self.stop, not self.forward)

    def __str__(self) -> str:
        a, b = (self.start, self.stop) if self.forward else (self.stop, self.start)
        return f"alpha[{a}..{b}]"


def sigma(c: RayCode) -> RayCode:
    """Mirror image across the equator (reverses orientation)."""
    m = build_model([c])
    a = tighten(m, realize(m, c))
    from .model import NormalArc
    return encode(m, tighten(m, NormalArc(m, a.start, 1 - a.h0, a.edges, a.end)))


def A_neg(c: RayCode) -> int:
    """A read on the negative half-axis: sigma phi sends alpha_{-k-1} to alpha_k."""
    return A(sigma(apply(PHI, c)))


# ---------------------------------------------------------------- direction

def axis_positions(x: RayCode, C: int = 1) -> list:
    """Indices j with d(x, alpha_j) <= C, for C in {0, 1}. A is 1-Lipschitz,
    so only a few j can qualify."""
    if C not in (0, 1):
        raise ValueError("axis positions are certified for C = 0 or 1 only")
    a, an = A(x), A_neg(x)
    cand = {j for j in (a - 1, a, a + 1) if j >= 0}
    if a <= 1:
        cand |= {j for j in (-an - 2, -an - 1, -an) if j < 0}
    out = []
    for j in sorted(cand):
        y = axis_ray(j)
        if x == y or (C == 1 and crossing_counts(x, y)[0] == 0):
            out.append(j)
    return out


def same_direction(g1: Sequence[RayCode], g2: Sequence[RayCode], carrier: Sequence[RayCode], C: int) -> dict:
    """True when some carrier vertex within C of the end of g2 lies on the
    same side of the start of g1 as the end of g1. Carrier positions are
    their indices in ``carrier``."""
    pos = {c: i for i, c in enumerate(carrier)}

    def near(x):
        return [i for i, c in enumerate(carrier) if x == c or (C >= 1 and crossing_counts(x, c)[0] == 0)]

    s1, e1 = pos.get(g1[0]), pos.get(g1[-1])
    if s1 is None or e1 is None:
        return {"verdict": None, "reason": "g1 must lie on the carrier"}
    ends = near(g2[-1])
    hyp_start = bool(near(g2[0])) or g2[0] == g1[0]
    if not ends:
        return {"verdict": None, "reason": "end of g2 not within C of the carrier"}
    side = (e1 > s1)
    verdict = any((r > s1) == side and r != s1 for r in ends)
    return {"verdict": verdict, "witnesses": ends, "start_near_carrier": hyp_start,
            "equal_length": len(g1) == len(g2)}


def non_reversal_check(w: AxisSegment, g: MappingClass, cfg: MorseConfig = MorseConfig()) -> dict:
    """Image of w under g: is it near the axis, which way does it run, and
    does the forbidden drop A(g a_{i+2}) = A(g a_i) - 2 ever show up?"""
    if cfg.B != 1:
        raise ValueError("neighbourhood certificates are implemented for B = 1")
    img = [apply(g, x) for x in w.vertices]
    idx = w.indices
    drops, invariance = [], True
    base = crossing_counts(axis_ray(2), axis_ray(0))[1]
    for s in range(len(img) - 2):
        if idx[s] >= 0 and A(img[s + 2]) == A(img[s]) - 2:
            drops.append(idx[s])
        later, earlier = (img[s + 2], img[s]) if w.forward else (img[s], img[s + 2])
        if crossing_counts(later, earlier)[1] != base:
            invariance = False
    pos = [axis_positions(x, cfg.B) for x in img]
    near = all(pos)
    verdict = "escapes"
    if near:
        if max(pos[-1]) < min(pos[0]):
            verdict = "reversed"
        elif min(pos[-1]) > max(pos[0]):
            verdict = "same"
        else:
            verdict = "undetermined"
    return {"g": str(g), "segment": str(w), "B": cfg.B, "near_axis": near, "verdict": verdict,
            "A_profile": [A(x) for x in img], "A_drops": drops, "I_invariant": invariance}


def move_words(max_len: int):
    letters = [Move("t1", 1), Move("t1", -1), Move("t2", 1), Move("t2", -1), Move("phi", 1)]
    for L in range(max_len + 1):
        for word in itertools.product(letters, repeat=L):
            yield MappingClass(tuple(word))


def non_reversal_search(w: AxisSegment, max_len: int = 4, cfg: MorseConfig = MorseConfig()) -> dict:
    reversed_hits, drop_hits, inv_fail, near, total = [], [], [], 0, 0
    for g in move_words(max_len):
        r = non_reversal_check(w, g, cfg)
        total += 1
        near += r["near_axis"]
        if r["verdict"] == "reversed":
            reversed_hits.append(r["g"])
        if r["A_drops"]:
            drop_hits.append(r["g"])
        if not r["I_invariant"]:
            inv_fail.append(r["g"])
    return {"segment": str(w), "max_word_length": max_len, "words": total, "near_axis": near,
            "reversed": reversed_hits, "A_drops": drop_hits, "I_invariance_failures": inv_fail, "B": cfg.B,
            "ok": not reversed_hits and not drop_hits and not inv_fail}


# ------------------------------------------------------------------- copies

@lru_cache(maxsize=None)
def _profile_pair(x: RayCode, y: RayCode) -> tuple:
    return crossing_counts(x, y)


def _profile(vs: Sequence[RayCode]) -> tuple:
    return tuple(_profile_pair(vs[s], vs[t]) for s in range(len(vs)) for t in range(len(vs)) if s != t)


def _witness(w: AxisSegment, seg: Sequence[RayCode], words: Sequence[MappingClass]) -> Optional[str]:
    W = w.vertices
    # translates along the axis first: seg[0] near alpha_j suggests h^(j - start)
    shifts = set()
    for j in axis_positions(seg[0], 0):
        shifts.add(j - w.indices[0])
    for k in sorted(shifts) or [0]:
        for u in words:
            g = (h() ** k) * u if k else u
            if all(apply(g, W[s]) == seg[s] for s in range(len(W))):
                return str(g)
    return None


def _pack(spans: list) -> int:
    """Most spans [i, i + L] that overlap at most in an end vertex."""
    count, last = 0, None
    for i, j in sorted(spans, key=lambda t: t[1]):
        if last is None or i >= last:
            count += 1
            last = j
    return count


def count_copies(path: Sequence[RayCode], w: AxisSegment, witness_len: int = 0) -> dict:
    """Copies of w along ``path`` as an interval [lower, upper]."""
    L = len(w)
    if len(path) < L + 1:
        return {"lower": 0, "upper": 0, "witnesses": []}
    prof = _profile(w.vertices)
    words = list(move_words(witness_len)) if witness_len else [IDENTITY]
    cands, found = [], []
    for i in range(len(path) - L):
        seg = path[i:i + L + 1]
        if _profile(seg) != prof:
            continue
        cands.append((i, i + L))
        g = _witness(w, seg, words)
        if g is not None:
            found.append((i, i + L, g))
    return {"lower": _pack([(i, j) for i, j, _ in found]), "upper": _pack(cands),
            "witnesses": [{"at": i, "g": g} for i, _, g in found]}


# --------------------------------------------------------------- c_w and q_w

def _distance(p: RayCode, q: RayCode, sl: Optional[GraphSlice]):
    """(lower, upper, geodesic path or None)."""
    lo, _ = lower_bound(p, q)
    if p == q:
        return 0, 0, [p]
    if crossing_counts(p, q)[0] == 0:
        return 1, 1, [p, q]
    pi, qi = axis_positions(p, 0), axis_positions(q, 0)
    if pi and qi:
        i, j = pi[0], qi[0]
        step = 1 if j > i else -1
        return lo, abs(j - i), [axis_ray(k) for k in range(i, j + step, step)]
    if sl is not None and p in sl and q in sl:
        path = sl.path(p, q)
        if path is not None:
            return lo, len(path) - 1, path
    return lo, None, None


def _restricted_paths(sl: Optional[GraphSlice], geo: list, B: int, extra: int, cap: int):
    """Paths from geo[0] to geo[-1] of length <= |geo| - 1 + extra through
    the B-neighbourhood (inside ``sl``) of the geodesic ``geo``."""
    if sl is None or any(v not in sl for v in geo):
        return [geo], False
    idx = sl.index
    pool = set()
    for v in geo:
        dist, _ = sl.bfs(v)
        pool.update(int(i) for i in (dist >= 0).nonzero()[0] if dist[i] <= B)
    src, dst = idx[geo[0]], idx[geo[-1]]
    # distances to the target inside the pool, for pruning
    far = {dst: 0}
    frontier = [dst]
    while frontier:
        nxt = []
        for u in frontier:
            for x in sl.adj[u]:
                if x in pool and x not in far:
                    far[x] = far[u] + 1
                    nxt.append(x)
        frontier = nxt
    limit = len(geo) - 1 + extra
    out, truncated = [], False
    stack = [(src, (src,))]
    while stack:
        u, walk = stack.pop()
        if u == dst:
            out.append([sl.vertices[i] for i in walk])
            if len(out) >= cap:
                truncated = True
                break
            continue
        for x in sl.adj[u]:
            if x in far and x not in walk and len(walk) + far[x] <= limit:
                stack.append((x, walk + (x,)))
    return (out or [geo]), truncated


def c_w(g: MappingClass, w: AxisSegment, p: RayCode, sl: Optional[GraphSlice] = None,
        cfg: MorseConfig = MorseConfig(), extra: int = 2, cap: int = 5000, witness_len: int = 0) -> dict:
    """Interval for d(p, g p) - inf over paths (length - copies of w)."""
    q = apply(g, p)
    d_lo, d_up, geo = _distance(p, q, sl)
    L = len(w)
    # valid for every path: a path of length l holds at most l // L copies
    inf_lo = d_lo - d_lo // L
    inf_hi = None
    truncated = False
    if geo is not None:
        paths, truncated = _restricted_paths(sl, geo, cfg.B, extra, cap)
        vals_lo, vals_hi = [], []
        for path in paths:
            cc = count_copies(path, w, witness_len)
            ell = len(path) - 1
            vals_lo.append(ell - cc["upper"])
            vals_hi.append(ell - cc["lower"])
        inf_hi = min(vals_hi)
        inf_lo = max(inf_lo, min(vals_lo))
    if d_up is None or inf_hi is None:
        lo, hi = max(0, d_lo - (inf_hi if inf_hi is not None else d_lo)), None
    else:
        lo, hi = d_lo - inf_hi, d_up - inf_lo
    return {"g": str(g), "w": str(w), "p": str(p), "B": cfg.B, "distance": [d_lo, d_up],
            "interval": [max(0, lo), hi], "exact": hi is not None and max(0, lo) == hi,
            "restriction": f"paths of length <= d + {extra} inside the {cfg.B}-neighbourhood of a certified geodesic",
            "truncated": truncated}


def q_w(g: MappingClass, w: AxisSegment, p: RayCode, sl: Optional[GraphSlice] = None,
        cfg: MorseConfig = MorseConfig(), **kw) -> dict:
    a = c_w(g, w, p, sl, cfg, **kw)
    b = c_w(g, w.inverse(), p, sl, cfg, **kw)
    (a0, a1), (b0, b1) = a["interval"], b["interval"]
    lo = None if b1 is None else a0 - b1
    hi = None if a1 is None else a1 - b0
    return {"g": str(g), "interval": [lo, hi], "exact": lo is not None and lo == hi,
            "c_w": a, "c_w_inv": b}


def homogenize(g: MappingClass, w: AxisSegment, p: RayCode, n_max: int,
               sl: Optional[GraphSlice] = None, cfg: MorseConfig = MorseConfig(), **kw) -> dict:
    """q_w(g^n) / n for n = 1..n_max, each as an interval."""
    seq = []
    for n in range(1, n_max + 1):
        r = q_w(g ** n, w, p, sl, cfg, **kw)
        lo, hi = r["interval"]
        seq.append([None if lo is None else lo / n, None if hi is None else hi / n])
    return {"g": str(g), "w": str(w), "p": str(p), "B": cfg.B, "sequence": seq}


def defect(elements: Sequence[MappingClass], w: AxisSegment, p: RayCode,
           sl: Optional[GraphSlice] = None, cfg: MorseConfig = MorseConfig(), **kw) -> dict:
    """Largest |q(ab) - q(a) - q(b)| over pairs where all three are exact."""
    q = {}

    def val(x):
        if str(x) not in q:
            q[str(x)] = q_w(x, w, p, sl, cfg, **kw)
        return q[str(x)]

    worst, used = 0, 0
    for a, b in itertools.product(elements, repeat=2):
        ra, rb, rab = val(a), val(b), val(a * b)
        if ra["exact"] and rb["exact"] and rab["exact"]:
            used += 1
            worst = max(worst, abs(rab["interval"][0] - ra["interval"][0] - rb["interval"][0]))
    return {"pairs_used": used, "max_defect": worst}
