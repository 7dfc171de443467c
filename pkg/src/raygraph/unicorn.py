"""Unicorn arcs and unicorn paths between oriented loops based at infinity.

For a crossing point pi of two loops a, b (both read from infinity), the
unicorn arc follows a up to pi and returns to infinity along b backwards. It
counts only when the two initial pieces meet nowhere but at pi.

Crossings are found by the kernel as shared face runs between lifts. To order
them along a lift of ``a`` each crossing lift of ``b`` is reduced to its two
ideal endpoints, one on each side of the lift of ``a``. Disjoint lifts cross in
the same order as their endpoints on either side, so comparing the right
endpoint (then the left one, when two lifts end at the same cusp) orders the
crossing points. An endpoint is written as a path in the dual tree: the strip
face where the lift of ``b`` leaves, followed by the position of each exit
slot measured from the entry edge, going along the boundary from the start of
``a`` towards its end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .coding import LoopCode
from .model import (FiniteModel, NormalArc, S, _model, encode, geometric_intersection,
                    incident, realize, shared_model, tighten)


@dataclass(frozen=True)
class OrientedLoop:
    """A vertex of the loop graph with a traversal direction. ``reverse``
    means the loop is read against its canonical code."""

    loop: LoopCode
    reverse: bool = False

    def flipped(self) -> "OrientedLoop":
        return OrientedLoop(self.loop, not self.reverse)

    def arc(self, m: FiniteModel) -> NormalArc:
        a = tighten(m, realize(m, self.loop))
        return a.reversed() if self.reverse else a

    def __str__(self) -> str:
        return ("-" if self.reverse else "+") + "(" + str(self.loop) + ")"


def orient(m: FiniteModel, a: NormalArc) -> OrientedLoop:
    """Oriented loop of a loop arc, keeping the direction it is traversed in."""
    a = tighten(m, a)
    code = encode(m, a)
    fwd = NormalArc(m, 0, S if not code.north else 1, tuple(m.letter_edge(x) for x in code.word), 0)
    return OrientedLoop(code, tighten(m, fwd) != a)


@dataclass(frozen=True)
class UnicornPath:
    vertices: tuple
    oriented: tuple = ()

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> str:
        return json.dumps({"vertices": [str(v) for v in self.vertices]})


# ------------------------------------------------------------------ ordering

def _end_key(n, x, t, sigma, cont, right):
    """Dual-tree key of the ideal point reached by leaving strip face ``t`` of
    ``x`` through ``sigma`` and then following ``cont`` (face, entry, exit)."""
    Hx, INx, OUTx = x
    m2 = 2 * n
    kx = len(Hx) - 1

    def off(face, slot, ref):
        p, r = _kernels._pos(slot, face, m2), _kernels._pos(ref, face, m2)
        return (p - r) % m2 if right else (r - p) % m2

    def strip_vertex(t, v):
        while t < kx and incident(n, int(OUTx[t]) // 2, v):
            t += 1
        return (t, off(int(Hx[t]), 2 * v, int(INx[t])))

    if sigma % 2 == 0:
        return strip_vertex(t, sigma // 2)
    v = int(cont[-1][2]) // 2
    # first face on the way out that already holds this lift of v
    s = len(cont)
    while s > 0 and incident(n, int(cont[s - 1][1]) // 2, v):
        s -= 1
    if s == 0:
        return strip_vertex(t, v)
    key = [t, off(int(Hx[t]), sigma, int(INx[t]))]
    for q in range(s - 1):
        face, ent, ex = cont[q]
        key.append(off(face, ex, ent))
    face, ent, _ = cont[s - 1]
    key.append(off(face, 2 * v, ent))
    return tuple(key)


def _crossing_keys(n, x, y, recs):
    """Sort key along ``x`` for each crossing record of (x, y)."""
    Hy, INy, OUTy = y
    ky = len(Hy) - 1
    keys = []
    for i0, j0, i1, j1, rev, sign in recs:
        back_lo = [(int(Hy[j]), int(OUTy[j]), int(INy[j])) for j in range(j0 - 1, -1, -1)]
        if not rev:
            start_end = (i0, int(INy[j0]), back_lo)
            other = (i1, int(OUTy[j1]), [(int(Hy[j]), int(INy[j]), int(OUTy[j])) for j in range(j1 + 1, ky + 1)])
        else:
            start_end = (i1, int(INy[j1]), [(int(Hy[j]), int(OUTy[j]), int(INy[j])) for j in range(j1 - 1, -1, -1)])
            other = (i0, int(OUTy[j0]), [(int(Hy[j]), int(INy[j]), int(OUTy[j])) for j in range(j0 + 1, ky + 1)])
        r_end, l_end = (start_end, other) if sign > 0 else (other, start_end)
        keys.append((_end_key(n, x, *r_end, True), _end_key(n, x, *l_end, False)))
    return keys


@dataclass(frozen=True)
class Crossing:
    """One crossing point: faces ``ia`` of a and ``jb`` of b where the two
    initial pieces are glued, and its rank along each arc."""

    ia: int
    jb: int
    rank_a: int
    rank_b: int
    sign: int


def crossings(m: FiniteModel, a: NormalArc, b: NormalArc, use_numba=None) -> list:
    """All crossing points of a and b with their order along both arcs."""
    n = m.n
    ab = _kernels.crossing_records(n, a.lift, b.lift, use_numba)
    ba = _kernels.crossing_records(n, b.lift, a.lift, use_numba)
    if len(ab) != len(ba):
        raise RuntimeError("crossing records are not symmetric")
    key_a = _crossing_keys(n, a.lift, b.lift, ab.tolist())
    key_b = _crossing_keys(n, b.lift, a.lift, ba.tolist())
    order_a = sorted(range(len(ab)), key=key_a.__getitem__)
    order_b = sorted(range(len(ba)), key=key_b.__getitem__)
    rank_b = {}
    for r, idx in enumerate(order_b):
        j0, i0, j1, i1 = (int(v) for v in ba[idx][:4])
        rank_b[frozenset(((i0, j0), (i1, j1)))] = r
    out = []
    for r, idx in enumerate(order_a):
        i0, j0, i1, j1, _, sign = (int(v) for v in ab[idx])
        rb = rank_b.get(frozenset(((i0, j0), (i1, j1))))
        if rb is None:
            raise RuntimeError("crossing run seen from one side only")
        out.append(Crossing(i0, j0, r, rb, sign))
    return out


# ------------------------------------------------------------------ unicorns

def _setup(a: OrientedLoop, b: OrientedLoop, m: Optional[FiniteModel]):
    m = m or shared_model(a.loop, b.loop)
    return m, a.arc(m), b.arc(m)


def _unicorn_arcs(m, A, B, use_numba=None) -> list:
    """Oriented unicorn arcs in path order (closest to a first)."""
    pts = crossings(m, A, B, use_numba)
    out = []
    best_b = None
    for p in pts:  # increasing along a
        if best_b is None or p.rank_b < best_b:
            edges = A.edges[:p.ia] + B.edges[:p.jb][::-1]
            c = tighten(m, NormalArc(m, 0, A.h0, edges, 0))
            out.append((p.rank_a, orient(m, c)))
            best_b = p.rank_b
    # the unicorn order puts the arc with the longest piece of a first
    out.sort(key=lambda t: -t[0])
    return [o for _, o in out]


def unicorn_arcs(a: OrientedLoop, b: OrientedLoop, m: Optional[FiniteModel] = None) -> list:
    m, A, B = _setup(a, b, m)
    return [o.loop for o in _unicorn_arcs(m, A, B)]


def _path(a: OrientedLoop, b: OrientedLoop, m=None) -> tuple:
    m, A, B = _setup(a, b, m)
    if a.loop == b.loop:
        return (a,)
    return (a,) + tuple(_unicorn_arcs(m, A, B)) + (b,)


def unicorn_path(a: OrientedLoop, b: OrientedLoop, m: Optional[FiniteModel] = None) -> UnicornPath:
    p = _path(a, b, m)
    return UnicornPath(tuple(o.loop for o in p), p)


# ------------------------------------------------------------------- lemmas

def _close(m: FiniteModel, x: LoopCode, y: LoopCode) -> bool:
    """Distance at most 1 in the loop graph."""
    return x == y or geometric_intersection(tighten(m, realize(m, x)), tighten(m, realize(m, y))) == 0


def check_thin_triangle(a: OrientedLoop, b: OrientedLoop, d: OrientedLoop) -> dict:
    """Every vertex of P(a, b) should be within distance 1 of a vertex of
    P(a, d) or P(d, b). Returns the witness for each vertex."""
    m = shared_model(a.loop, b.loop, d.loop)
    pab = unicorn_path(a, b, m).vertices
    others = list(dict.fromkeys(unicorn_path(a, d, m).vertices + unicorn_path(d, b, m).vertices))
    pairs, missing = [], []
    for c in pab:
        w = next((x for x in others if _close(m, c, x)), None)
        if w is None:
            missing.append(str(c))
        pairs.append([str(c), None if w is None else str(w)])
    return {"a": str(a), "b": str(b), "d": str(d), "path": [str(c) for c in pab],
            "witnesses": pairs, "thin": not missing, "missing": missing}


def check_subpath_property(a: OrientedLoop, b: OrientedLoop, i: int, j: int) -> dict:
    """Compare P(g_i, g_j) with the stretch i..j of P(a, b), where g_i is
    oriented like a and g_j like b."""
    m = shared_model(a.loop, b.loop)
    full = _path(a, b, m)
    n = len(full) - 1
    if not 0 <= i <= j <= n:
        raise IndexError("need 0 <= i <= j <= n")
    gi = full[i] if i < n else b
    gj = full[j].flipped() if 0 < j < n else (b if j == n else a)
    sub = tuple(o.loop for o in _path(gi, gj, m))
    want = tuple(o.loop for o in full[i:j + 1])
    if sub == want:
        kind = "subpath"
    elif j == i + 2 and _close(m, full[i].loop, full[j].loop):
        kind = "shortcut"
    else:
        kind = "violation"
    return {"i": i, "j": j, "n": n, "result": kind, "recomputed": [str(c) for c in sub],
            "stretch": [str(c) for c in want]}


def neighborhood_check(a: OrientedLoop, b: OrientedLoop, geodesic: Sequence[LoopCode], sl) -> dict:
    """Hausdorff-type comparison of P(a, b) with a geodesic, distances taken
    in the loop-graph slice ``sl``. Unverifiable when a vertex is missing
    from the slice or the slice is disconnected between them."""
    path = unicorn_path(a, b).vertices
    canon = [encode(sl.model, tighten(sl.model, realize(sl.model, c))) for c in path]
    geo = [encode(sl.model, tighten(sl.model, realize(sl.model, c))) for c in geodesic]
    if any(c not in sl for c in canon + geo):
        return {"verifiable": False, "reason": "vertex outside slice"}
    tables = {c: sl.bfs(c)[0] for c in set(canon)}

    def d(x, y):
        return int(tables[x][sl.index[y]])

    to_geo = [min(d(c, g) for g in geo) for c in canon]
    to_path = [min(d(c, g) for c in canon) for g in geo]
    if min(to_geo + to_path) < 0 or any(min(d(c, g) for g in geo) < 0 for c in canon):
        return {"verifiable": False, "reason": "slice disconnected"}
    return {"verifiable": True, "path_to_geodesic": max(to_geo), "geodesic_to_path": max(to_path),
            "path": [str(c) for c in canon]}
