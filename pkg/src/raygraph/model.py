"""Finite models of the sphere minus the Cantor set, and arcs realized in them.

The equator is cut into a polygon whose vertices are the marked points in
cyclic order, so the sphere becomes two faces (south ``S = 0`` and north
``N = 1``) glued along the polygon edges. Vertex 0 is infinity. Each Cantor
block K_j kept explicit becomes two vertices (its extreme points); everything
beyond the window is one far block F. With window ``M`` the polygon reads

    inf, K_0, K_1, ..., K_{M-1}, F, K_{-M}, ..., K_{-1}

with equator segments s_0..s_M and s_{-M-1}..s_{-1} in the gaps, and an inner
edge u_j joining the two extreme points of each block.

An arc is the sequence of polygon edges it crosses together with the face it
leaves its start vertex into. This is a tree path in the dual of the lifted
cell structure, so cancelling backtracks and endpoint half-bigons gives the
unique minimal representative, and crossing numbers are read off by comparing
lifts (see ``_kernels``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .coding import Code, Inner, LoopCode, Point, RayCode, max_index

S, N = 0, 1


class WindowError(ValueError):
    """Code references segments or points outside the model window."""


class AlphabetError(ValueError):
    """Arc crosses an edge that has no letter (e.g. the far block's inner edge)."""


@dataclass(frozen=True)
class FiniteModel:
    """``width`` is the number of vertices kept per block: 1 collapses the
    block to a single point, 2 keeps both extreme points and the inner edge."""

    window: int
    width: int = 1

    @property
    def n(self) -> int:
        return 1 + self.width * (2 * self.window + 1)

    # block and vertex layout
    def block(self, j: int) -> int:
        M = self.window
        if 0 <= j < M:
            return j
        if -M <= j < 0:
            return 2 * M + 1 + j
        raise WindowError(f"block K_{j} outside window {M}")

    def block_label(self, b: int) -> Optional[int]:
        M = self.window
        if b < M:
            return b
        if b == M:
            return None
        return b - 2 * M - 1

    def point_vertex(self, p: Point) -> int:
        w = self.width
        b = self.block(p.index)
        lo, hi = 1 + w * b, w * b + w
        near = lo if p.index >= 0 else hi
        return (lo + hi - near) if p.far else near

    def vertex_point(self, v: int) -> Point:
        if v == 0:
            raise AlphabetError("vertex 0 is infinity")
        w = self.width
        b = (v - 1) // w
        j = self.block_label(b)
        if j is None:
            raise AlphabetError("far block point has no name")
        if w == 1:
            return Point(j)
        is_lo = (v - 1) % w == 0
        return Point(j, far=(is_lo != (j >= 0)))

    def letter_edge(self, x) -> int:
        M, w = self.window, self.width
        if isinstance(x, Inner):
            if w == 1:
                raise WindowError("inner edges need a width-2 model")
            return 1 + w * self.block(x.index)
        if 0 <= x <= M:
            return w * x
        if -M - 1 <= x < 0:
            return w * (2 * M + 2 + x)
        raise WindowError(f"segment s_{x} outside window {M}")

    def edge_letter(self, e: int):
        M, w = self.window, self.width
        if e % w:
            j = self.block_label(e // w)
            if j is None:
                raise AlphabetError("arc crosses the far block")
            return Inner(j)
        t = e // w
        return t if t <= M else t - 2 * M - 2

    def marked_points(self) -> list[str]:
        out = ["inf"]
        for b in range(2 * self.window + 1):
            j = self.block_label(b)
            if j is None:
                out += ["F"] * self.width
            elif self.width == 1:
                out.append(str(Point(j)))
            else:
                pts = [Point(j), Point(j, True)]
                if j < 0:
                    pts.reverse()
                out += [str(p) for p in pts]
        return out

    def to_json(self) -> str:
        n = self.n
        edges = [{"edge": e, "ends": [e, (e + 1) % n], "letter": _letter_str(self, e)}
                 for e in range(n)]
        return json.dumps({"window": self.window, "width": self.width, "n_vertices": n,
                           "marked_points": self.marked_points(), "edges": edges})


def _letter_str(m: FiniteModel, e: int) -> str:
    try:
        x = m.edge_letter(e)
    except AlphabetError:
        return "F"
    return str(x) if isinstance(x, Inner) else f"s{x}"


@lru_cache(maxsize=64)
def _model(window: int, width: int = 1) -> FiniteModel:
    return FiniteModel(window, width)


def width_for(codes: Iterable[Code]) -> int:
    """2 if any code names an extreme point or an inner edge, else 1."""
    for c in codes:
        if isinstance(c, RayCode) and c.attach.far:
            return 2
        if any(isinstance(x, Inner) for x in c.word):
            return 2
    return 1


def build_model(codes: Iterable[Code] = (), width: Optional[int] = None) -> FiniteModel:
    codes = list(codes)
    return _model(1 + max_index(codes), width or width_for(codes))


def incident(n: int, e: int, v: int) -> bool:
    return e == v or (e + 1) % n == v


@dataclass(frozen=True, eq=False)
class NormalArc:
    """Arc from ``start`` to ``end`` (vertices), leaving ``start`` into face
    ``h0`` and crossing ``edges`` in order."""

    model: FiniteModel
    start: int
    h0: int
    edges: tuple
    end: int

    @property
    def is_loop(self) -> bool:
        return self.start == self.end

    def key(self):
        return (self.model, self.start, self.h0, self.edges, self.end)

    def __eq__(self, other):
        return isinstance(other, NormalArc) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @cached_property
    def coords(self) -> np.ndarray:
        """Number of crossings with each polygon edge."""
        return np.bincount(np.asarray(self.edges, dtype=np.int64), minlength=self.model.n)

    def faces(self) -> np.ndarray:
        k = len(self.edges)
        return (self.h0 + np.arange(k + 1)) & 1

    @cached_property
    def lift(self):
        """(H, IN, OUT) slot arrays for the crossing kernels."""
        e = np.asarray(self.edges, dtype=np.int64)
        k = len(e)
        H = self.faces().astype(np.int64)
        IN = np.empty(k + 1, np.int64)
        OUT = np.empty(k + 1, np.int64)
        IN[0] = 2 * self.start
        IN[1:] = 2 * e + 1
        OUT[:k] = 2 * e + 1
        OUT[k] = 2 * self.end
        return H, IN, OUT

    def reversed(self) -> "NormalArc":
        hk = (self.h0 + len(self.edges)) & 1
        return NormalArc(self.model, self.end, hk, self.edges[::-1], self.start)

    def to_json(self) -> str:
        return json.dumps({"window": self.model.window, "width": self.model.width, "start": self.start, "start_face": "SN"[self.h0],
                           "end": self.end, "crossings": list(self.edges),
                           "coords": [int(c) for c in self.coords]})


def realize(m: FiniteModel, c: Code) -> NormalArc:
    edges = tuple(m.letter_edge(x) for x in c.word)
    end = m.point_vertex(c.attach) if isinstance(c, RayCode) else 0
    return NormalArc(m, 0, N if c.north else S, edges, end)


def tighten(m: FiniteModel, a: NormalArc) -> NormalArc:
    n = m.n
    h0 = a.h0
    w = list(a.edges)
    while True:
        out: list = []
        for e in w:
            if out and out[-1] == e:
                out.pop()
            else:
                out.append(e)
        changed = len(out) != len(w)
        lo = 0
        while lo < len(out) and incident(n, out[lo], a.start):
            lo += 1
            h0 ^= 1
        hi = len(out)
        while hi > lo and incident(n, out[hi - 1], a.end):
            hi -= 1
        if lo or hi < len(out):
            changed = True
            out = out[lo:hi]
        w = out
        if not changed:
            break
    if not w and a.start != a.end and (a.end - a.start) % n in (1, n - 1):
        h0 = S
    if not w and a.start == a.end:
        h0 = S
    return NormalArc(m, a.start, h0, tuple(w), a.end)


def is_tight(a: NormalArc) -> bool:
    return tighten(a.model, a) == a


def _order_key(word, north):
    return (north, tuple((1, x.index) if isinstance(x, Inner) else (0, x) for x in word))


def encode(m: FiniteModel, a: NormalArc) -> Code:
    """Read the code of a tightened arc from infinity."""
    if a.start != 0:
        raise ValueError("arcs are read from infinity")
    word = tuple(m.edge_letter(e) for e in a.edges)
    if a.end != 0:
        attach = m.vertex_point(a.end)
        if not word and (a.end == 1 or a.end == m.n - 1):
            # the class of an equator edge at infinity is written with that edge
            return RayCode((0,) if a.end == 1 else (-1,), attach)
        return RayCode(word, attach, a.h0 == N)
    hk = (a.h0 + len(word)) & 1
    fwd = (word, a.h0 == N)
    bwd = (word[::-1], hk == N)
    best = min(fwd, bwd, key=lambda t: _order_key(t[0], t[1]))
    return LoopCode(best[0], best[1])


def canonical(c: Code, window: Optional[int] = None, width: Optional[int] = None) -> Code:
    width = width or width_for([c])
    m = build_model([c], width) if window is None else _model(window, width)
    return encode(m, tighten(m, realize(m, c)))


def shared_model(*codes: Code, margin: int = 0, width: Optional[int] = None) -> FiniteModel:
    return _model(1 + max_index(codes) + margin, width or width_for(codes))


def arc(c: Code, m: Optional[FiniteModel] = None) -> NormalArc:
    m = m or build_model([c])
    return tighten(m, realize(m, c))


def _pair(a, b):
    if isinstance(a, NormalArc) and isinstance(b, NormalArc):
        if a.model != b.model:
            raise ValueError("arcs live in different models")
        return a.model, a, b
    m = shared_model(*(x for x in (a, b) if not isinstance(x, NormalArc)))
    if isinstance(a, NormalArc):
        m = a.model if a.model.window >= m.window else m
    if isinstance(b, NormalArc):
        m = b.model if b.model.window >= m.window else m
    return m, _arc_in(m, a), _arc_in(m, b)


def _arc_in(m: FiniteModel, x) -> NormalArc:
    if isinstance(x, NormalArc):
        if x.model == m:
            return x
        raise ValueError("arc lives in a different model")
    return arc(x, m)


def crossing_counts(a, b, use_numba=None) -> tuple[int, int]:
    """(geometric intersection, positive crossings of (a, b))."""
    m, a, b = _pair(a, b)
    return _kernels.count_crossings(m.n, a.lift, b.lift, use_numba)


def geometric_intersection(a, b) -> int:
    return crossing_counts(a, b)[0]


def positive_intersection(a, b) -> int:
    """I(a, b): crossings where the frame (tangent of a, tangent of b) is
    positive, both arcs oriented away from infinity."""
    return crossing_counts(a, b)[1]


def disjoint(a, b) -> bool:
    return geometric_intersection(a, b) == 0


def self_intersection(a) -> int:
    m, a, _ = _pair(a, a)
    return _kernels.count_crossings(m.n, a.lift, a.lift)[0] // 2


def is_simple(a) -> bool:
    return self_intersection(a) == 0


def is_essential_loop(c: LoopCode) -> bool:
    return bool(canonical(c).word)


def _block_gaps(j: int) -> tuple[int, int]:
    """Segments on either side of block K_j, in increasing order along the equator."""
    return (j, j + 1) if j >= 0 else (j - 1, j)


def hat(c: RayCode) -> LoopCode:
    """Loop running along ``c``, around the attachment point's block and back."""
    m = build_model([c])
    a = arc(c, m)
    left, right = _block_gaps(c.attach.index)
    base = list(a.edges)
    # out through one gap and back through the other encircles the block
    e1, e2 = m.letter_edge(left), m.letter_edge(right)
    loop = NormalArc(m, 0, a.h0, tuple(base + [e1, e2] + base[::-1]), 0)
    return encode(m, tighten(m, loop))


def prefix_lift(m: FiniteModel, h0: int, edges: Sequence[int]):
    """Lift of an arc from infinity whose continuation after ``edges`` is not
    known yet; only crossings that are settled by the prefix get counted."""
    e = np.asarray(edges, dtype=np.int64)
    k = len(e)
    H = ((h0 + np.arange(k + 1)) & 1).astype(np.int64)
    IN = np.empty(k + 1, np.int64)
    OUT = np.empty(k + 1, np.int64)
    IN[0] = 0
    IN[1:] = 2 * e + 1
    OUT[:k] = 2 * e + 1
    OUT[k] = _kernels.UNKNOWN
    return H, IN, OUT


def prefix_crossings(m: FiniteModel, p: tuple, q: tuple) -> int:
    """Crossings forced between any two arcs starting with the prefixes
    ``p`` and ``q``, each given as (north flag, word)."""
    def lift(x):
        north, word = x
        return prefix_lift(m, N if north else S, [m.letter_edge(t) for t in word])
    return _kernels.count_crossings(m.n, lift(p), lift(q))[0]
