"""Mapping classes acting on arcs of the finite model.

t1 slides every block K_k to K_{k+1} along the circle C_N through the blocks
that passes north of infinity. Cut the south face by the fan of diagonals from
infinity and the north face by C_N's north-of-infinity chord: the sphere
becomes a cone of triangles over the block polygon, plus one disk. In that cell
structure t1 is a rotation by one block, so an arc is converted to it, its
cells are relabelled, and it is converted back. t2 is the same construction
with the hemispheres exchanged, rotating the other way. phi (half-turn about
infinity) is a relabelling of the polygon that also swaps the hemispheres.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .coding import Code, max_index
from .model import FiniteModel, NormalArc, S, N, _model, encode, realize, tighten, width_for

MOVES = ("t1", "t2", "phi")


@dataclass(frozen=True)
class Move:
    name: str
    power: int = 1

    def inverse(self) -> "Move":
        return Move(self.name, 1 if self.name == "phi" else -self.power)

    def __str__(self) -> str:
        return self.name if self.power == 1 else f"{self.name}'"


@dataclass(frozen=True)
class MappingClass:
    """Composition of moves, read as functions: the rightmost acts first."""

    moves: tuple = ()

    def __str__(self) -> str:
        return " ".join(str(m) for m in self.moves) or "id"

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        return compose(self, other)

    def __pow__(self, k: int) -> "MappingClass":
        base = self if k >= 0 else invert(self)
        return MappingClass(base.moves * abs(k))


def generator(name: str) -> MappingClass:
    if name not in MOVES:
        raise ValueError(f"unknown move {name!r}")
    return MappingClass((Move(name),))


def compose(a: MappingClass, b: MappingClass) -> MappingClass:
    """a after b."""
    return MappingClass(a.moves + b.moves)


def invert(mc: MappingClass) -> MappingClass:
    return MappingClass(tuple(m.inverse() for m in reversed(mc.moves)))


IDENTITY = MappingClass()
T1 = generator("t1")
T2 = generator("t2")
PHI = generator("phi")


def h() -> MappingClass:
    return T1 * T2 * T1


def h2() -> MappingClass:
    return PHI * invert(h()) * PHI


def g() -> MappingClass:
    return h2() * h()


_TOKEN = re.compile(r"^(t1|t2|phi|h2|h|g)('*)$")


def parse_moves(text: str) -> MappingClass:
    """Parse ``"phi t1' phi"``; ``h``, ``h2`` and ``g`` are accepted as shorthands."""
    out = IDENTITY
    for tok in text.replace("*", " ").split():
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad move token {tok!r}")
        base = {"h": h(), "h2": h2(), "g": g()}.get(m.group(1)) or generator(m.group(1))
        if len(m.group(2)) % 2:
            base = invert(base)
        out = out * base
    return out


# ---------------------------------------------------------------- cell moves

def _to_fan(arc: NormalArc, fan: int):
    """Cells crossed by ``arc`` in the fan structure with the fan in face
    ``fan``. Returns (start cell, list of edge ids).

    Edge ids: c-edge i is ``i`` (0 <= i < m), fan edge f(P_i) is ``m + i``,
    where P_i is polygon vertex i + 1 and m = n - 1. Cells: triangle T(i) is
    ``i`` (T(m - 1) is the small cell around infinity in the other face) and
    the disk is ``m``."""
    n = arc.model.n
    m = n - 1
    two_n = 2 * n
    H, IN, OUT = arc.lift
    k = len(arc.edges)
    small = (0, 1, two_n - 1)

    def edge_id(slot):
        e = (slot - 1) // 2
        if e == 0:
            return m
        if e == n - 1:
            return m + m - 1
        return e - 1

    out: list = []
    y0 = int(OUT[0])
    if arc.h0 == fan:
        if y0 % 2:
            e = (y0 - 1) // 2
            start = 0 if e == 0 else (m - 2 if e == n - 1 else e - 1)
        else:
            start = min(y0 // 2 - 1, m - 2)
    else:
        start = m - 1
    for i in range(k + 1):
        x, y = int(IN[i]), int(OUT[i])
        if int(H[i]) == fan:
            lo, hi = (x, y) if x < y else (y, x)
            if lo > 0:
                ks = range(lo // 2 + 1, (hi + 1) // 2)
                ks = [v for v in ks if 2 <= v <= n - 2 and lo < 2 * v < hi]
                if x > y:
                    ks.reverse()
                out.extend(m + v - 1 for v in ks)
        else:
            xa, ya = x in small, y in small
            if xa != ya and (3 <= (y if xa else x) <= two_n - 3):
                out.append(m - 1)
        if i < k:
            out.append(edge_id(y))
    return start, out


def _from_fan(model: FiniteModel, fan: int, start_cell: int, ids: Sequence[int], end: int) -> NormalArc:
    n = model.n
    m = n - 1
    h0 = fan if start_cell <= m - 2 else 1 - fan
    edges = []
    for e in ids:
        if e < m:
            if e <= m - 2:
                edges.append(e + 1)
        elif e == m:
            edges.append(0)
        elif e == 2 * m - 1:
            edges.append(n - 1)
    return NormalArc(model, 0, h0, tuple(edges), end)


def _rotate(arc: NormalArc, fan: int, r: int) -> NormalArc:
    model = arc.model
    m = model.n - 1
    start, ids = _to_fan(arc, fan)
    start = start if start == m else (start + r) % m
    ids = [(e + r) % m if e < m else m + (e - m + r) % m for e in ids]
    end = arc.end if arc.end == 0 else (arc.end - 1 + r) % m + 1
    return tighten(model, _from_fan(model, fan, start, ids, end))


def _phi(arc: NormalArc) -> NormalArc:
    n = arc.model.n
    edges = tuple(n - 1 - e for e in arc.edges)
    return tighten(arc.model, NormalArc(arc.model, 0, 1 - arc.h0, edges, (n - arc.end) % n))


def apply_move(arc: NormalArc, mv: Move) -> NormalArc:
    if mv.name == "phi":
        return _phi(arc)
    w = arc.model.width
    if mv.name == "t1":
        return _rotate(arc, S, w * mv.power)
    return _rotate(arc, N, -w * mv.power)


def apply_arc(mc: MappingClass, arc: NormalArc) -> NormalArc:
    for mv in reversed(mc.moves):
        arc = apply_move(arc, mv)
    return arc


def working_window(mc: MappingClass, codes: Iterable[Code]) -> int:
    return max_index(codes) + len(mc.moves) + 3


def apply(mc: MappingClass, c: Code, width: int | None = None) -> Code:
    """Canonical code of the image of ``c``."""
    model = _model(working_window(mc, [c]), width or width_for([c]))
    arc = apply_arc(mc, tighten(model, realize(model, c)))
    return encode(model, arc)


def apply_many(mc: MappingClass, codes: Sequence[Code], width: int | None = None) -> list:
    model = _model(working_window(mc, codes), width or width_for(codes))
    return [encode(model, apply_arc(mc, tighten(model, realize(model, c)))) for c in codes]
