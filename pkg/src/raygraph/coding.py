"""Symbolic layer: ray and loop codes, word reduction, the alpha/gamma families
and the prefix function A.

A letter ``t`` (a plain int) stands for the equator segment s_t. Arcs that have
to pass between two Cantor points of the same block use an :class:`Inner`
letter; those never occur in the families built here but can show up in
mapping-class images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union


class CodeParseError(ValueError):
    pass


@dataclass(frozen=True)
class Inner:
    """Equator edge inside block K_index (between its two extreme points)."""

    index: int

    def __str__(self) -> str:
        return f"u{self.index}"


Letter = Union[int, Inner]


@dataclass(frozen=True, order=True)
class Point:
    """Attachment point. ``far=False`` is the chosen point p_j of block K_j,
    ``far=True`` the opposite extreme point q_j of the same block."""

    index: int
    far: bool = False

    def __str__(self) -> str:
        return f"{'q' if self.far else 'p'}{self.index}"


def _fmt_letter(x: Letter) -> str:
    return str(x) if isinstance(x, Inner) else f"s{x}"


def _fmt_word(word: Sequence[Letter]) -> str:
    return " ".join(_fmt_letter(x) for x in word)


@dataclass(frozen=True)
class RayCode:
    """Arc from infinity to ``attach`` crossing the equator along ``word``.

    ``north`` marks an arc whose first piece leaves infinity into the north
    hemisphere (outside the south-start convention of complete sequences)."""

    word: tuple
    attach: Point
    north: bool = False

    @property
    def repeat_free(self) -> bool:
        w = self.word
        return all(w[i] != w[i + 1] for i in range(len(w) - 1))

    @property
    def degenerate(self) -> bool:
        return not self.word

    @property
    def canonical_shape(self) -> bool:
        """Word-level necessary conditions for a geodesic code."""
        w = self.word
        if not w:
            return False
        if not self.repeat_free or self.north:
            return False
        if w[0] in (0, -1) and len(w) > 1:
            return False
        # ending on the segment next to p_j leaves an endpoint half-bigon
        return not (len(w) > 1 and not self.attach.far and w[-1] == self.attach.index)

    def __str__(self) -> str:
        head = "^ " if self.north else ""
        body = _fmt_word(self.word)
        return f"{head}{body}{' ' if body else ''}@{self.attach}"


@dataclass(frozen=True)
class LoopCode:
    """Arc from infinity back to infinity."""

    word: tuple
    north: bool = False

    @property
    def repeat_free(self) -> bool:
        w = self.word
        return all(w[i] != w[i + 1] for i in range(len(w) - 1))

    @property
    def degenerate(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        head = "^ " if self.north else ""
        return (head + _fmt_word(self.word)).strip()


Code = Union[RayCode, LoopCode]

_LETTER = re.compile(r"^([su])([+-]?\d+)$")
_POINT = re.compile(r"^@?([pq])([+-]?\d+)$")


def parse_code(text: str, loop: bool | None = None) -> Code:
    """Parse ``"s1 s-1 @p1"`` style text. Without an ``@`` part the result is a
    loop; ``loop=False`` makes a missing attachment an error."""
    toks = text.replace("@", " @").split()
    north = False
    if toks and toks[0] == "^":
        north = True
        toks = toks[1:]
    elif toks and toks[0].startswith("^"):
        north = True
        toks[0] = toks[0][1:]
    word: list = []
    attach = None
    for i, tok in enumerate(toks):
        if tok.startswith("@"):
            m = _POINT.match(tok)
            if m is None or i != len(toks) - 1:
                raise CodeParseError(f"bad attachment token {tok!r} in {text!r}")
            attach = Point(int(m.group(2)), m.group(1) == "q")
            continue
        m = _LETTER.match(tok)
        if m is None:
            raise CodeParseError(f"bad letter {tok!r} in {text!r}")
        j = int(m.group(2))
        word.append(Inner(j) if m.group(1) == "u" else j)
    if attach is None:
        if loop is False:
            raise CodeParseError(f"ray code needs an attachment point: {text!r}")
        return LoopCode(tuple(word), north)
    if loop is True:
        raise CodeParseError(f"loop code cannot have an attachment point: {text!r}")
    return RayCode(tuple(word), attach, north)


def format_code(code: Code) -> str:
    return str(code)


def make_ray_code(word: Iterable[Letter], attach: Point | int) -> RayCode:
    """Raw constructor; see ``repeat_free``/``canonical_shape``/``degenerate``."""
    if isinstance(attach, int):
        attach = Point(attach)
    return RayCode(tuple(word), attach)


def reduce_word(word: Sequence[Letter]) -> tuple:
    out: list = []
    for x in word:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def word_reduce(code: Code) -> Code:
    """Cancel adjacent equal letters until none remain (interior bigons only)."""
    w = reduce_word(code.word)
    if isinstance(code, RayCode):
        return RayCode(w, code.attach, code.north)
    return LoopCode(w, code.north)


@lru_cache(maxsize=None)
def alpha_ring(k: int) -> tuple:
    """Word of alpha_k without its attachment (empty for k = 0)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return ()
    if k == 1:
        return (1, -1)
    a = alpha_ring(k - 1)
    return a + (k, k - 1) + a[::-1] + (0, -1) + a


def alpha(k: int) -> RayCode:
    if k == 0:
        return RayCode((0,), Point(0))
    return RayCode(alpha_ring(k), Point(k))


@lru_cache(maxsize=None)
def gamma_ring(k: int) -> tuple:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return ()
    if k == 1:
        return (1, -1)
    g = gamma_ring(k - 1)
    j = k - 1
    if j % 2:
        mid = (j + 1, j) + g[::-1] + (0, -1)
    else:
        mid = (j, j + 1) + g[::-1] + (-1, 0)
    return reduce_word(g + mid + g)


def gamma(k: int) -> RayCode:
    if k == 0:
        return alpha(0)
    return RayCode(gamma_ring(k), Point(k))


def A(code: RayCode) -> int:
    """Largest i such that the code begins with the word of alpha_i."""
    if code.north:
        return 0
    w = code.word
    i = 0
    while True:
        nxt = len(alpha_ring(i + 1))
        if nxt > len(w) or w[:nxt] != alpha_ring(i + 1):
            return i
        i += 1


def long(code: RayCode) -> int:
    return len(code.word) + 1


def dist_lower_bound(c1: RayCode, c2: RayCode) -> int:
    return abs(A(c1) - A(c2))


def max_index(codes: Iterable[Code]) -> int:
    m = 0
    for c in codes:
        for x in c.word:
            m = max(m, abs(x.index if isinstance(x, Inner) else x))
        if isinstance(c, RayCode):
            m = max(m, abs(c.attach.index))
    return m
