"""Finite slices of the ray graph and the loop graph, distance certificates,
the hat comparison, thinness sampling and the independence certificate.

A slice keeps every simple canonical code whose word has at most ``L``
letters, all indices within ``N``, plus any seeds. Slices of infinite-degree
graphs only give upper bounds on distances; lower bounds come from the prefix
function A and from intersection, and a certificate is exact when both meet.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .coding import A, Code, LoopCode, RayCode, alpha, alpha_ring, max_index
from .model import (FiniteModel, NormalArc, S, N as NORTH, _model, encode, geometric_intersection,
                    hat, incident, prefix_crossings, prefix_lift, realize, tighten)

RAY, LOOP = "ray", "loop"
DEFAULT_CAP = 20000


@dataclass
class GraphSlice:
    kind: str
    L: int
    N: int
    model: FiniteModel
    vertices: list
    adj: list
    partial: bool = False
    index: dict = field(default_factory=dict)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}

    def __contains__(self, v) -> bool:
        return v in self.index

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self):
        for i, nb in enumerate(self.adj):
            for j in nb:
                if i < j:
                    yield self.vertices[i], self.vertices[j]

    def bfs(self, src) -> tuple[np.ndarray, np.ndarray]:
        """Distances and BFS parents from ``src`` (-1 = unreachable)."""
        K = len(self.vertices)
        dist = np.full(K, -1, np.int64)
        par = np.full(K, -1, np.int64)
        s = self.index[src]
        dist[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    dq.append(w)
        return dist, par

    def path(self, u, v) -> Optional[list]:
        dist, par = self.bfs(u)
        t = self.index[v]
        if dist[t] < 0:
            return None
        out = [t]
        while out[-1] != self.index[u]:
            out.append(int(par[out[-1]]))
        return [self.vertices[i] for i in reversed(out)]

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "L": self.L, "N": self.N, "partial": self.partial,
                           "adjacency": {str(v): [str(self.vertices[j]) for j in self.adj[i]]
                                         for i, v in enumerate(self.vertices)}})


# --------------------------------------------------------------- enumeration

def _tight_end(n: int, edges: Sequence[int], end: int) -> bool:
    return not edges or not incident(n, edges[-1], end)


def _simple(n: int, lift) -> bool:
    return _kernels.count_crossings(n, lift, lift)[0] == 0


def _sort_key(c: Code):
    return (len(c.word), str(c))


def enumerate_codes(kind: str, L: int, N: int, width: int = 1) -> tuple[list, FiniteModel]:
    """All simple canonical codes with at most ``L`` letters and indices
    within ``N``, by depth-first search over tight prefixes. A prefix that
    already crosses itself is never extended."""
    if L < 0 or N < 0:
        raise ValueError("bounds must be non-negative")
    m = _model(N + 1, width)
    n = m.n
    letters = [m.letter_edge(t) for t in range(-N, N + 1)]
    ends = [0] if kind == LOOP else [m.point_vertex(p) for p in _points(N)]
    found = set()

    def visit(h0, edges):
        for end in ends:
            if kind == LOOP and not edges:
                continue
            if not _tight_end(n, edges, end):
                continue
            a = NormalArc(m, 0, h0, tuple(edges), end)
            t = tighten(m, a)
            if t != a:
                continue
            if _simple(n, t.lift):
                c = encode(m, t)
                found.add(c)

    for h0 in (S, NORTH):
        stack = [()]
        while stack:
            edges = stack.pop()
            visit(h0, edges)
            if len(edges) == L:
                continue
            for e in letters:
                if edges and e == edges[-1]:
                    continue
                if not edges and incident(n, e, 0):
                    continue
                nxt = edges + (e,)
                if len(nxt) > 1 and not _simple(n, prefix_lift(m, h0, nxt)):
                    continue
                stack.append(nxt)
    return sorted(found, key=_sort_key), m


def _points(N: int):
    from .coding import Point
    return [Point(j) for j in range(-N, N + 1)]


def build_slice(kind: str, L: int, N: int, seeds: Iterable[Code] = (), cap: int = DEFAULT_CAP,
                use_numba=None) -> GraphSlice:
    """Slice of the ray graph (``kind="ray"``) or loop graph (``"loop"``)."""
    if kind not in (RAY, LOOP):
        raise ValueError(f"unknown slice kind {kind!r}")
    seeds = list(seeds)
    if L == 0 and N == 0 and not seeds:
        return GraphSlice(kind, L, N, _model(1), [], [])
    codes, m = enumerate_codes(kind, L, N)
    window = max(m.window, 1 + max_index(seeds)) if seeds else m.window
    m = _model(window, 1)
    verts = {c: None for c in codes}
    for s in seeds:
        c = encode(m, tighten(m, realize(m, s)))
        verts.setdefault(c, None)
    vertices = sorted(verts, key=_sort_key)
    partial = len(vertices) > cap
    vertices = vertices[:cap]
    lifts = [tighten(m, realize(m, c)).lift for c in vertices]
    M = _kernels.pairwise_crossings(m.n, lifts, use_numba)
    adj = [[] for _ in vertices]
    I, J = np.nonzero(np.triu(M == 0, 1))
    for i, j in zip(I.tolist(), J.tolist()):
        adj[i].append(j)
        adj[j].append(i)
    for a in adj:
        a.sort()
    return GraphSlice(kind, L, N, m, vertices, adj, partial)


# -------------------------------------------------------------- certificates

@dataclass(frozen=True)
class DistanceCertificate:
    u: Code
    v: Code
    lower: int
    lower_by: str
    upper: Optional[int]
    path: tuple = ()

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    def to_json(self) -> str:
        return json.dumps({"u": str(self.u), "v": str(self.v), "lower": self.lower,
                           "lower_by": self.lower_by, "upper": self.upper,
                           "upper_by": "path in slice (an upper bound for the full graph)",
                           "path": [str(c) for c in self.path], "exact": self.exact})


def lower_bound(u: Code, v: Code) -> tuple[int, str]:
    """Best lower bound available without search."""
    if u == v:
        return 0, "equal"
    best, how = 1, "distinct"
    if geometric_intersection(u, v) > 0:
        best, how = 2, "I-bound"
    if isinstance(u, RayCode) and isinstance(v, RayCode):
        d = abs(A(u) - A(v))
        if d > best:
            best, how = d, "A-bound"
    return best, how


def _check_path(path: Sequence[Code]) -> bool:
    return all(geometric_intersection(path[i], path[i + 1]) == 0 for i in range(len(path) - 1))


def distance(sl: GraphSlice, u: Code, v: Code) -> DistanceCertificate:
    u = encode(sl.model, tighten(sl.model, realize(sl.model, u)))
    v = encode(sl.model, tighten(sl.model, realize(sl.model, v)))
    if u not in sl or v not in sl:
        raise KeyError("both codes must be vertices of the slice")
    lo, how = lower_bound(u, v)
    p = sl.path(u, v)
    if p is None:
        return DistanceCertificate(u, v, lo, how, None)
    if not _check_path(p):
        raise RuntimeError("slice path fails re-verification")
    return DistanceCertificate(u, v, lo, how, len(p) - 1, tuple(p))


def axis_certificate(n: int) -> DistanceCertificate:
    """d(alpha_0, alpha_n): the axis itself is the path, A gives the bound."""
    path = tuple(alpha(k) for k in range(n + 1))
    if not _check_path(path):
        raise RuntimeError("axis path fails re-verification")
    lo, how = lower_bound(path[0], path[-1])
    return DistanceCertificate(path[0], path[-1], lo, how, n, path)


# ------------------------------------------------------------ Lipschitz scan

def lipschitz_scan(L: int, N: int, seeds: Iterable[RayCode] = (), max_report: int = 10) -> dict:
    """Check |A(u) - A(v)| <= 1 over every edge of the ray-graph slice
    without storing it: neighbours are found by a prefix-trie search."""
    codes, m = enumerate_codes(RAY, L, N)
    seeds = list(seeds)
    if seeds:
        m = _model(max(m.window, 1 + max_index(seeds)), 1)
    verts = {c: None for c in codes}
    for s in seeds:
        verts.setdefault(encode(m, tighten(m, realize(m, s))), None)
    arcs = sorted((tighten(m, realize(m, c)) for c in verts), key=lambda a: (a.h0, a.edges, a.end))
    vals = np.asarray([A(encode(m, a)) for a in arcs], np.int64)
    trie = _kernels.PrefixTrie(m.n, arcs)
    n_edges = 0
    bad = []
    for u in range(len(arcs)):
        nb = trie.neighbours(u)
        n_edges += len(nb)
        viol = nb[np.abs(vals[nb] - vals[u]) > 1]
        for v in viol[:max(0, max_report - len(bad))]:
            bad.append([str(encode(m, arcs[u])), str(encode(m, arcs[int(v)]))])
        if len(viol) and len(bad) >= max_report:
            bad.append("...")
    return {"L": L, "N": N, "seeds": [str(s) for s in seeds], "vertices": len(arcs), "edges": n_edges,
            "A_values": sorted(set(vals.tolist())), "violations": len([b for b in bad if b != "..."]),
            "examples": bad}


# ------------------------------------------------------------------ QI check

def _bfs_table(sl: GraphSlice, sources: Iterable[Code]) -> dict:
    return {s: sl.bfs(s)[0] for s in set(sources)}


def _bounds(sl: GraphSlice, table: dict, u: Code, v: Code) -> tuple[int, Optional[int]]:
    lo, _ = lower_bound(u, v)
    d = int(table[u][sl.index[v]])
    return lo, (None if d < 0 else d)


def qi_check(pairs: Sequence[tuple], ray_slice: Optional[GraphSlice] = None,
             loop_slice: Optional[GraphSlice] = None, companions: int = 3) -> dict:
    """Test d(x,y) - 2 <= d(f x, f y) <= d(x,y) + 4 and d(f x, x') <= 2 for
    loops x' disjoint from x, with f = hat. A bound is settled when the slice
    upper bounds and the certified lower bounds already decide it; otherwise
    the pair is reported as undecided."""
    rays = {c for p in pairs for c in p}
    hats = {x: hat(x) for x in rays}
    if ray_slice is None:
        ray_slice = build_slice(RAY, 2, 1 + max_index(rays), rays)
    if loop_slice is None:
        loop_slice = build_slice(LOOP, 4, 1 + max_index(hats.values()), hats.values())
    rs, ls = ray_slice, loop_slice
    canon_r = {x: encode(rs.model, tighten(rs.model, realize(rs.model, x))) for x in rays}
    canon_l = {x: encode(ls.model, tighten(ls.model, realize(ls.model, h))) for x, h in hats.items()}
    rt = _bfs_table(rs, canon_r.values())
    lt = _bfs_table(ls, canon_l.values())
    rows, certified, violations, undecided = [], 0, 0, 0
    for x, y in pairs:
        rlo, rup = _bounds(rs, rt, canon_r[x], canon_r[y])
        llo, lup = _bounds(ls, lt, canon_l[x], canon_l[y])
        upper_ok = lup is not None and lup <= rlo + 4
        upper_bad = rup is not None and llo > rup + 4
        lower_ok = rup is not None and llo >= rup - 2
        lower_bad = lup is not None and lup < rlo - 2
        if upper_bad or lower_bad:
            verdict = "violation"
            violations += 1
        elif upper_ok and lower_ok:
            verdict = "certified"
            certified += 1
        else:
            verdict = "undecided"
            undecided += 1
        rows.append({"x": str(x), "y": str(y), "d_ray": [rlo, rup], "d_loop": [llo, lup], "verdict": verdict})
    # alternative disjoint companions
    comp_rows, comp_bad = [], 0
    for x in sorted(rays, key=_sort_key):
        fx = canon_l[x]
        mates = [c for c in ls.vertices if c != fx and geometric_intersection(x, c) == 0][:companions]
        for c in mates:
            d = int(lt[fx][ls.index[c]])
            ok = 0 <= d <= 2
            comp_bad += not ok
            comp_rows.append({"x": str(x), "companion": str(c), "d_upper": d, "ok": ok})
    return {"pairs": rows, "certified": certified, "undecided": undecided, "violations": violations,
            "companions": comp_rows, "companion_violations": comp_bad}


# -------------------------------------------------------------- thinness

def _largest_component(sl: GraphSlice) -> list:
    seen = np.full(len(sl.vertices), -1)
    best = []
    for s in range(len(sl.vertices)):
        if seen[s] >= 0:
            continue
        comp, dq = [s], deque([s])
        seen[s] = s
        while dq:
            u = dq.popleft()
            for w in sl.adj[u]:
                if seen[w] < 0:
                    seen[w] = s
                    comp.append(w)
                    dq.append(w)
        if len(comp) > len(best):
            best = comp
    return sorted(best)


def delta_sample(sl: GraphSlice, n_triangles: int, rng_seed: int = 0) -> dict:
    """Largest distance from a point of one side of a sampled geodesic
    triangle to the union of the other two sides, distances taken in the
    slice. Geodesics are BFS paths in the slice."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    comp = _largest_component(sl)
    if len(comp) < 3:
        return {"seed": rng_seed, "triangles": 0, "max_thinness": 0, "component": len(comp)}
    K = len(sl.vertices)
    rows = [i for i in range(K) for _ in sl.adj[i]]
    cols = [j for i in range(K) for j in sl.adj[i]]
    G = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(K, K))
    D, P = shortest_path(G, unweighted=True, directed=False, indices=comp, return_predecessors=True)
    where = {v: r for r, v in enumerate(comp)}

    def geo(u, v):
        row = P[where[u]]
        out = [v]
        while out[-1] != u:
            out.append(int(row[out[-1]]))
        return out[::-1]

    def dist(u, v):
        return D[where[u], v]

    rng = random.Random(rng_seed)
    worst, worst_tri = 0, None
    for _ in range(n_triangles):
        x, y, z = rng.sample(comp, 3)
        sides = [geo(x, y), geo(y, z), geo(z, x)]
        for k in range(3):
            others = sides[(k + 1) % 3] + sides[(k + 2) % 3]
            for p in sides[k]:
                d = min(dist(q, p) for q in others)
                if d > worst:
                    worst, worst_tri = int(d), [str(sl.vertices[i]) for i in (x, y, z)]
    return {"seed": rng_seed, "triangles": n_triangles, "component": len(comp),
            "max_thinness": worst, "worst_triangle": worst_tri}


# ------------------------------------------------------------- independence

def _sigma(p: tuple) -> tuple:
    north, word = p
    return (not north, word)


def _phi(p: tuple) -> tuple:
    north, word = p
    return (not north, tuple(-t - 1 for t in word))


def _ring(k: int) -> tuple:
    return (False, alpha_ring(k))


# Each family: ray at step n, and (prefix, radius) pairs saying every ray
# within that radius of it begins with that prefix. With A Lipschitz, rays
# near alpha_k begin with the word of alpha_l once the radius is k - l; the
# other three families are images of the first under sigma and phi.
def _families():
    from .mcg import PHI, g as _g, h, h2, invert
    h1 = h()
    H2 = h2()
    return {
        "h1+": (lambda n: (h1 ** n, alpha(0)), lambda n, l: (_ring(l), n - l)),
        "h2+": (lambda n: (H2 ** n * PHI, alpha(0)), lambda n, l: (_sigma(_ring(l)), n - 1 - l)),
        "h2-": (lambda n: (H2 ** -n * PHI, alpha(0)), lambda n, l: (_phi(_ring(l)), n - l)),
        "h1-": (lambda n: (h1 ** -n, alpha(0)), lambda n, l: (_sigma(_phi(_ring(l))), n - 1 - l)),
    }


# prefix each family's far rays are claimed to begin with
CLAIMED = {"h1+": _ring(2), "h2+": _phi((False, (-2, 0))), "h2-": _phi(_ring(2)), "h1-": (False, (-2, 0))}


def _starts(code: RayCode, p: tuple) -> bool:
    north, word = p
    return code.north == north and tuple(code.word[:len(word)]) == word


def independence_check(n_max: int = 3, m_max: int = 3) -> dict:
    """Prefix claims for h1^{+-n}(alpha_0), h2^{+-n}(phi alpha_0) and the
    lower bound on d(h2^n(phi alpha_0), h1^m(alpha_0))."""
    from .mcg import apply
    fams = _families()
    top = max(n_max, m_max)
    images = {}
    claims = []
    for name, (make, _) in fams.items():
        for n in range(2, top + 1):
            mc, x = make(n)
            img = apply(mc, x)
            images[(name, n)] = img
            claims.append({"family": name, "n": n, "image_length": len(img.word),
                           "prefix_ok": _starts(img, CLAIMED[name])})
    mdl = _model(3, 1)
    prefixes = list(CLAIMED.values())
    pair_cross = [[prefix_crossings(mdl, p, q) for q in prefixes] for p in prefixes]
    pairwise = all(pair_cross[i][j] > 0 for i in range(4) for j in range(4) if i != j)
    bounds = []
    for n in range(2, n_max + 1):
        for m in range(2, m_max + 1):
            best = None
            for l1 in (1, 2):
                for l2 in (1, 2):
                    p, r1 = fams["h2+"][1](n, l1)
                    q, r2 = fams["h1+"][1](m, l2)
                    if r1 < 0 or r2 < 0:
                        continue
                    ok = _starts(images[("h2+", n)], p) and _starts(images[("h1+", m)], q)
                    if ok and prefix_crossings(mdl, p, q) > 0:
                        b = r1 + r2 + 2
                        if best is None or b > best[0]:
                            best = (b, l1, l2)
            bounds.append({"n": n, "m": m, "certified_lower": best[0] if best else None,
                           "target": n + m - 1, "ok": bool(best and best[0] >= n + m - 1),
                           "levels": list(best[1:]) if best else None})
    return {"claims": claims, "prefix_crossings": pair_cross, "pairwise_intersect": pairwise,
            "bounds": bounds,
            "ok": all(c["prefix_ok"] for c in claims) and pairwise and all(b["ok"] for b in bounds)}
