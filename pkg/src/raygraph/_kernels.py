"""Crossing counts between two arcs given as face sequences of the
equator polygon double.

An arc visiting faces 0..k is described by three int arrays: ``H`` (face,
0 = south, 1 = north), ``IN`` and ``OUT`` (boundary slot where the arc enters
and leaves that face). Slots number the boundary of the polygon: vertex v is
``2v``, edge e is ``2e + 1``; ``UNKNOWN`` marks an unread continuation.

Two lifts meet along a maximal run of shared faces. They cross iff their
boundary slots interleave around the union of those faces. Each crossing is
reported once, oriented by whether the second arc passes the first from its
right to its left.

Set ``RAYGRAPH_DISABLE_NUMBA=1`` to use the pure-numpy row sweep.
"""

from __future__ import annotations

import os

import numpy as np

UNKNOWN = -2

_DISABLED = os.environ.get("RAYGRAPH_DISABLE_NUMBA", "").strip() not in ("", "0")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True, inline="always")
def _pos(slot, face, m2):
    # counter-clockwise position of a slot seen from inside the face
    if face == 1:
        return slot
    return (m2 - slot) % m2


@njit(cache=True)
def _judge(m2, Ha, INa, OUTa, Hb, INb, OUTb, i0, j0, i1, j1, rev):
    """Return 0 (no crossing), 1 (b crosses a right-to-left) or -1."""
    ain = INa[i0]
    aout = OUTa[i1]
    if rev:
        b1 = OUTb[j0]
        b2 = INb[j1]
    else:
        b1 = INb[j0]
        b2 = OUTb[j1]
    if ain == UNKNOWN or aout == UNKNOWN or b1 == UNKNOWN or b2 == UNKNOWN:
        return 0
    f0 = Ha[i0]
    f1 = Ha[i1]
    if i0 == i1:
        if ain == b1 or ain == b2 or aout == b1 or aout == b2:
            return 0
        base = _pos(ain, f0, m2)
        ra = (_pos(aout, f0, m2) - base) % m2
        r1 = (_pos(b1, f0, m2) - base) % m2
        r2 = (_pos(b2, f0, m2) - base) % m2
        in1 = r1 < ra
        if in1 == (r2 < ra):
            return 0
        # one-face runs are never reversed, so b starts at b1
        return 1 if in1 else -1
    if ain == b1 or aout == b2:
        return 0
    g0 = _pos(OUTa[i0], f0, m2)
    g1 = _pos(INa[i1], f1, m2)
    ra = (_pos(ain, f0, m2) - g0) % m2
    rb = (_pos(b1, f0, m2) - g0) % m2
    sa = (_pos(aout, f1, m2) - g1) % m2
    sb = (_pos(b2, f1, m2) - g1) % m2
    if (ra < rb) != (sa < sb):
        return 0
    if rev:
        start_right = sb < sa
    else:
        start_right = rb > ra
    return 1 if start_right else -1


@njit(cache=True)
def _scan(n, Ha, INa, OUTa, Hb, INb, OUTb, want, rec):
    """Double loop over aligned face pairs. Fills ``rec`` rows
    (i0, j0, i1, j1, rev, sign) when ``want`` and returns the counts."""
    m2 = 2 * n
    ka = Ha.shape[0] - 1
    kb = Hb.shape[0] - 1
    total = 0
    posc = 0
    par = (Ha[0] + Hb[0]) & 1
    for i in range(ka + 1):
        ain = INa[i]
        ain_edge = (ain & 1) == 1 and ain >= 0
        for j in range((i + par) & 1, kb + 1, 2):
            if ain_edge and (ain == INb[j] or ain == OUTb[j]):
                continue
            i1 = i
            j1 = j
            rev = False
            o = OUTa[i]
            if (o & 1) == 1 and o >= 0:
                if j < kb and OUTb[j] == o:
                    while i1 < ka and j1 < kb and OUTa[i1] == OUTb[j1] and (OUTa[i1] & 1) == 1:
                        i1 += 1
                        j1 += 1
                elif j > 0 and INb[j] == o:
                    rev = True
                    while i1 < ka and j1 > 0 and OUTa[i1] == INb[j1] and (OUTa[i1] & 1) == 1:
                        i1 += 1
                        j1 -= 1
            s = _judge(m2, Ha, INa, OUTa, Hb, INb, OUTb, i, j, i1, j1, rev)
            if s != 0:
                if want:
                    r = rec[total]
                    r[0] = i
                    r[1] = j
                    r[2] = i1
                    r[3] = j1
                    r[4] = 1 if rev else 0
                    r[5] = s
                total += 1
                if s > 0:
                    posc += 1
    return total, posc


def _scan_numpy(n, Ha, INa, OUTa, Hb, INb, OUTb, want):
    """Row sweep from the last face of ``a`` upward, vectorised over ``b``.

    ``endS``/``endR`` hold, for each column, where a same-direction or
    reversed run starting at the current row would end."""
    m2 = 2 * n
    ka = len(Ha) - 1
    kb = len(Hb) - 1
    cols = np.arange(kb + 1)
    endS_i = np.zeros(kb + 1, np.int64)
    endS_j = np.zeros(kb + 1, np.int64)
    endR_i = np.zeros(kb + 1, np.int64)
    endR_j = np.zeros(kb + 1, np.int64)
    total = 0
    posc = 0
    recs = []
    for i in range(ka, -1, -1):
        o = OUTa[i]
        o_edge = (o & 1) == 1 and o >= 0
        linkS = np.zeros(kb + 1, bool)
        linkR = np.zeros(kb + 1, bool)
        if o_edge and i < ka:
            linkS[:kb] = OUTb[:kb] == o
            linkR[1:] = INb[1:] == o
        nS_i = np.full(kb + 1, i, np.int64)
        nS_j = cols.copy()
        nR_i = np.full(kb + 1, i, np.int64)
        nR_j = cols.copy()
        if linkS.any():
            idx = np.nonzero(linkS)[0]
            nS_i[idx] = endS_i[idx + 1]
            nS_j[idx] = endS_j[idx + 1]
        if linkR.any():
            idx = np.nonzero(linkR)[0]
            nR_i[idx] = endR_i[idx - 1]
            nR_j[idx] = endR_j[idx - 1]
        endS_i, endS_j, endR_i, endR_j = nS_i, nS_j, nR_i, nR_j

        aligned = (Hb == Ha[i])
        ain = INa[i]
        if (ain & 1) == 1 and ain >= 0:
            aligned &= ~((INb == ain) | (OUTb == ain))
        js = np.nonzero(aligned)[0]
        if js.size == 0:
            continue
        rev = linkR[js]
        i1 = np.where(rev, endR_i[js], endS_i[js])
        j1 = np.where(rev, endR_j[js], endS_j[js])
        s = _judge_vec(m2, Ha, INa, OUTa, INb, OUTb, i, js, i1, j1, rev)
        hit = s != 0
        total += int(hit.sum())
        posc += int((s > 0).sum())
        if want and hit.any():
            recs.append(np.stack([np.full(hit.sum(), i), js[hit], i1[hit], j1[hit],
                                  rev[hit].astype(np.int64), s[hit]], axis=1))
    rec = np.concatenate(recs[::-1]) if recs else np.zeros((0, 6), np.int64)
    if want and len(rec):
        rec = rec[np.lexsort((rec[:, 1], rec[:, 0]))]
    return total, posc, rec


def _pos_vec(slot, face, m2):
    return np.where(face == 1, slot, (m2 - slot) % m2)


def _judge_vec(m2, Ha, INa, OUTa, INb, OUTb, i0, j0, i1, j1, rev):
    ain = INa[i0]
    aout = OUTa[i1]
    b1 = np.where(rev, OUTb[j0], INb[j0])
    b2 = np.where(rev, INb[j1], OUTb[j1])
    f0 = Ha[i0]
    f1 = Ha[i1]
    unknown = (ain == UNKNOWN) | (aout == UNKNOWN) | (b1 == UNKNOWN) | (b2 == UNKNOWN)
    out = np.zeros(len(j0), np.int64)

    one = i1 == i0
    if one.any():
        base = _pos_vec(ain, f0, m2)
        ra = (_pos_vec(aout[one], f0, m2) - base) % m2
        r1 = (_pos_vec(b1[one], f0, m2) - base) % m2
        r2 = (_pos_vec(b2[one], f0, m2) - base) % m2
        in1 = r1 < ra
        in2 = r2 < ra
        touch = (b1[one] == ain) | (b2[one] == ain) | (b1[one] == aout[one]) | (b2[one] == aout[one])
        cross = (in1 != in2) & ~touch
        out[one] = np.where(cross, np.where(in1, 1, -1), 0)
    many = ~one
    if many.any():
        f1m = f1[many]
        g0 = _pos_vec(OUTa[i0], f0, m2)
        g1 = _pos_vec(INa[i1[many]], f1m, m2)
        ra = (_pos_vec(ain, f0, m2) - g0) % m2
        rb = (_pos_vec(b1[many], f0, m2) - g0) % m2
        sa = (_pos_vec(aout[many], f1m, m2) - g1) % m2
        sb = (_pos_vec(b2[many], f1m, m2) - g1) % m2
        touch = (b1[many] == ain) | (b2[many] == aout[many])
        cross = ((ra < rb) == (sa < sb)) & ~touch
        right = np.where(rev[many], sb < sa, rb > ra)
        out[many] = np.where(cross, np.where(right, 1, -1), 0)
    out[unknown] = 0
    return out


def _as_arrays(arc):
    return tuple(np.ascontiguousarray(x, dtype=np.int64) for x in arc)


def count_crossings(n, a, b, use_numba=None):
    """(total crossings, crossings where b passes a right-to-left)."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    Ha, INa, OUTa = _as_arrays(a)
    Hb, INb, OUTb = _as_arrays(b)
    if use_numba and HAVE_NUMBA:
        dummy = np.zeros((1, 6), np.int64)
        t, p = _scan(n, Ha, INa, OUTa, Hb, INb, OUTb, False, dummy)
        return int(t), int(p)
    t, p, _ = _scan_numpy(n, Ha, INa, OUTa, Hb, INb, OUTb, False)
    return t, p


def crossing_records(n, a, b, use_numba=None):
    """Array of rows (i0, j0, i1, j1, reversed, sign), one per crossing,
    sorted by (i0, j0)."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    Ha, INa, OUTa = _as_arrays(a)
    Hb, INb, OUTb = _as_arrays(b)
    if use_numba and HAVE_NUMBA:
        dummy = np.zeros((1, 6), np.int64)
        t, _ = _scan(n, Ha, INa, OUTa, Hb, INb, OUTb, False, dummy)
        rec = np.zeros((max(t, 1), 6), np.int64)
        _scan(n, Ha, INa, OUTa, Hb, INb, OUTb, True, rec)
        return rec[:t]
    return _scan_numpy(n, Ha, INa, OUTa, Hb, INb, OUTb, True)[2]


@njit(cache=True)
def _pair_counts(n, H, IN, OUT, off, rows):
    """Crossing totals between arc ``r`` (for each r in ``rows``) and every
    later arc. Arcs are stored back to back, arc k at ``off[k]:off[k+1]``."""
    K = off.shape[0] - 1
    dummy = np.zeros((1, 6), np.int64)
    out = np.zeros((rows.shape[0], K), np.int64)
    for q in range(rows.shape[0]):
        r = rows[q]
        a0, a1 = off[r], off[r + 1]
        for s in range(r + 1, K):
            b0, b1 = off[s], off[s + 1]
            t, _ = _scan(n, H[a0:a1], IN[a0:a1], OUT[a0:a1], H[b0:b1], IN[b0:b1], OUT[b0:b1], False, dummy)
            out[q, s] = t
    return out


def pack_lifts(lifts):
    """Concatenate (H, IN, OUT) triples; returns arrays and offsets."""
    off = np.zeros(len(lifts) + 1, np.int64)
    for k, lf in enumerate(lifts):
        off[k + 1] = off[k] + len(lf[0])
    if not lifts:
        z = np.zeros(0, np.int64)
        return z, z, z, off
    H = np.concatenate([np.asarray(lf[0], np.int64) for lf in lifts])
    IN = np.concatenate([np.asarray(lf[1], np.int64) for lf in lifts])
    OUT = np.concatenate([np.asarray(lf[2], np.int64) for lf in lifts])
    return H, IN, OUT, off


def pairwise_crossings(n, lifts, use_numba=None):
    """Upper-triangular matrix of crossing totals between the given lifts."""
    if use_numba is None:
        use_numba = HAVE_NUMBA
    K = len(lifts)
    if use_numba and HAVE_NUMBA:
        H, IN, OUT, off = pack_lifts(lifts)
        return _pair_counts(n, H, IN, OUT, off, np.arange(K, dtype=np.int64))
    out = np.zeros((K, K), np.int64)
    for r in range(K):
        for s in range(r + 1, K):
            out[r, s] = count_crossings(n, lifts[r], lifts[s], False)[0]
    return out


@njit(cache=True)
def _prefix_arrays(h0, edges, d):
    H = np.empty(d + 1, np.int64)
    IN = np.empty(d + 1, np.int64)
    OUT = np.empty(d + 1, np.int64)
    IN[0] = 0
    for i in range(d + 1):
        H[i] = (h0 + i) & 1
        if i > 0:
            IN[i] = 2 * edges[i - 1] + 1
        if i < d:
            OUT[i] = 2 * edges[i] + 1
    OUT[d] = UNKNOWN
    return H, IN, OUT


@njit(cache=True)
def _trie_neighbours(n, u, H, IN, OUT, off, pH, pIN, pOUT, poff,
                     child_ptr, child_idx, vert_ptr, vert_idx, roots, node_max):
    """Indices v > u whose arcs miss arc ``u``. Arcs sharing a prefix hang
    off one trie node, and a node whose prefix already crosses ``u`` is not
    explored further."""
    dummy = np.zeros((1, 6), np.int64)
    a0, a1 = off[u], off[u + 1]
    uH, uIN, uOUT = H[a0:a1], IN[a0:a1], OUT[a0:a1]
    K = poff.shape[0] - 1
    out = np.empty(64, np.int64)
    cnt = 0
    stack = np.empty(K, np.int64)
    top = 0
    for k in range(roots.shape[0]):
        stack[top] = roots[k]
        top += 1
    while top > 0:
        top -= 1
        p = stack[top]
        if node_max[p] <= u:
            continue
        c0, c1 = poff[p], poff[p + 1]
        if c1 - c0 > 1:
            t, _ = _scan(n, uH, uIN, uOUT, pH[c0:c1], pIN[c0:c1], pOUT[c0:c1], False, dummy)
            if t > 0:
                continue
        for q in range(vert_ptr[p], vert_ptr[p + 1]):
            v = vert_idx[q]
            if v <= u:
                continue
            b0, b1 = off[v], off[v + 1]
            t, _ = _scan(n, uH, uIN, uOUT, H[b0:b1], IN[b0:b1], OUT[b0:b1], False, dummy)
            if t == 0:
                if cnt == out.shape[0]:
                    bigger = np.empty(2 * cnt, np.int64)
                    bigger[:cnt] = out
                    out = bigger
                out[cnt] = v
                cnt += 1
        for q in range(child_ptr[p], child_ptr[p + 1]):
            stack[top] = child_idx[q]
            top += 1
    return out[:cnt]


class PrefixTrie:
    """Arcs from infinity grouped by (start face, crossed edges) prefixes."""

    def __init__(self, n, arcs):
        self.n = n
        lifts = [a.lift for a in arcs]
        self.H, self.IN, self.OUT, self.off = pack_lifts(lifts)
        ids = {}
        parent, depth, h0s, words = [], [], [], []

        def node(h0, word):
            key = (h0, word)
            if key in ids:
                return ids[key]
            if word:
                node(h0, word[:-1])
            ids[key] = len(parent)
            parent.append(ids.get((h0, word[:-1]), -1) if word else -1)
            depth.append(len(word))
            h0s.append(h0)
            words.append(word)
            return ids[key]

        # arcs that leave infinity into one face all hang below that face's root
        node(0, ())
        node(1, ())
        at = [node(a.h0, tuple(a.edges)) for a in arcs]
        K = len(parent)
        self.pH, self.pIN, self.pOUT, self.poff = pack_lifts(
            [_prefix_arrays(h0s[k], np.asarray(words[k], np.int64), depth[k]) for k in range(K)])
        self.child_ptr, self.child_idx = _csr(K, [(p, k) for k, p in enumerate(parent) if p >= 0])
        self.vert_ptr, self.vert_idx = _csr(K, [(p, v) for v, p in enumerate(at)])
        self.roots = np.asarray([ids[(0, ())], ids[(1, ())]], np.int64)
        # largest arc index below each node, so searches for v > u can stop early
        node_max = np.full(K, -1, np.int64)
        for v, p in enumerate(at):
            node_max[p] = max(node_max[p], v)
        for k in sorted(range(K), key=lambda k: -depth[k]):
            if parent[k] >= 0:
                node_max[parent[k]] = max(node_max[parent[k]], node_max[k])
        self.node_max = node_max

    def neighbours(self, u):
        return _trie_neighbours(self.n, u, self.H, self.IN, self.OUT, self.off, self.pH,
                                self.pIN, self.pOUT, self.poff, self.child_ptr, self.child_idx,
                                self.vert_ptr, self.vert_idx, self.roots, self.node_max)


def _csr(K, pairs):
    pairs.sort()
    ptr = np.zeros(K + 1, np.int64)
    for p, _ in pairs:
        ptr[p + 1] += 1
    ptr = np.cumsum(ptr)
    idx = np.asarray([x for _, x in pairs], np.int64)
    return ptr, idx
