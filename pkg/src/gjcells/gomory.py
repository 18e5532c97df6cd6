"""Minimality and extremality tests for continuous piecewise linear functions.

All routines are field-generic: run them on a function over the rationals to
get a verdict, or over the parametric field to also record the branch trace.

Why checking vertices suffices: on every face of the two-dimensional complex
cut out by the lines x = b, y = b and x + y = b (b a breakpoint, mod 1), the
slack ``Delta pi(x, y) = pi(x) + pi(y) - pi(x + y)`` is affine, so it is
nonnegative on the face iff it is nonnegative at the vertices.  Likewise
``pi(x) + pi(f - x)`` is affine between consecutive points of B and f - B, and
all those points are breakpoints or of the form f - breakpoint, so symmetry at
breakpoints x and f - x covers every piece.

Extremality uses the covered-interval argument: when every interval is
covered, a perturbation is affine on each connected component of covered
intervals, so the perturbation space is finite dimensional and its triviality
is decided by a linear system with one slope per component.
"""
from __future__ import annotations

import enum
import json
from bisect import bisect_right
from dataclasses import dataclass, field
from functools import cmp_to_key

from .field import ParamElement
from .pwl import NotConstructible, PWLPeriodic, frac

__all__ = [
    "Verdict",
    "DeltaVertex",
    "AdditiveFace",
    "CoveredComponents",
    "delta_pi",
    "complex_vertices",
    "minimality_test",
    "additive_faces",
    "covered_components",
    "extremality_test",
    "classify_params",
]

MAX_COVER_ROUNDS = 64


class Verdict(enum.Enum):
    NOT_CONSTRUCTIBLE = "not_constructible"
    NOT_MINIMAL = "not_minimal"
    MINIMAL_NOT_EXTREME = "minimal_not_extreme"
    EXTREME = "extreme"
    UNCOVERED_UNKNOWN = "uncovered_unknown"

    @property
    def color(self):
        return _COLORS[self]

    @property
    def rgb(self):
        return _RGB[self]

    def to_json(self):
        return json.dumps({"status": self.value})

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text)["status"])

    def __str__(self):
        return self.value


_COLORS = {
    Verdict.NOT_CONSTRUCTIBLE: "white",
    Verdict.NOT_MINIMAL: "yellow",
    Verdict.MINIMAL_NOT_EXTREME: "green",
    Verdict.EXTREME: "blue",
    Verdict.UNCOVERED_UNKNOWN: "gray",
}
_RGB = {
    Verdict.NOT_CONSTRUCTIBLE: "#ffffff",
    Verdict.NOT_MINIMAL: "#f2d024",
    Verdict.MINIMAL_NOT_EXTREME: "#3fae49",
    Verdict.EXTREME: "#2f5fd0",
    Verdict.UNCOVERED_UNKNOWN: "#8c8c8c",
}


def _key(x):
    return x.sym if isinstance(x, ParamElement) else x


def _is_zero_const(x):
    if isinstance(x, ParamElement):
        return x.sym.is_zero()
    return x == 0


def _max(a, b):
    return a if a >= b else b


def _min(a, b):
    return a if a <= b else b


@dataclass
class DeltaVertex:
    x: object
    y: object
    slack: object


def delta_pi(fn: PWLPeriodic, x, y):
    return fn(x) + fn(y) - fn(x + y)


def complex_vertices(fn: PWLPeriodic) -> list[DeltaVertex]:
    """Vertices of the breakpoint complex, one per unordered pair."""
    b0 = fn.breakpoints[:-1]
    seen = set()
    out = []

    def add(x, y):
        k = frozenset((_key(x), _key(y)))
        if k in seen:
            return
        seen.add(k)
        out.append(DeltaVertex(x, y, delta_pi(fn, x, y)))

    for i, x in enumerate(b0):
        for y in b0[i:]:
            add(x, y)
    for x in b0:
        for z in b0:
            y = z - x
            if y < 0:
                y = y + 1
            add(x, y)
    return out


def minimality_test(fn: PWLPeriodic) -> bool:
    """Range, pi(0) = 0, subadditivity at vertices, symmetry at breakpoints."""
    for v in fn.values:
        if v < 0 or v > 1:
            return False
    if fn.values[0] != 0:
        return False
    for vx in complex_vertices(fn):
        if vx.slack < 0:
            return False
    if fn(fn.f) != 1:
        return False
    for x in fn.breakpoints[:-1]:
        if fn(x) + fn(fn.f - x) != 1:
            return False
    return True


# -- additive faces -------------------------------------------------------------


@dataclass
class AdditiveFace:
    """Face of the complex on which Delta pi vanishes.

    ``I``, ``J``, ``K`` are the projections to x, y and x + y (K reduced mod 1),
    each a pair ``(lo, hi)``; for lower dimensional faces some are degenerate.
    """

    dimension: int
    I: tuple
    J: tuple
    K: tuple
    vertices: list = field(default_factory=list)


@dataclass
class _Edge:
    kind: str  # "vertical", "horizontal" or "diagonal"
    const: object  # x, y or x + y on the edge
    lo: object  # range of the free coordinate (y for vertical, x otherwise)
    hi: object
    shift: int  # 1 if the sum lies in [1, 2)
    ends: tuple


class _Complex:
    """Polygons of the breakpoint complex over the squares I_i x I_j, i <= j."""

    def __init__(self, fn: PWLPeriodic):
        self.fn = fn
        self.delta_cache = {}
        self.zero = {}
        self.faces2 = []  # (polygon vertices, projections, additive flag)
        self.edges = {}  # key -> (_Edge, additive)
        self._build()

    def _delta(self, v, i, j, k, kk=None):
        if kk is None:
            kk = _vkey(v)
        d = self.delta_cache.get(kk)
        if d is None:
            fn = self.fn
            n = fn.n_pieces
            x, y = v
            s = x + y
            if k >= n:
                s = s - 1
            d = fn.on_piece(i, x) + fn.on_piece(j, y) - fn.on_piece(k % n, s)
            self.delta_cache[kk] = d
        return d

    def _build(self):
        fn = self.fn
        B = fn.breakpoints
        n = fn.n_pieces
        Z = list(B) + [1 + b for b in B[1:]]
        for i in range(n):
            xi, xi1 = B[i], B[i + 1]
            for j in range(i, n):
                yj, yj1 = B[j], B[j + 1]
                s00, s01, s10, s11 = xi + yj, xi + yj1, xi1 + yj, xi1 + yj1
                k0 = bisect_right(Z, s00) - 1
                levels = [s00]
                k = k0 + 1
                while Z[k] < s11:
                    levels.append(Z[k])
                    k += 1
                levels.append(s11)
                a_left = [t <= s01 for t in levels]
                b_right = [t >= s10 for t in levels]

                def A(idx):
                    t = levels[idx]
                    return (xi, t - xi) if a_left[idx] else (t - yj1, yj1)

                def Bv(idx):
                    t = levels[idx]
                    return (xi1, t - xi1) if b_right[idx] else (t - yj, yj)

                for idx in range(len(levels) - 1):
                    kk = k0 + idx
                    shift = 1 if kk >= n else 0
                    t0, t1 = levels[idx], levels[idx + 1]
                    c10 = not b_right[idx] and b_right[idx + 1] and t1 != s10
                    c01 = a_left[idx] and not a_left[idx + 1] and t0 != s01
                    segs = []  # (P, Q, kind, const)
                    P0, P1 = Bv(idx), Bv(idx + 1)
                    Q1, Q0 = A(idx + 1), A(idx)
                    if c10:
                        C = (xi1, yj)
                        segs.append((P0, C, "horizontal", yj))
                        segs.append((C, P1, "vertical", xi1))
                    elif b_right[idx]:
                        segs.append((P0, P1, "vertical", xi1))
                    else:
                        segs.append((P0, P1, "horizontal", yj))
                    segs.append((P1, Q1, "diagonal", t1))
                    if c01:
                        C = (xi, yj1)
                        segs.append((Q1, C, "horizontal", yj1))
                        segs.append((C, Q0, "vertical", xi))
                    elif a_left[idx + 1]:
                        segs.append((Q1, Q0, "vertical", xi))
                    else:
                        segs.append((Q1, Q0, "horizontal", yj1))
                    segs.append((Q0, P0, "diagonal", t0))
                    keyed = [(P, Q, kind, const, _vkey(P), _vkey(Q)) for P, Q, kind, const in segs]
                    keyed = [e for e in keyed if e[4] != e[5]]
                    verts, vkeys = [], []
                    for P, _, _, _, kp, _ in keyed:
                        if not vkeys or vkeys[-1] != kp:
                            verts.append(P)
                            vkeys.append(kp)
                    if len(vkeys) > 1 and vkeys[0] == vkeys[-1]:
                        verts.pop()
                        vkeys.pop()
                    deltas = [self._delta(v, i, j, kk, key) for v, key in zip(verts, vkeys)]
                    zero = [d == 0 for d in deltas]
                    proj = (
                        (Q0[0], P1[0]),
                        (P0[1], Q1[1]),
                        (t0 - shift, t1 - shift),
                    )
                    self.faces2.append((verts, proj, all(zero), (i, j, kk)))
                    zmap = dict(zip(vkeys, zero))
                    self.zero.update(zmap)
                    for P, Q, kind, const, kp, kq in keyed:
                        ek = frozenset((kp, kq))
                        if ek in self.edges:
                            continue
                        add = zmap[kp] and zmap[kq]
                        self.edges[ek] = (self._edge(P, Q, kind, const, shift), add)

    @staticmethod
    def _edge(P, Q, kind, const, shift):
        if kind == "vertical":
            lo, hi = (P[1], Q[1]) if _order_hint(P[1], Q[1]) else (Q[1], P[1])
        else:
            lo, hi = (P[0], Q[0]) if _order_hint(P[0], Q[0]) else (Q[0], P[0])
        return _Edge(kind, const, lo, hi, shift, (P, Q))


def _vkey(v):
    return (_key(v[0]), _key(v[1]))


def _order_hint(a, b):
    # ordering of two edge endpoints; the edge lies on a line of the complex,
    # so this order is implied by comparisons made while building it
    return (a.val if isinstance(a, ParamElement) else a) < (b.val if isinstance(b, ParamElement) else b)


def additive_faces(fn: PWLPeriodic, cx: _Complex | None = None) -> list[AdditiveFace]:
    """Maximal additive faces of the breakpoint complex (upper triangle x <= y)."""
    cx = cx or _Complex(fn)
    out = []
    covered_edges = set()
    covered_verts = set()
    for verts, (p1, p2, p3), add, _ in cx.faces2:
        if add:
            out.append(AdditiveFace(2, p1, p2, p3, verts))
            ks = [_vkey(v) for v in verts]
            covered_verts.update(ks)
            for a, b in zip(ks, ks[1:] + ks[:1]):
                covered_edges.add(frozenset((a, b)))
    for ek, (e, add) in cx.edges.items():
        if not add or ek in covered_edges:
            continue
        P, Q = e.ends
        covered_verts.update((_vkey(P), _vkey(Q)))
        if e.kind == "vertical":
            out.append(AdditiveFace(1, (e.const, e.const), (e.lo, e.hi),
                                    (e.const + e.lo - e.shift, e.const + e.hi - e.shift), [P, Q]))
        elif e.kind == "horizontal":
            out.append(AdditiveFace(1, (e.lo, e.hi), (e.const, e.const),
                                    (e.const + e.lo - e.shift, e.const + e.hi - e.shift), [P, Q]))
        else:
            t = e.const - e.shift
            out.append(AdditiveFace(1, (e.lo, e.hi), (e.const - e.hi, e.const - e.lo), (t, t), [P, Q]))
    for verts, _, _, _ in cx.faces2:
        for v in verts:
            k = _vkey(v)
            if k in covered_verts:
                continue
            if cx.zero[k]:
                covered_verts.add(k)
                s = v[0] + v[1]
                out.append(AdditiveFace(0, (v[0], v[0]), (v[1], v[1]), (s, s), [v]))
    return out


# -- covered components -----------------------------------------------------------


def _cmp_lo(a, b):
    if a[0] < b[0]:
        return -1
    return 1 if b[0] < a[0] else 0


def _union(intervals):
    """Merge a list of closed intervals into a sorted disjoint list."""
    if not intervals:
        return []
    ivs = sorted(intervals, key=cmp_to_key(_cmp_lo))
    out = [list(ivs[0])]
    for lo, hi in ivs[1:]:
        cur = out[-1]
        if lo <= cur[1]:
            cur[1] = _max(cur[1], hi)
        else:
            out.append([lo, hi])
    return [tuple(iv) for iv in out]


def _intersect(comp, iv):
    lo, hi = iv
    out = []
    for a, b in comp:
        l, h = _max(a, lo), _min(b, hi)
        if l < h:
            out.append((l, h))
    return out


def _overlaps(c1, c2):
    for a, b in c1:
        for c, d in c2:
            if _max(a, c) < _min(b, d):
                return True
    return False


def _contains_all(comp, ivs):
    for lo, hi in ivs:
        if not any(a <= lo and hi <= b for a, b in comp):
            return False
    return True


def _merge_components(comps):
    comps = [c for c in comps if c]
    merged = True
    while merged:
        merged = False
        for i in range(len(comps)):
            for j in range(i + 1, len(comps)):
                if _overlaps(comps[i], comps[j]):
                    comps[i] = _union(comps[i] + comps[j])
                    del comps[j]
                    merged = True
                    break
            if merged:
                break
    return comps


def _move_image(e: _Edge, ivs, forward=True):
    """Image of intervals under the move induced by an additive edge."""
    out = []
    for lo, hi in ivs:
        if e.kind == "diagonal":
            out.append((e.const - hi, e.const - lo))
        elif forward:
            out.append((lo + e.const - e.shift, hi + e.const - e.shift))
        else:
            out.append((lo - e.const + e.shift, hi - e.const + e.shift))
    return out


def _move_domains(e: _Edge):
    dom = (e.lo, e.hi)
    if e.kind == "diagonal":
        return dom, (e.const - e.hi, e.const - e.lo)
    return dom, (e.lo + e.const - e.shift, e.hi + e.const - e.shift)


@dataclass
class CoveredComponents:
    components: list  # each a sorted list of disjoint (lo, hi) intervals
    uncovered: list
    refined: list = field(default_factory=list)  # refined breakpoints, 0 .. 1
    assignment: list = field(default_factory=list)  # component index per refined interval
    converged: bool = True

    @property
    def all_covered(self):
        return not self.uncovered and self.converged


def covered_components(fn: PWLPeriodic, faces=None, cx: _Complex | None = None) -> CoveredComponents:
    """Directly covered intervals from additive 2-faces, closed under edge moves."""
    cx = cx or _Complex(fn)
    if faces is None:
        faces = additive_faces(fn, cx)
    comps = []
    for face in faces:
        if face.dimension == 2:
            comps.append(_union([face.I, face.J, face.K]))
    comps = _merge_components(comps)
    moves = []
    for e, add in cx.edges.values():
        if add and e.kind and e.lo < e.hi:
            moves.append(e)
    converged = False
    for _ in range(MAX_COVER_ROUNDS):
        changed = False
        for e in moves:
            dom, img = _move_domains(e)
            for ci, comp in enumerate(comps):
                new = []
                o = _intersect(comp, dom)
                if o:
                    new += _move_image(e, o, True)
                o = _intersect(comp, img)
                if o:
                    new += _move_image(e, o, False)
                if new and not _contains_all(comp, new):
                    comps[ci] = _union(comp + new)
                    changed = True
        comps = _merge_components(comps)
        if not changed:
            converged = True
            break
    pts = list(fn.breakpoints)
    for comp in comps:
        for lo, hi in comp:
            pts += [lo, hi]
    refined = _sorted_unique(pts)
    assignment = []
    uncovered = []
    for lo, hi in zip(refined, refined[1:]):
        owner = None
        for ci, comp in enumerate(comps):
            if _contains_all(comp, [(lo, hi)]):
                owner = ci
                break
        assignment.append(owner)
        if owner is None:
            uncovered.append((lo, hi))
    return CoveredComponents(comps, uncovered, refined, assignment, converged)


def _sorted_unique(pts):
    seen = {}
    for p in pts:
        seen.setdefault(_key(p), p)
    uniq = list(seen.values())
    uniq.sort(key=cmp_to_key(lambda a, b: -1 if a < b else (1 if b < a else 0)))
    out = []
    for p in uniq:
        if out and p == out[-1]:
            continue
        out.append(p)
    return out


# -- the perturbation system --------------------------------------------------------


class _Interp:
    """Continuous function with prescribed slopes per refined interval, as coefficient vectors."""

    def __init__(self, pts, assignment, ncomp, zero):
        self.pts = pts
        self.assignment = assignment
        self.ncomp = ncomp
        self.zero = zero
        pref = [[zero] * ncomp]
        for l, c in enumerate(assignment):
            row = list(pref[-1])
            row[c] = row[c] + (pts[l + 1] - pts[l])
            pref.append(row)
        self.pref = pref

    def at(self, x):
        x = frac(x)
        l = bisect_right(self.pts, x, 0, len(self.pts) - 1) - 1
        row = list(self.pref[l])
        c = self.assignment[l]
        row[c] = row[c] + (x - self.pts[l])
        return row


def _val(x):
    return x.val if isinstance(x, ParamElement) else x


class _System:
    """Rows of the perturbation system in the slope-per-component unknowns.

    Each row is ``[coefficients..., rhs]``.  The rows are pi_bar(f) = 1,
    pi_bar(1) = 0 and Delta pi_bar = 0 at vertices where Delta pi = 0.
    """

    def __init__(self, fn, cc: CoveredComponents):
        self.fn = fn
        used = sorted(set(cc.assignment))
        remap = {c: i for i, c in enumerate(used)}
        assignment = [remap[c] for c in cc.assignment]
        self.ncomp = len(used)
        self.zero = fn.breakpoints[0] * 0
        self.interp = _Interp(cc.refined, assignment, self.ncomp, self.zero)
        self.seen = set()
        cfn = fn.concrete_at()
        self.own = []
        for c in range(self.ncomp):
            lo = _val(cc.refined[assignment.index(c)])
            self.own.append(cfn.slopes[cfn.piece_index(lo)])

    def check(self, row):
        lhs = sum((_val(a) * s for a, s in zip(row, self.own)), 0)
        if lhs != _val(row[-1]):
            raise AssertionError("the function does not satisfy its own perturbation system")
        return row

    def normalization_rows(self):
        it = self.interp
        return [self.check(it.at(self.fn.f) + [self.zero + 1]),
                self.check(list(it.pref[-1]) + [self.zero])]

    def vertex_rows(self, pairs):
        rows = []
        it = self.interp
        for x, y, slack in pairs:
            k = frozenset((_key(x), _key(y)))
            if k in self.seen:
                continue
            self.seen.add(k)
            if slack is None:
                slack = delta_pi(self.fn, x, y)
            if slack == 0:
                rx, ry, rs = it.at(x), it.at(y), it.at(x + y)
                rows.append(self.check([a + b - c for a, b, c in zip(rx, ry, rs)] + [self.zero]))
        return rows


def _refined_pairs(pts):
    p0 = pts[:-1]
    for i, x in enumerate(p0):
        for y in p0[i:]:
            yield x, y, None
    for x in p0:
        for z in p0:
            y = z - x
            if y < 0:
                y = y + 1
            yield x, y, None


def _echelon_rank(rows, ncols):
    """Classical reduced row echelon form, column by column.

    For each column the first row (from the current start) with a nonzero
    entry becomes the pivot, and every other row with a nonzero entry in that
    column is reduced.  All nonzero tests are comparisons, hence recorded in
    parametric mode.
    """
    A = [list(r[:ncols]) for r in rows]
    nr = len(A)
    start = 0
    for c in range(ncols):
        if start == nr:
            break
        for r in range(start, nr):
            if not _is_zero_const(A[r][c]) and A[r][c] != 0:
                inv = 1 / A[r][c]
                A[r] = [x * inv for x in A[r]]
                A[r], A[start] = A[start], A[r]
                for i in range(nr):
                    if i == start:
                        continue
                    m = A[i][c]
                    if not _is_zero_const(m) and m != 0:
                        A[i] = [x - m * y for x, y in zip(A[i], A[start])]
                start += 1
                break
    return start


def extremality_test(fn: PWLPeriodic, details=False):
    """Grid-free extremality verdict for a constructed function."""
    if not minimality_test(fn):
        return (Verdict.NOT_MINIMAL, None) if details else Verdict.NOT_MINIMAL
    cx = _Complex(fn)
    faces = additive_faces(fn, cx)
    cc = covered_components(fn, faces, cx)
    if not cc.all_covered:
        return (Verdict.UNCOVERED_UNKNOWN, cc) if details else Verdict.UNCOVERED_UNKNOWN
    system = _System(fn, cc)
    rows = system.normalization_rows()
    rows += system.vertex_rows((v.x, v.y, v.slack) for v in complex_vertices(fn))
    rank = _echelon_rank(rows, system.ncomp)
    if rank < system.ncomp and len(cc.refined) > len(fn.breakpoints):
        # kinks of a perturbation may sit at refined breakpoints; add their vertices
        rows += system.vertex_rows(_refined_pairs(cc.refined))
        rank = _echelon_rank(rows, system.ncomp)
    v = Verdict.EXTREME if rank == system.ncomp else Verdict.MINIMAL_NOT_EXTREME
    return (v, cc) if details else v


def classify_params(constructor, params, stage="extreme") -> Verdict:
    """Construct, then test minimality and extremality up to ``stage``."""
    try:
        fn = constructor(*params)
    except NotConstructible:
        return Verdict.NOT_CONSTRUCTIBLE
    if stage == "construct":
        return Verdict.EXTREME
    if stage in ("minimal", "minimality"):
        return Verdict.EXTREME if minimality_test(fn) else Verdict.NOT_MINIMAL
    return extremality_test(fn)
