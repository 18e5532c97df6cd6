"""Cell complexes by wall-crossing breadth-first search.

Starting from a seed, classify it parametrically, then for every wall of every
cell look for a point just across the wall and classify that point.  A point
is only ever accepted after exact verification of all signs, so heuristic
failures cost completeness, not soundness.
"""
from __future__ import annotations

import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

from .atoms import Atom
from .cells import Cell, MonomialMap, build_cell
from .families import get_family
from .gomory import Verdict, classify_params
from .polys import rational

__all__ = [
    "SliceSpec",
    "CellComplex",
    "NeighborConfig",
    "classify",
    "classify_concrete",
    "find_neighbor_point",
    "bfs_complex",
    "region_union_description",
    "coverage",
    "sample_in_cell",
]


@dataclass
class SliceSpec:
    family: str
    fixed: dict = field(default_factory=dict)
    free: tuple = ()
    box: dict = field(default_factory=dict)

    def __post_init__(self):
        fam = get_family(self.family)
        self.fixed = {k: rational(v) for k, v in self.fixed.items()}
        if not self.free:
            self.free = tuple(p for p in fam.params if p not in self.fixed)
        self.free = tuple(self.free)
        if set(self.fixed) | set(self.free) != set(fam.params) or set(self.fixed) & set(self.free):
            raise ValueError(f"fixed and free parameters must partition {fam.params}")
        box = {}
        for name in self.free:
            lo, hi = self.box.get(name, (0, 1))
            lo, hi = rational(lo), rational(hi)
            if not lo < hi:
                raise ValueError(f"empty box for {name}")
            box[name] = (lo, hi)
        self.box = box

    @property
    def constructor(self):
        return get_family(self.family).constructor

    def ordered(self):
        """Parameter name -> constant or None (free), in family order."""
        return {p: self.fixed.get(p) for p in get_family(self.family).params}

    def full_point(self, point):
        it = iter(point)
        return [next(it) if v is None else v for v in self.ordered().values()]

    def in_box(self, point, strict=True) -> bool:
        for name, x in zip(self.free, point):
            lo, hi = self.box[name]
            if strict and not lo < x < hi:
                return False
            if not strict and not lo <= x <= hi:
                return False
        return True

    def to_dict(self):
        return {
            "family": self.family,
            "fixed": {k: str(v) for k, v in self.fixed.items()},
            "free": list(self.free),
            "box": {k: [str(lo), str(hi)] for k, (lo, hi) in self.box.items()},
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["family"], d.get("fixed", {}), tuple(d.get("free", ())),
                   {k: tuple(v) for k, v in d.get("box", {}).items()})


@dataclass
class NeighborConfig:
    step_fraction: Fraction = Fraction(1, 8)  # first step, relative to box diameter
    halvings: int = 18
    max_denominator: int = 10**6
    attempts: int = 40
    seed: int = 0


@dataclass
class CellComplex:
    spec: SliceSpec
    cells: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (i, j, wall atom)
    failures: list = field(default_factory=list)  # (i, wall atom)

    def find(self, point):
        for i, c in enumerate(self.cells):
            if c.contains(point):
                return i
        return None

    def counts(self):
        out = {}
        for c in self.cells:
            out[c.verdict.value] = out.get(c.verdict.value, 0) + 1
        return out

    def to_dict(self):
        return {
            "spec": self.spec.to_dict(),
            "cells": [c.to_dict() for c in self.cells],
            "edges": [[i, j, str(w)] for i, j, w in self.edges],
            "failures": [[i, str(w)] for i, w in self.failures],
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        spec = SliceSpec.from_dict(d["spec"])
        cells = [Cell.from_dict(c) for c in d["cells"]]
        from .cells import _parse_atom

        edges = [(i, j, _parse_atom(w, spec.free)) for i, j, w in d["edges"]]
        failures = [(i, _parse_atom(w, spec.free)) for i, w in d["failures"]]
        return cls(spec, cells, edges, failures)


def classify(spec: SliceSpec, point, mmap=None, stage="extreme") -> Cell:
    """Parametric run at ``point``; the returned cell carries the verdict."""
    return build_cell(spec.constructor, spec.free, point, spec.ordered(), stage, mmap)


def classify_concrete(spec: SliceSpec, point, stage="extreme") -> Verdict:
    return classify_params(spec.constructor, spec.full_point([rational(x) for x in point]), stage)


def _rationalize(xs, bound):
    return [mpq(Fraction(x).limit_denominator(bound)) for x in xs]


def _project(p, x, iters=30):
    """Newton steps onto the zero set of ``p`` (floating point)."""
    for _ in range(iters):
        v = p.eval_float(x)
        g = p.gradient_float(x)
        gg = sum(t * t for t in g)
        if gg == 0:
            return None
        x = [xi - v * gi / gg for xi, gi in zip(x, g)]
        if abs(v) < 1e-15:
            break
    return x


def find_neighbor_point(cell: Cell, wall: Atom, spec: SliceSpec, config: NeighborConfig | None = None):
    """A rational point across ``wall`` that satisfies all other atoms of ``cell``.

    Returns ``None`` after ``config.attempts`` unsuccessful starting points.
    """
    config = config or NeighborConfig()
    rng = random.Random(config.seed)
    p = wall.oriented
    others = [a for a in cell.atoms if a.poly != wall.poly]
    diam = math.sqrt(sum(float(hi - lo) ** 2 for lo, hi in spec.box.values()))
    widths = [float(spec.box[n][1] - spec.box[n][0]) for n in spec.free]
    x0 = [float(x) for x in cell.test_point]

    def ok(q):
        if not spec.in_box(q) or p.eval(q) <= 0:
            return False
        return all(a.holds_at(q) for a in others)

    for attempt in range(config.attempts):
        if attempt == 0:
            start = x0
        else:
            r = 0.5 ** (attempt % 8)
            start = [xi + r * w * (rng.random() - 0.5) for xi, w in zip(x0, widths)]
        w = _project(p, start)
        if w is None:
            continue
        g = p.gradient_float(w)
        gn = math.sqrt(sum(t * t for t in g))
        if gn == 0:
            continue
        n = [t / gn for t in g]
        # smallest step first, so that thin neighbouring cells are not jumped over
        h0 = float(config.step_fraction) * diam
        for k in reversed(range(config.halvings)):
            h = h0 / 2**k
            q = _rationalize([wi + h * ni for wi, ni in zip(w, n)], config.max_denominator)
            if ok(q):
                return q
    return None


def _crossings(cell: Cell):
    """Walls to cross: strict sides of inequalities, both sides of equations."""
    out = []
    for a in cell.atoms:
        if a.rel == "eq":
            out += [Atom(a.poly, 1, "lt"), Atom(a.poly, -1, "lt")]
        else:
            out.append(a)
    return out


def bfs_complex(spec: SliceSpec, seed, config: NeighborConfig | None = None,
                max_cells: int | None = None, stage="extreme", progress=None) -> CellComplex:
    seed = [rational(x) for x in seed]
    if not spec.in_box(seed, strict=False):
        raise ValueError("seed outside the bounding box")
    config = config or NeighborConfig()
    mmap = MonomialMap(spec.free)
    cx = CellComplex(spec)
    keys = {}

    def add(cell):
        k = cell.key
        if k in keys:
            return keys[k], False
        keys[k] = len(cx.cells)
        cx.cells.append(cell)
        return keys[k], True

    first, _ = add(classify(spec, seed, mmap, stage))
    queue = deque((first, w) for w in _crossings(cx.cells[first]))
    seen_edges = set()
    while queue:
        i, wall = queue.popleft()
        q = find_neighbor_point(cx.cells[i], wall, spec, config)
        if q is None:
            cx.failures.append((i, wall))
            continue
        j = cx.find(q)
        if j is None:
            if max_cells is not None and len(cx.cells) >= max_cells:
                cx.failures.append((i, wall))
                continue
            j, new = add(classify(spec, q, mmap, stage))
            if new:
                queue.extend((j, w) for w in _crossings(cx.cells[j]))
                if progress:
                    progress(cx)
        ek = (min(i, j), max(i, j), wall.poly)
        if i != j and ek not in seen_edges:
            seen_edges.add(ek)
            cx.edges.append((i, j, wall))
    return cx


def region_union_description(cx: CellComplex, verdict: Verdict):
    """Outer walls of the union of cells with ``verdict``.

    Returns ``(atoms, nonlinear)``: atoms that do not appear with both
    orientations among the selected cells, and the nonlinear ones among them
    (candidates for manual inspection).
    """
    sides = {}
    for c in cx.cells:
        if c.verdict != verdict:
            continue
        for a in c.atoms:
            sides.setdefault(a.poly, {}).setdefault((a.sign, a.rel), a)
    out = []
    for poly, by_side in sides.items():
        signs = {s for s, rel in by_side if rel != "eq"}
        if len(signs) > 1:
            continue  # inner wall
        out.extend(by_side.values())
    out.sort(key=Atom.sort_key)
    return out, [a for a in out if a.poly.total_degree() > 1]


def coverage(cx: CellComplex, n=100, exclude_walls=True):
    """Fraction of the ``n x n`` grid of pixel-centre samples lying in a cell.

    Samples on the zero set of any atom of the complex are boundary samples
    and are left out of the count when ``exclude_walls`` is set.
    """
    names = cx.spec.free
    if len(names) != 2:
        raise ValueError("coverage is defined for two-dimensional slices")
    (lo0, hi0), (lo1, hi1) = (cx.spec.box[k] for k in names)
    walls = {a.poly for c in cx.cells for a in c.atoms}
    hit = total = 0
    for i in range(n):
        for j in range(n):
            pt = (lo0 + (hi0 - lo0) * mpq(2 * i + 1, 2 * n), lo1 + (hi1 - lo1) * mpq(2 * j + 1, 2 * n))
            if exclude_walls and any(p.eval(pt) == 0 for p in walls):
                continue
            total += 1
            if cx.find(pt) is not None:
                hit += 1
    return hit / total if total else 1.0


def sample_in_cell(cell: Cell, spec: SliceSpec, k=10, seed=0, tries=20000):
    """Up to ``k`` random rational points in the cell (rejection near the test point)."""
    rng = random.Random(seed)
    widths = [spec.box[n][1] - spec.box[n][0] for n in spec.free]
    out = []
    scale = mpq(1, 4)
    for t in range(tries):
        if len(out) >= k:
            break
        if t and t % 200 == 0:
            scale /= 2
        q = [x + w * scale * mpq(rng.randint(-1000, 1000), 1000)
             for x, w in zip(cell.test_point, widths)]
        if spec.in_box(q) and cell.contains(q):
            out.append(q)
    return out
