"""Semialgebraic cells: linearization in monomial space and redundancy removal.

A recorded ledger is a list of atoms ``p < 0``, ``p <= 0`` or ``p = 0``.  Each
monomial of degree at least two gets its own coordinate, which turns the atoms
into a not-necessarily-closed polyhedron.  Redundancy is decided on that
polyhedron only (relations between monomials are not used), with exact LPs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from gmpy2 import mpq

from .atoms import Atom
from .field import ParamContext
from .gomory import Verdict, classify_params
from .polys import MultiPoly, parse_poly, rational
from .simplex import linprog_exact

__all__ = [
    "MonomialMap",
    "LinConstraint",
    "LinPolyhedron",
    "Cell",
    "linearize",
    "remove_redundancy",
    "reduce_atoms",
    "build_cell",
    "cell_contains",
    "cell_walls",
]


class MonomialMap:
    """Exponent vector -> coordinate index; grows, never reindexes."""

    def __init__(self, gens):
        self.gens = tuple(gens)
        self.exps: list[tuple] = []
        self._index: dict[tuple, int] = {}
        n = len(self.gens)
        for i in range(n):
            self.index(tuple(int(j == i) for j in range(n)))

    def __len__(self):
        return len(self.exps)

    def index(self, e) -> int:
        e = tuple(e)
        k = self._index.get(e)
        if k is None:
            k = self._index[e] = len(self.exps)
            self.exps.append(e)
        return k

    def lift(self, point):
        point = [rational(x) for x in point]
        out = []
        for e in self.exps:
            v = mpq(1)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            out.append(v)
        return out

    def label(self, k):
        return str(MultiPoly.monomial(self.gens, self.exps[k]))


@dataclass(frozen=True)
class LinConstraint:
    """``sum coeffs[k] * z_k + const  rel  0``."""

    coeffs: tuple  # of (index, mpq), sorted by index
    const: object
    rel: str
    atom: Atom | None = None

    def value(self, z):
        return sum((c * z[k] for k, c in self.coeffs), mpq(0)) + self.const

    def dense(self, n):
        row = [mpq(0)] * n
        for k, c in self.coeffs:
            row[k] = c
        return row


@dataclass
class LinPolyhedron:
    dim: int
    constraints: list = field(default_factory=list)

    def contains(self, z) -> bool:
        for c in self.constraints:
            v = c.value(z)
            if (c.rel == "eq" and v != 0) or (c.rel == "lt" and v >= 0) or (c.rel == "le" and v > 0):
                return False
        return True


def linearize(atoms, mmap: MonomialMap) -> LinPolyhedron:
    out = []
    seen = set()
    for a in atoms:
        if (a.poly, a.sign, a.rel) in seen:
            continue
        seen.add((a.poly, a.sign, a.rel))
        const = mpq(0)
        coeffs = {}
        for e, c in a.oriented.terms.items():
            if not any(e):
                const = c
            else:
                coeffs[mmap.index(e)] = c
        out.append(LinConstraint(tuple(sorted(coeffs.items())), const, a.rel, a))
    return LinPolyhedron(len(mmap), out)


def _implied(target: LinConstraint, others, n) -> bool:
    """Does the NNC polyhedron ``others`` imply ``target``?"""
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in others:
        if c.rel == "eq":
            A_eq.append(c.dense(n))
            b_eq.append(-c.const)
        else:
            A_ub.append(c.dense(n))
            b_ub.append(-c.const)
    res = linprog_exact(target.dense(n), A_ub, b_ub, A_eq, b_eq)
    if res.status != "optimal":
        return False
    bound = -target.const
    if target.rel == "eq":
        if res.value != bound:
            return False
        low = linprog_exact([-x for x in target.dense(n)], A_ub, b_ub, A_eq, b_eq)
        return low.status == "optimal" and -low.value == bound
    if res.value < bound:
        return True
    if res.value > bound or target.rel == "le":
        return res.value <= bound
    # sup is attained on the wall: is there a point of the NNC set on it?
    t_row = lambda row: row + [mpq(0)]
    A2, b2 = [], []
    for c in others:
        if c.rel == "lt":
            A2.append(c.dense(n) + [mpq(1)])
            b2.append(-c.const)
        elif c.rel == "le":
            A2.append(t_row(c.dense(n)))
            b2.append(-c.const)
    A2.append([mpq(0)] * n + [mpq(1)])
    b2.append(mpq(1))
    E2 = [t_row(r) for r in A_eq] + [t_row(target.dense(n))]
    e2 = list(b_eq) + [bound]
    probe = linprog_exact([mpq(0)] * n + [mpq(1)], A2, b2, E2, e2)
    return not (probe.status == "optimal" and probe.value > 0)


def remove_redundancy(poly: LinPolyhedron, point=None) -> LinPolyhedron:
    """Drop constraints implied by the remaining ones, one at a time.

    Candidates are tried from the most complicated atom down, so that when two
    constraints imply each other the simpler one is kept.  The result is
    inclusion-minimal for the linear relaxation.
    """
    if point is not None and not poly.contains(point):
        raise AssertionError("the lifted test point violates the polyhedron")
    n = poly.dim
    kept = list(poly.constraints)
    order = sorted(
        range(len(kept)),
        key=lambda i: kept[i].atom.sort_key() if kept[i].atom is not None else (),
        reverse=True,
    )
    alive = [True] * len(kept)
    for i in order:
        others = [c for j, c in enumerate(kept) if alive[j] and j != i]
        if _implied(kept[i], others, n):
            alive[i] = False
    return LinPolyhedron(n, [c for j, c in enumerate(kept) if alive[j]])


def reduce_atoms(atoms, mmap: MonomialMap, point=None) -> list[Atom]:
    poly = linearize(atoms, mmap)
    lifted = mmap.lift(point) if point is not None else None
    red = remove_redundancy(LinPolyhedron(len(mmap), poly.constraints), lifted)
    return sorted((c.atom for c in red.constraints), key=Atom.sort_key)


@dataclass
class Cell:
    names: tuple
    atoms: tuple  # reduced description
    raw_atoms: tuple
    test_point: tuple
    verdict: Verdict
    mmap: MonomialMap | None = None

    @property
    def key(self):
        return frozenset((a.poly, a.sign, a.rel) for a in self.atoms)

    @property
    def equalities(self):
        return [a for a in self.atoms if a.rel == "eq"]

    @property
    def walls(self):
        return [a for a in self.atoms if a.rel != "eq"]

    def contains(self, point) -> bool:
        point = [rational(x) for x in point]
        return all(a.holds_at(point) for a in self.atoms)

    def dump(self):
        return "\n".join(str(a) for a in self.equalities + self.walls)

    def to_dict(self):
        return {
            "names": list(self.names),
            "test_point": [str(x) for x in self.test_point],
            "verdict": self.verdict.value,
            "equalities": [str(a) for a in self.equalities],
            "walls": [str(a) for a in self.walls],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        names = tuple(d["names"])
        atoms = [_parse_atom(s, names) for s in d["equalities"] + d["walls"]]
        return cls(names, tuple(atoms), tuple(atoms),
                   tuple(rational(x) for x in d["test_point"]), Verdict(d["verdict"]))


def _parse_atom(text, names):
    for sym, rel in (("<=", "le"), ("<", "lt"), ("=", "eq")):
        if sym in text:
            lhs = text.split(sym)[0]
            p = parse_poly(lhs, gens=names)
            return Atom.oriented_from(p, rel)
    raise ValueError(f"cannot parse atom {text!r}")


def cell_contains(cell: Cell, point) -> bool:
    return cell.contains(point)


def cell_walls(cell: Cell) -> list[Atom]:
    return cell.walls


def build_cell(constructor, free, point, fixed=None, stage="extreme", mmap=None) -> Cell:
    """Run the parametric pipeline at ``point`` and reduce the recorded cell.

    ``free`` names the parameters that vary; ``fixed`` maps the remaining
    parameter positions (by name, in ``order``) to constants.  When ``fixed``
    is given it must be an ordered mapping covering all parameters, with
    ``None`` for the free ones.
    """
    free = tuple(free)
    ctx = ParamContext(free, point)
    gens = dict(zip(free, ctx.gens))
    if fixed is None:
        args = list(ctx.gens)
    else:
        args = [gens[k] if v is None else rational(v) for k, v in fixed.items()]
    verdict = classify_params(constructor, args, stage)
    raw = ctx.ledger.refined()
    if mmap is None:
        mmap = MonomialMap(free)
    atoms = reduce_atoms(raw, mmap, ctx.test_point)
    return Cell(free, tuple(atoms), tuple(raw), ctx.test_point, verdict, mmap)
