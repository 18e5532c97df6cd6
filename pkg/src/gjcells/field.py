"""Parametric ordered field: elements are ``<symbolic || concrete>`` pairs.

Arithmetic is carried out on both components.  Comparisons are decided by the
concrete values and the outcome is recorded as polynomial sign atoms in the
context's ledger, so that after a run the ledger describes the set of
parameters on which the same branches would be taken.

    >>> ctx = ParamContext(["x", "y"], [7, 6])
    >>> x, y = ctx.gens
    >>> x * (x + y) > 42
    True
    >>> print(ctx.ledger.dump())
    -x^2 - x*y + 42 < 0
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from gmpy2 import mpq

from .atoms import Atom, coprime_refine, normalize_and_factor
from .polys import MultiPoly, RatFunc, rational

__all__ = [
    "ParamContext",
    "ParamElement",
    "ConstraintLedger",
    "LedgerSnapshot",
    "field_new",
    "is_param",
]

DEBUG = bool(os.environ.get("GJCELLS_DEBUG"))


class LedgerError(AssertionError):
    """Two recorded atoms contradict each other; this signals a bug."""


@dataclass(frozen=True)
class LedgerSnapshot:
    eq_atoms: frozenset = field(default_factory=frozenset)
    lt_atoms: frozenset = field(default_factory=frozenset)
    le_atoms: frozenset = field(default_factory=frozenset)

    @property
    def atoms(self):
        return sorted(self.eq_atoms | self.lt_atoms | self.le_atoms, key=Atom.sort_key)

    def dump(self):
        return "\n".join(str(a) for a in self.atoms)


class ConstraintLedger:
    """Deduplicated atoms keyed by their canonical polynomial."""

    def __init__(self, point):
        self.point = point
        self._atoms: dict[MultiPoly, Atom] = {}

    def __len__(self):
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms.values())

    def polys(self):
        return self._atoms.keys()

    def add(self, atom: Atom):
        old = self._atoms.get(atom.poly)
        if old is None:
            self._atoms[atom.poly] = atom
            return
        if old == atom:
            return
        if old.rel == "eq" or atom.rel == "eq":
            if "lt" in (old.rel, atom.rel):
                raise LedgerError(f"inconsistent atoms {old} and {atom}")
            self._atoms[atom.poly] = Atom(atom.poly, 1, "eq")
            return
        if old.sign != atom.sign:
            if old.rel == atom.rel == "le":
                self._atoms[atom.poly] = Atom(atom.poly, 1, "eq")
                return
            raise LedgerError(f"inconsistent atoms {old} and {atom}")
        if atom.rel == "lt":
            self._atoms[atom.poly] = atom

    def record(self, sym, observed):
        for a in normalize_and_factor(sym, observed, self.point, self._atoms.keys()):
            self.add(a)

    def refined(self) -> list[Atom]:
        """Atoms split into a pairwise coprime family, deduplicated."""
        tmp = ConstraintLedger(self.point)
        for a in coprime_refine(list(self._atoms.values()), self.point):
            tmp.add(a)
        return sorted(tmp._atoms.values(), key=Atom.sort_key)

    def snapshot(self) -> LedgerSnapshot:
        eq, lt, le = set(), set(), set()
        for a in self._atoms.values():
            {"eq": eq, "lt": lt, "le": le}[a.rel].add(a)
        return LedgerSnapshot(frozenset(eq), frozenset(lt), frozenset(le))

    def dump(self):
        return self.snapshot().dump()


class ParamContext:
    """Parameter names, a rational test point and the ledger of one run."""

    def __init__(self, names, values, debug=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        values = tuple(rational(v) for v in values)
        if len(values) != len(names):
            raise ValueError("need exactly one value per parameter")
        self.names = names
        self.test_point = values
        self.ledger = ConstraintLedger(values)
        self.debug = DEBUG if debug is None else debug
        self.gens = tuple(
            ParamElement(self, RatFunc(MultiPoly.gen(names, i)), v)
            for i, v in enumerate(values)
        )
        self._one = RatFunc.const(names, 1)

    def const(self, c) -> ParamElement:
        c = rational(c)
        return ParamElement(self, RatFunc.const(self.names, c), c)

    def __call__(self, x):
        if isinstance(x, ParamElement):
            if x.ctx is not self:
                raise ValueError("element belongs to another context")
            return x
        return self.const(x)

    def record(self, sym: RatFunc, val):
        """Record the sign of ``sym`` as observed through its value ``val``."""
        if sym.is_constant():
            return
        if val > 0:
            self.ledger.record(-sym, "neg")
        elif val < 0:
            self.ledger.record(sym, "neg")
        else:
            self.ledger.record(sym, "zero")

    def snapshot(self) -> LedgerSnapshot:
        return self.ledger.snapshot()

    def __repr__(self):
        pt = ", ".join(f"{n}={v}" for n, v in zip(self.names, self.test_point))
        return f"ParamContext({pt}; {len(self.ledger)} atoms)"


def field_new(names, values):
    ctx = ParamContext(names, values)
    return ctx, ctx.gens


def is_param(x) -> bool:
    return isinstance(x, ParamElement)


class ParamElement:
    __slots__ = ("ctx", "sym", "val")
    __hash__ = None

    def __init__(self, ctx, sym, val):
        self.ctx = ctx
        self.sym = sym
        self.val = val
        if ctx.debug and not sym.is_constant() and sym.eval(ctx.test_point) != val:
            raise AssertionError(f"symbolic/concrete mismatch for {sym}: {val}")

    def _other(self, o):
        if isinstance(o, ParamElement):
            if o.ctx is not self.ctx:
                raise ValueError("cannot mix elements of different contexts")
            return o.sym, o.val
        c = rational(o)
        return c, c

    def __add__(self, o):
        s, v = self._other(o)
        return ParamElement(self.ctx, self.sym + s, self.val + v)

    __radd__ = __add__

    def __sub__(self, o):
        s, v = self._other(o)
        return ParamElement(self.ctx, self.sym - s, self.val - v)

    def __rsub__(self, o):
        s, v = self._other(o)
        return ParamElement(self.ctx, (-self.sym) + s, v - self.val)

    def __mul__(self, o):
        s, v = self._other(o)
        return ParamElement(self.ctx, self.sym * s, self.val * v)

    __rmul__ = __mul__

    def __neg__(self):
        return ParamElement(self.ctx, -self.sym, -self.val)

    def __pos__(self):
        return self

    def _check_divisor(self, s, v):
        if isinstance(s, RatFunc) and not s.is_constant():
            self.ctx.record(s, v)
        if not v:
            raise ZeroDivisionError("division by an element that vanishes at the test point")

    def __truediv__(self, o):
        s, v = self._other(o)
        self._check_divisor(s, v)
        return ParamElement(self.ctx, self.sym / s, self.val / v)

    def __rtruediv__(self, o):
        s, v = self._other(o)
        self._check_divisor(self.sym, self.val)
        return ParamElement(self.ctx, RatFunc.const(self.ctx.names, 1) * s / self.sym, v / self.val)

    def _cmp(self, o):
        s, v = self._other(o)
        d = self.sym - s
        diff = self.val - v
        if not d.is_constant():
            self.ctx.record(d, diff)
        return diff

    def __lt__(self, o):
        return self._cmp(o) < 0

    def __le__(self, o):
        return self._cmp(o) <= 0

    def __gt__(self, o):
        return self._cmp(o) > 0

    def __ge__(self, o):
        return self._cmp(o) >= 0

    def __eq__(self, o):
        try:
            return self._cmp(o) == 0
        except TypeError:
            return NotImplemented

    def __ne__(self, o):
        try:
            return self._cmp(o) != 0
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return self != 0

    def __float__(self):
        return float(self.val)

    def __str__(self):
        return f"<{self.sym} || {self.val}>"

    __repr__ = __str__
