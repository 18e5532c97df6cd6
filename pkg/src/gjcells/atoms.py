"""Polynomial sign atoms and the normalization of recorded comparisons.

An atom is ``sign * poly  rel  0`` where ``poly`` is primitive, integral and has
a positive leading coefficient.  Strict atoms are oriented so that the left
side is negative at the point where they were recorded; that is also the form
used when printing, e.g. ``-a < 0``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .polys import MultiPoly, RatFunc, squarefree_factor

__all__ = ["Atom", "normalize_and_factor", "coprime_refine", "REL_SYMBOL"]

REL_SYMBOL = {"eq": "=", "lt": "<", "le": "<="}


@dataclass(frozen=True)
class Atom:
    poly: MultiPoly
    sign: int = 1
    rel: str = "lt"

    def __post_init__(self):
        if self.rel not in REL_SYMBOL:
            raise ValueError(f"bad relation {self.rel!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.poly.is_constant():
            raise ValueError("atoms must be nonconstant")

    @classmethod
    def oriented_from(cls, p: MultiPoly, rel: str) -> Atom:
        """Atom meaning ``p rel 0`` for an arbitrary nonzero polynomial ``p``."""
        c, q = p.primitive()
        if rel == "eq":
            return cls(q, 1, "eq")
        return cls(q, 1 if c > 0 else -1, rel)

    @property
    def oriented(self) -> MultiPoly:
        return self.poly if self.sign > 0 else -self.poly

    @property
    def gens(self):
        return self.poly.gens

    def holds_at(self, point) -> bool:
        v = self.oriented.eval(point)
        if self.rel == "eq":
            return v == 0
        if self.rel == "lt":
            return v < 0
        return v <= 0

    def flipped(self) -> Atom:
        """The opposite strict side, ``-oriented < 0``."""
        return Atom(self.poly, -self.sign, "lt")

    def sort_key(self):
        p = self.oriented
        return (self.rel != "eq", p.total_degree(), len(p.terms), str(p))

    def __str__(self):
        return f"{self.oriented} {REL_SYMBOL[self.rel]} 0"


def _sign_at(p, point):
    v = p.eval(point)
    return (v > 0) - (v < 0)


def _atoms_from_factors(num_factors, den_factors, observed, point):
    out = []
    for q, _ in den_factors:
        s = _sign_at(q, point)
        if s == 0:
            raise ArithmeticError("denominator factor vanishes at the test point")
        out.append(Atom(q, -s, "lt"))
    if observed == "zero":
        hit = False
        for q, _ in num_factors:
            if _sign_at(q, point) == 0:
                out.append(Atom(q, 1, "eq"))
                hit = True
        if not hit:
            raise ArithmeticError("value recorded as zero but no factor vanishes")
        return out
    vanish = [q for q, _ in num_factors if _sign_at(q, point) == 0]
    if observed == "neg" and vanish:
        raise ArithmeticError("value recorded as negative but a factor vanishes")
    if vanish:
        # weak inequality that holds with equality: only the equation is recorded
        return out + [Atom(q, 1, "eq") for q in vanish]
    rel = "lt" if observed == "neg" else "le"
    for q, m in num_factors:
        if m % 2 == 0:
            continue
        out.append(Atom(q, -_sign_at(q, point), rel))
    return out


def normalize_and_factor(sym, observed: str, point, known=()) -> list[Atom]:
    """Turn ``sym  <observed>  0`` at ``point`` into factored polynomial atoms.

    ``observed`` is ``"neg"`` (sym < 0), ``"zero"`` (sym = 0) or ``"nonpos"``
    (sym <= 0).  Denominator factors always give strict atoms.  ``known`` is a
    collection of polynomials used to split factors further by gcds.
    """
    if observed not in ("neg", "zero", "nonpos"):
        raise ValueError(f"bad observation {observed!r}")
    if isinstance(sym, MultiPoly):
        sym = RatFunc(sym)
    if sym.den.eval(point) == 0:
        raise ArithmeticError("denominator vanishes at the test point")
    val = sym.eval(point)
    if (observed == "zero") != (val == 0) or (observed == "neg" and val >= 0) or val > 0:
        raise ArithmeticError(f"observation {observed!r} inconsistent with value {val}")
    if sym.num.is_zero():
        return []
    num = squarefree_factor(sym.num, known) if not sym.num.is_constant() else []
    den = squarefree_factor(sym.den, known) if not sym.den.is_constant() else []
    return _atoms_from_factors(num, den, observed, point)


def coprime_refine(atoms, point) -> list[Atom]:
    """Split atoms until their polynomials are pairwise coprime.

    Strict atoms split into strict atoms, equations keep only the vanishing
    part, weak atoms keep their relation when nonzero.  The conjunction of the
    output is contained in the conjunction of the input and contains ``point``.
    """
    work = list(atoms)
    changed = True
    while changed:
        changed = False
        polys = list({a.poly for a in work})
        out = []
        for a in work:
            parts = squarefree_factor(a.poly, polys)
            if len(parts) == 1 and parts[0][1] == 1:
                out.append(a)
                continue
            changed = True
            for q, m in parts:
                s = _sign_at(q, point)
                if a.rel == "eq":
                    if s == 0:
                        out.append(Atom(q, 1, "eq"))
                elif s == 0:
                    out.append(Atom(q, 1, "eq"))
                elif a.rel == "lt" or m % 2:
                    out.append(Atom(q, -s, a.rel))
        work = out
    return work
