"""Finite oversampling oracle for concrete rational functions.

Restrict pi to the grid (1/(3q))Z/Z, where q is the common denominator of the
breakpoints, and decide whether the restriction is a vertex of the polytope of
minimal functions of the finite group problem: collect every tight
constraint (additivity, pi(0) = 0, pi(f) = 1, nonnegativity) and test whether
they pin down all grid values.  This shares no code with the grid-free test
beyond evaluating pi.
"""
from __future__ import annotations

from math import lcm

from gmpy2 import mpq

from .gomory import minimality_test
from .pwl import PWLPeriodic

__all__ = ["grid_oracle_extremality", "grid_size", "UnsupportedFunction"]


class UnsupportedFunction(ValueError):
    pass


def grid_size(fn: PWLPeriodic) -> int:
    if fn.parametric:
        raise UnsupportedFunction("the oracle needs a concrete rational function")
    try:
        dens = [int(mpq(x).denominator) for x in (*fn.breakpoints, fn.f)]
    except (TypeError, ValueError) as exc:
        raise UnsupportedFunction(str(exc)) from None
    return lcm(*dens)


def _rank_exceeds(rows, n):
    """Sparse exact elimination; True iff the rows have rank n.

    Rows are dicts ``{column: coefficient}``.  Pivoting is on the smallest
    column of each reduced row (an ordinary sparse LU-style sweep).
    """
    basis = {}  # pivot column -> normalized row
    for r in rows:
        r = dict(r)
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                inv = 1 / r[c]
                basis[c] = {k: v * inv for k, v in r.items()}
                break
            m = r[c]
            for k, v in b.items():
                nv = r.get(k, 0) - m * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if len(basis) == n:
            return True
    return len(basis) == n


def grid_oracle_extremality(fn: PWLPeriodic, factor: int = 3) -> bool:
    """True iff the restriction of ``fn`` to the 1/(factor*q) grid is extreme."""
    q = grid_size(fn)
    if not minimality_test(fn):
        return False
    n = factor * q
    vals = [fn(mpq(u, n)) for u in range(n)]
    fidx = fn.f * n
    if fidx.denominator != 1:
        raise UnsupportedFunction("f is not on the grid")
    fidx = int(fidx) % n
    one = mpq(1)
    rows = [{0: one}, {fidx: one}]
    rows += [{u: one} for u in range(1, n) if vals[u] == 0]
    for u in range(n):
        for v in range(u, n):
            w = (u + v) % n
            if vals[u] + vals[v] == vals[w]:
                r = {}
                for k, c in ((u, 1), (v, 1), (w, -1)):
                    r[k] = r.get(k, 0) + c
                r = {k: mpq(c) for k, c in r.items() if c}
                if r:
                    rows.append(r)
    return _rank_exceeds(rows, n)
