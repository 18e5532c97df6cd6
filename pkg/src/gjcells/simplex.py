"""Exact rational linear programming (two-phase primal simplex, Bland's rule).

Small dense problems only: the cell descriptions we reduce have a few dozen
constraints in a few dozen monomial coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

__all__ = ["LPResult", "linprog_exact"]

ZERO = mpq(0)
ONE = mpq(1)


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: object = None
    x: list | None = None


def _pivot(T, basis, r, c):
    row = T[r]
    p = row[c]
    if p != 1:
        inv = 1 / p
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            m = other[c]
            if m:
                T[i] = [a - m * b for a, b in zip(other, row)]
    basis[r] = c


def _run(T, basis, ncols, allowed):
    """Maximize the objective stored (negated) in the last row of ``T``."""
    obj = T[-1]
    m = len(T) - 1
    while True:
        obj = T[-1]
        c = next((j for j in range(ncols) if allowed[j] and obj[j] < 0), None)
        if c is None:
            return "optimal"
        best, r = None, None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                    best, r = ratio, i
        if r is None:
            return "unbounded"
        _pivot(T, basis, r, c)


def linprog_exact(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), maximize=True) -> LPResult:
    """Optimize ``c.x`` over ``A_ub x <= b_ub, A_eq x = b_eq`` with ``x`` free.

    All data are converted to ``mpq``; the result is exact.
    """
    n = len(c)
    c = [mpq(v) for v in c]
    if not maximize:
        c = [-v for v in c]
    rows = []
    for a, b in zip(A_ub, b_ub):
        rows.append(([mpq(v) for v in a], mpq(b), True))
    for a, b in zip(A_eq, b_eq):
        rows.append(([mpq(v) for v in a], mpq(b), False))
    m = len(rows)
    n_slack = sum(1 for r in rows if r[2])
    # columns: u (n), w (n), slacks, artificials (m), rhs
    nv = 2 * n + n_slack
    ncols = nv + m
    T = []
    basis = []
    s = 0
    for i, (a, b, ub) in enumerate(rows):
        row = a + [-v for v in a] + [ZERO] * n_slack + [ZERO] * m + [b]
        if ub:
            row[2 * n + s] = ONE
            s += 1
        if b < 0:
            row = [-v for v in row]
        row[nv + i] = ONE
        T.append(row)
        basis.append(nv + i)
    # phase 1: maximize -(sum of artificials)
    obj = [ZERO] * (ncols + 1)
    for row in T:
        for j in range(nv):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    T.append(obj)
    allowed = [True] * ncols
    _run(T, basis, ncols, allowed)
    if T[-1][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= nv:
            c_in = next((j for j in range(nv) if T[i][j] != 0), None)
            if c_in is not None:
                _pivot(T, basis, i, c_in)
    allowed = [j < nv for j in range(ncols)]
    full_c = c + [-v for v in c] + [ZERO] * n_slack + [ZERO] * m
    obj = [-v for v in full_c] + [ZERO]
    for i in range(m):
        cb = full_c[basis[i]]
        if cb:
            obj = [o + cb * t for o, t in zip(obj, T[i])]
    T[-1] = obj
    if _run(T, basis, ncols, allowed) == "unbounded":
        return LPResult("unbounded")
    vals = [ZERO] * ncols
    for i in range(m):
        vals[basis[i]] = T[i][-1]
    x = [vals[j] - vals[n + j] for j in range(n)]
    value = T[-1][-1]
    return LPResult("optimal", value if maximize else -value, x)
