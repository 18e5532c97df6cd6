"""Continuous piecewise linear functions on R/Z over an ordered field.

The field is either the rationals (``mpq``) or a parametric field; all code
here only uses field arithmetic and comparisons, so a run over parametric
elements records every branch it takes.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from math import floor

from gmpy2 import mpq

from .field import ParamElement
from .polys import rational

__all__ = [
    "NotConstructible",
    "PWLPeriodic",
    "piecewise_from_breakpoints_values",
    "pwl_eval",
    "frac",
    "field_coerce",
    "fmt_rational",
]


class NotConstructible(ValueError):
    """The parameters do not describe a valid piecewise linear function."""


def frac(x):
    """Fractional part; for parametric elements both bounds are recorded."""
    if isinstance(x, ParamElement):
        n = floor(x.val)
        y = x - n if n else x
        if not (y >= 0 and y < 1):
            raise AssertionError("fractional part out of range")
        return y
    x = rational(x)
    return x - floor(x)


def field_coerce(*xs):
    """Bring inputs into a common field: parametric if any input is."""
    ctx = next((x.ctx for x in xs if isinstance(x, ParamElement)), None)
    if ctx is None:
        return [rational(x) for x in xs]
    return [ctx(x) for x in xs]


def fmt_rational(q) -> str:
    return str(mpq(q))


class PWLPeriodic:
    """Breakpoints ``0 = x_0 < ... < x_n = 1`` with values, extended periodically."""

    __slots__ = ("breakpoints", "values", "f", "slopes", "ctx")

    def __init__(self, breakpoints, values, f, slopes=None):
        self.breakpoints = list(breakpoints)
        self.values = list(values)
        self.f = f
        self.ctx = next(
            (x.ctx for x in (*self.breakpoints, *self.values, f) if isinstance(x, ParamElement)),
            None,
        )
        if slopes is None:
            b, v = self.breakpoints, self.values
            slopes = [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]
        self.slopes = list(slopes)

    @property
    def parametric(self):
        return self.ctx is not None

    @property
    def n_pieces(self):
        return len(self.breakpoints) - 1

    def piece_index(self, x):
        """Index ``i`` with ``x_i <= x < x_{i+1}`` for ``x`` in [0, 1)."""
        return bisect_right(self.breakpoints, x, 0, len(self.breakpoints) - 1) - 1

    def on_piece(self, i, x):
        """Value of the affine extension of piece ``i`` at ``x`` (no comparisons)."""
        return self.values[i] + self.slopes[i] * (x - self.breakpoints[i])

    def __call__(self, x):
        x = frac(x)
        return self.on_piece(self.piece_index(x), x)

    def limits(self):
        return list(zip(self.breakpoints, self.values))

    def concrete_at(self, point=None):
        """Concrete copy: values of a parametric function at ``point`` (default: test point)."""
        if not self.parametric:
            return self
        if point is None:
            ev = lambda x: x.val if isinstance(x, ParamElement) else rational(x)
        else:
            ev = lambda x: x.sym.eval(point) if isinstance(x, ParamElement) else rational(x)
        return PWLPeriodic(
            [ev(x) for x in self.breakpoints],
            [ev(x) for x in self.values],
            ev(self.f),
            [ev(x) for x in self.slopes],
        )

    def to_json(self) -> str:
        c = self.concrete_at()
        return json.dumps(
            {
                "f": fmt_rational(c.f),
                "breakpoints": [fmt_rational(x) for x in c.breakpoints],
                "values": [fmt_rational(x) for x in c.values],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> PWLPeriodic:
        d = json.loads(text)
        return piecewise_from_breakpoints_values(
            [rational(x) for x in d["breakpoints"]],
            [rational(x) for x in d["values"]],
            rational(d["f"]),
        )

    def __repr__(self):
        bk = ", ".join(str(x) for x in self.breakpoints)
        return f"PWLPeriodic(f={self.f}, breakpoints=[{bk}])"


def piecewise_from_breakpoints_values(bkpts, vals, f=None, slopes=None) -> PWLPeriodic:
    """Build a function from breakpoints and values, checking left to right.

    In parametric mode each strict-increase comparison is recorded before a
    failure is reported, so the failing branch is part of the cell.
    """
    bkpts = list(bkpts)
    vals = list(vals)
    if len(bkpts) != len(vals) or len(bkpts) < 2:
        raise ValueError("need equal-length breakpoint and value lists of length >= 2")
    if not (bkpts[0] == 0 and bkpts[-1] == 1):
        raise NotConstructible("breakpoints must start at 0 and end at 1")
    for lo, hi in zip(bkpts, bkpts[1:]):
        if not lo < hi:
            raise NotConstructible("breakpoints are not strictly increasing")
    if not (vals[0] == 0 and vals[-1] == 0):
        raise NotConstructible("values at 0 and 1 must vanish")
    if f is None:
        hits = [x for x, v in zip(bkpts, vals) if v == 1]
        if not hits:
            raise NotConstructible("no breakpoint with value 1 to serve as f")
        f = hits[0]
    return PWLPeriodic(bkpts, vals, f, slopes)


def pwl_eval(fn: PWLPeriodic, x):
    return fn(x)
