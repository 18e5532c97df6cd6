"""Parametric families of continuous piecewise linear functions.

Every constructor works over the rationals and over the parametric field.  The
order of the constructibility comparisons is fixed (left to right along the
breakpoint list) so that white cells are reproducible.  Division by an element
that vanishes at the test point means the function is not constructible there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from gmpy2 import mpq

from .pwl import NotConstructible, PWLPeriodic, field_coerce, piecewise_from_breakpoints_values

__all__ = [
    "FamilySpec",
    "FAMILIES",
    "get_family",
    "gmic",
    "gj_forward_3_slope",
    "drlm_backward_3_slope",
    "chen_4_slope",
    "param_3_slope_1",
    "kzh_3_slope_param_extreme_1",
    "kzh_3_slope_param_extreme_2",
]


HALF = mpq(1, 2)


def _guarded(fn):
    def wrapper(*args):
        try:
            return fn(*field_coerce(*args))
        except ZeroDivisionError as exc:
            raise NotConstructible(str(exc)) from None

    wrapper.__name__ = fn.__name__
    wrapper.__qualname__ = fn.__qualname__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _from_slopes(bkpts, slopes, f):
    """Check breakpoint order, then accumulate values from ``pi(0) = 0``."""
    for lo, hi in zip(bkpts, bkpts[1:]):
        if not lo < hi:
            raise NotConstructible("breakpoints are not strictly increasing")
    vals = [bkpts[0] * 0]
    for i, s in enumerate(slopes):
        vals.append(vals[-1] + s * (bkpts[i + 1] - bkpts[i]))
    if vals[-1] != 0:
        raise AssertionError("slopes do not close up to pi(1) = 0")
    vals[-1] = vals[-1] * 0
    return piecewise_from_breakpoints_values(bkpts, vals, f, slopes)


@_guarded
def gmic(f):
    """Two-slope function with breakpoints 0, f, 1."""
    return piecewise_from_breakpoints_values([f * 0, f, f * 0 + 1], [f * 0, f * 0 + 1, f * 0], f)


@_guarded
def gj_forward_3_slope(f, lambda_1, lambda_2):
    """Three-slope function with breakpoints 0, a', a, b, b', f, 1."""
    a = lambda_1 * f / 2
    a1 = a + lambda_2 * (f - 1) / 2
    b = f - a
    b1 = f - a1
    zero, one = f * 0, f * 0 + 1
    bkpts = [zero, a1, a, b, b1, f, one]
    for lo, hi in zip(bkpts, bkpts[1:]):
        if not lo < hi:
            raise NotConstructible("breakpoints are not strictly increasing")
    s_pos = (lambda_1 + lambda_2) / (lambda_1 * f + lambda_2 * (f - 1))
    s_neg = 1 / (f - 1)
    return _from_slopes(bkpts, [s_pos, s_neg, 1 / f, s_neg, s_pos, s_neg], f)


@_guarded
def drlm_backward_3_slope(f, bkpt):
    """Three-slope function with breakpoints 0, f, b, 1+f-b, 1."""
    b = bkpt
    zero, one = f * 0, f * 0 + 1
    if not (zero < f and f < b):
        raise NotConstructible("need 0 < f < b")
    c = 1 + f - b
    if b < c:
        bkpts = [zero, f, b, c, one]
        vals = [zero, one, b / (1 + f), c / (1 + f), zero]
    elif b == c:
        bkpts = [zero, f, b, one]
        vals = [zero, one, b / (1 + f), zero]
    else:
        raise NotConstructible("need b <= 1 + f - b")
    return piecewise_from_breakpoints_values(bkpts, vals, f)


@_guarded
def chen_4_slope(f, s_pos, s_neg, lambda_1, lambda_2):
    """Four-slope function with ten pieces.

    The right outer breakpoint is ``c' = 1 - lambda_2 (1 + s_pos (1 - f)) /
    (2 (s_pos - s_neg))``; this is the unique choice making ``pi(1) = 0`` with
    the stated slope sequence.
    """
    zero, one = f * 0, f * 0 + 1
    ds = s_pos - s_neg
    a1 = lambda_1 * (1 - s_neg * f) / (2 * ds)
    a = lambda_1 * f / 2
    c = 1 - lambda_2 * (1 - f) / 2
    c1 = 1 - lambda_2 * (1 + s_pos * (1 - f)) / (2 * ds)
    b, b1 = f - a, f - a1
    d, d1 = 1 + f - c, 1 + f - c1
    bkpts = [zero, a1, a, b, b1, f, d1, d, c, c1, one]
    for lo, hi in zip(bkpts, bkpts[1:]):
        if not lo < hi:
            raise NotConstructible("breakpoints are not strictly increasing")
    slopes = [s_pos, s_neg, 1 / f, s_neg, s_pos, s_neg, s_pos, 1 / (f - 1), s_pos, s_neg]
    return _from_slopes(bkpts, slopes, f)


def _kzh1_shape(f, a, b, v):
    zero, one = f * 0, f * 0 + 1
    bkpts = [zero, f, f + a, (1 + f - b) / 2, (1 + f + b) / 2, 1 - a, one]
    for lo, hi in zip(bkpts, bkpts[1:]):
        if not lo < hi:
            raise NotConstructible("breakpoints are not strictly increasing")
    return bkpts


@_guarded
def param_3_slope_1(f, a, b, v):
    """The kzh_3_slope_param_extreme_1 shape with the value ``v`` left free."""
    bkpts = _kzh1_shape(f, a, b, v)
    zero, one = f * 0, f * 0 + 1
    vals = [zero, one, v, (f - b) / 2 / f, (f + b) / 2 / f, 1 - v, zero]
    return piecewise_from_breakpoints_values(bkpts, vals, f)


@_guarded
def kzh_3_slope_param_extreme_1(f, a, b):
    bkpts = _kzh1_shape(f, a, b, None)
    zero, one = f * 0, f * 0 + 1
    v = (f * f + f * a - 3 * f * b - 3 * a * b + b) / (f * f + f - 3 * f * b)
    vals = [zero, one, v, (f - b) / 2 / f, (f + b) / 2 / f, 1 - v, zero]
    return piecewise_from_breakpoints_values(bkpts, vals, f)


@_guarded
def kzh_3_slope_param_extreme_2(f, a, b):
    zero, one = f * 0, f * 0 + 1
    if not (zero < a and a < f and f < one and zero < b and b < f):
        raise NotConstructible("need 0 < a < f < 1 and 0 < b < f")
    v = (f * (f - a + b - 2) - a * b + 2 * a) / (f + b - 1) / f / 4
    bkpts = [zero, (f - a) / 4, (f - a) / 2, (f + a) / 2, f - (f - a) / 4, f,
             (1 + f - b) / 2, (1 + f + b) / 2, one]
    vals = [zero, v, (f - a) / f / 2, (f + a) / f / 2, 1 - v, one,
            (f - b) / f / 2, (f + b) / f / 2, zero]
    return piecewise_from_breakpoints_values(bkpts, vals, f)


# -- hypotheses of the published theorems (concrete rationals only) -------------


def gj_hypotheses(f, lambda_1, lambda_2):
    return (0 < f < 1 and 0 <= lambda_1 <= HALF and 0 <= lambda_2 <= 1
            and 0 < lambda_1 * f + lambda_2 * (f - 1))


def drlm_hypotheses(f, b):
    return 0 < f < b <= (1 + f) / 4


def chen_hypotheses(f, s_pos, s_neg, lambda_1, lambda_2):
    if not (0 < f < 1 and s_pos > 0 and s_neg < 0):
        return False
    if not (f >= HALF and s_pos >= 1 / f and s_neg <= 1 / (f - 1)):
        return False
    bound1 = min(HALF, (s_pos - s_neg) / (s_pos * (1 - s_neg * f)))
    bound2 = min(HALF, (s_pos - s_neg) / (s_neg * (s_pos * (f - 1) - 1)))
    return 0 <= lambda_1 < bound1 and f - 1 / s_pos < lambda_2 < bound2


def kzh1_hypotheses(f, a, b):
    return 0 <= a and 0 <= b <= f and 3 * f + 4 * a - b - 1 <= 0


def kzh2_hypotheses(f, a, b):
    return b <= a and f <= a + b and f <= (1 + a - b) / 2


# -- registry -------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple
    domain: str
    constructor: Callable[..., PWLPeriodic]
    default: tuple = ()
    hypotheses: Callable[..., bool] | None = None
    aliases: tuple = field(default=())

    def __call__(self, *args):
        if len(args) != len(self.params):
            raise TypeError(f"{self.name} takes {len(self.params)} parameters {self.params}")
        return self.constructor(*args)


FAMILIES = {
    spec.name: spec
    for spec in [
        FamilySpec("gmic", ("f",), "0 < f < 1", gmic, ("4/5",)),
        FamilySpec(
            "gj_forward_3_slope",
            ("f", "lambda_1", "lambda_2"),
            "0 < a' < a < b < b' < f < 1",
            gj_forward_3_slope,
            ("4/5", "4/9", "2/3"),
            gj_hypotheses,
        ),
        FamilySpec(
            "drlm_backward_3_slope",
            ("f", "b"),
            "0 < f < b <= 1 + f - b",
            drlm_backward_3_slope,
            ("1/12", "1/6"),
            drlm_hypotheses,
        ),
        FamilySpec(
            "chen_4_slope",
            ("f", "s_pos", "s_neg", "lambda_1", "lambda_2"),
            "0 < a' < a < b < b' < f < d' < d < c < c' < 1",
            chen_4_slope,
            ("7/10", "2", "-4", "1/10", "1/10"),
            chen_hypotheses,
        ),
        FamilySpec(
            "param_3_slope_1",
            ("f", "a", "b", "v"),
            "0 < f < f+a < (1+f-b)/2 < (1+f+b)/2 < 1-a < 1",
            param_3_slope_1,
            ("6/19", "1/19", "5/19", "8/15"),
        ),
        FamilySpec(
            "kzh_3_slope_param_extreme_1",
            ("f", "a", "b"),
            "0 < f < f+a < (1+f-b)/2 < (1+f+b)/2 < 1-a < 1",
            kzh_3_slope_param_extreme_1,
            ("6/19", "1/19", "5/19"),
            kzh1_hypotheses,
        ),
        FamilySpec(
            "kzh_3_slope_param_extreme_2",
            ("f", "a", "b"),
            "0 < a < f < 1 and 0 < b < f",
            kzh_3_slope_param_extreme_2,
            ("5/9", "3/9", "2/9"),
            kzh2_hypotheses,
        ),
    ]
}


def get_family(name: str) -> FamilySpec:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None
