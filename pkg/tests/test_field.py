import random

import pytest
from gmpy2 import mpq

from gjcells.atoms import Atom, normalize_and_factor
from gjcells.families import param_3_slope_1, kzh_3_slope_param_extreme_1
from gjcells.field import LedgerError, ParamContext, field_new
from gjcells.gomory import minimality_test
from gjcells.polys import RatFunc, parse_poly


def dump(ctx):
    return [str(a) for a in ctx.snapshot().atoms]


def test_field_new_generators():
    ctx, (f, a, b, v) = field_new(["f", "a", "b", "v"], ["6/19", "1/19", "5/19", "8/15"])
    assert f.val == mpq(6, 19) and str(f.sym) == "f"
    ctx, (x,) = field_new(["x"], [7])
    assert str(x) == "<x || 7>"
    ctx, gens = field_new([], [])
    assert gens == () and ctx.const(3).val == 3
    with pytest.raises(ValueError):
        field_new(["x", "x"], [1, 2])


def test_running_example():
    ctx, (x, y) = field_new(["x", "y"], [7, 6])
    e = x * (x + y)
    assert str(e.sym) == "x^2 + x*y" and e.val == 91
    assert e > 42
    assert dump(ctx) == ["-x^2 - x*y + 42 < 0"]


def test_self_cancellation_and_tautology():
    ctx, (x,) = field_new(["x"], [7])
    z = x - x
    assert z.val == 0 and z.sym.is_zero()
    assert z == 0
    assert len(ctx.ledger) == 0


def test_division_records_sign():
    ctx, (f,) = field_new(["f"], ["6/19"])
    r = 1 / (f - 1)
    assert r.val == mpq(-19, 13)
    assert dump(ctx) == ["f - 1 < 0"]


def test_division_by_zero_value():
    ctx, (f,) = field_new(["f"], ["1/2"])
    with pytest.raises(ZeroDivisionError):
        _ = 1 / (2 * f - 1)
    assert dump(ctx) == ["2*f - 1 = 0"]


def test_false_comparison_records_complement():
    ctx, (f, b) = field_new(["f", "b"], ["6/19", "5/19"])
    assert not f < b
    assert dump(ctx) == ["-f + b < 0"]


def test_snapshot_direct_recording():
    ctx, (x,) = field_new(["x"], [7])
    assert ctx.snapshot().atoms == []
    assert x > 0
    snap = ctx.snapshot()
    assert [str(a) for a in snap.lt_atoms] == ["-x < 0"]
    assert not snap.eq_atoms and not snap.le_atoms


def test_ledger_collapse_rules():
    ctx, (x, y) = field_new(["x", "y"], [1, 1])
    p = parse_poly("x - y", gens=("x", "y"))
    led = ctx.ledger
    led.add(Atom(p, 1, "le"))
    led.add(Atom(p, -1, "le"))
    assert [a.rel for a in led] == ["eq"]
    with pytest.raises(LedgerError):
        led.add(Atom(p, 1, "lt"))
    q = parse_poly("x", gens=("x", "y"))
    led.add(Atom(q, -1, "le"))
    led.add(Atom(q, -1, "lt"))
    assert {str(a) for a in led} == {"x - y = 0", "-x < 0"}


def test_normalize_and_factor_examples():
    g = ("x", "y")
    sym = RatFunc(parse_poly("x", gens=g), parse_poly("y - 1", gens=g))
    atoms = {str(a) for a in normalize_and_factor(sym, "nonpos", (1, 0))}
    assert atoms == {"y - 1 < 0", "-x <= 0"}
    sym = RatFunc(parse_poly("(x - 1)^2*(x + 2)", gens=("x",)))
    assert [str(a) for a in normalize_and_factor(sym, "neg", (-3,))] == ["x + 2 < 0"]


def test_equation_discovery_snapshot():
    ctx, gens = field_new(["f", "a", "b", "v"], ["6/19", "1/19", "5/19", "8/15"])
    assert minimality_test(param_3_slope_1(*gens))
    target = parse_poly("-f^2*v + 3*f*b*v + f^2 + f*a - 3*f*b - 3*a*b - f*v + b", gens=ctx.names)
    eqs = {a.poly for a in ctx.snapshot().eq_atoms}
    assert target.primitive()[1] in eqs


def test_trace_soundness_and_replay():
    ctx, gens = field_new(["f", "a", "b"], ["6/19", "1/19", "5/19"])
    fn = kzh_3_slope_param_extreme_1(*gens)
    assert minimality_test(fn)
    atoms = list(ctx.ledger)
    assert all(a.holds_at(ctx.test_point) for a in atoms)
    # a second point satisfying every atom takes the same branches
    rng = random.Random(3)
    base = ctx.test_point
    found = 0
    for _ in range(2000):
        pt = [x + mpq(rng.randint(-50, 50), 19 * 4000) for x in base]
        if all(a.holds_at(pt) for a in atoms):
            ctx2, g2 = field_new(["f", "a", "b"], pt)
            assert minimality_test(kzh_3_slope_param_extreme_1(*g2))
            assert {(a.poly, a.sign, a.rel) for a in ctx2.ledger} == {(a.poly, a.sign, a.rel) for a in atoms}
            found += 1
            if found == 5:
                break
    assert found == 5


def test_debug_mode_coherence():
    ctx = ParamContext(["x", "y"], [2, 3], debug=True)
    x, y = ctx.gens
    e = (x * y - 1) / (x + y)
    assert e.sym.eval(ctx.test_point) == e.val


def test_cross_context_mixing_rejected():
    _, (x,) = field_new(["x"], [1])
    _, (y,) = field_new(["y"], [1])
    with pytest.raises(ValueError):
        _ = x + y
