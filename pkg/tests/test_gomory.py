import random

import pytest
from gmpy2 import mpq

from gjcells.families import (
    FAMILIES,
    chen_4_slope,
    drlm_backward_3_slope,
    gj_forward_3_slope,
    kzh_3_slope_param_extreme_1,
    param_3_slope_1,
)
from gjcells.field import field_new
from gjcells.gomory import (
    Verdict,
    additive_faces,
    classify_params,
    complex_vertices,
    covered_components,
    delta_pi,
    extremality_test,
    minimality_test,
)
from gjcells.oracle import UnsupportedFunction, grid_oracle_extremality, grid_size
from gjcells.polys import parse_poly
from gjcells.pwl import piecewise_from_breakpoints_values

Q = mpq


def half_gmic():
    return piecewise_from_breakpoints_values([Q(0), Q(1, 2), Q(1)], [Q(0), Q(1), Q(0)])


CHEN_BAD = (Q(7, 10), 2, -4, Q(1, 100), Q(49, 100))
CHEN_GOOD = (Q(7, 10), 2, -4, Q(1, 10), Q(1, 10))


def test_delta_pi_examples():
    fn = half_gmic()
    assert delta_pi(fn, 0, 0) == 0
    assert delta_pi(fn, Q(1, 4), Q(1, 4)) == 0
    bad = chen_4_slope(*CHEN_BAD)
    assert any(v.slack < 0 for v in complex_vertices(bad))


def test_complex_vertices():
    fn = half_gmic()
    pairs = {(v.x, v.y) for v in complex_vertices(fn)}
    assert (Q(1, 2), Q(1, 2)) in pairs
    d = drlm_backward_3_slope(Q(1, 12), Q(2, 12))
    n = len(d.breakpoints) - 1
    vs = complex_vertices(d)
    assert len(vs) <= 3 * n * n
    pairs = {frozenset((v.x, v.y)) for v in vs}
    assert frozenset((Q(1, 12), Q(1, 12))) in pairs  # (f, b - f)
    for v in vs:
        assert delta_pi(d, v.x, v.y) == delta_pi(d, v.y, v.x) == v.slack


def test_minimality_examples():
    assert minimality_test(gj_forward_3_slope(Q(4, 5), Q(4, 9), Q(2, 3)))
    assert not minimality_test(chen_4_slope(*CHEN_BAD))
    ctx, gens = field_new(["f", "a", "b", "v"], ["6/19", "1/19", "5/19", "8/15"])
    assert minimality_test(param_3_slope_1(*gens))
    target = parse_poly("-f^2*v + 3*f*b*v + f^2 + f*a - 3*f*b - 3*a*b - f*v + b", gens=ctx.names)
    assert target.primitive()[1] in {a.poly for a in ctx.snapshot().eq_atoms}


def test_additive_faces_gmic():
    fn = half_gmic()
    faces = additive_faces(fn)
    in_square = [F for F in faces if F.dimension == 2 and F.I == (0, Q(1, 2)) and F.J == (0, Q(1, 2))]
    # only the lower triangle x + y <= 1/2 is additive, so the square is not
    assert [F.K for F in in_square] == [(0, Q(1, 2))]
    # the edge x + y = 1/2 is additive; it lies in that triangle's boundary
    tri = in_square[0]
    assert {(0, Q(1, 2)), (Q(1, 2), 0)} <= set(tri.vertices)
    assert all(delta_pi(fn, x, Q(1, 2) - x) == 0 for x in (0, Q(1, 8), Q(1, 4), Q(1, 2)))


def test_symmetry_pairs_are_additive():
    fn = drlm_backward_3_slope(Q(1, 12), Q(2, 12))
    for x in fn.breakpoints:
        assert delta_pi(fn, x, fn.f - x) == 0
    assert delta_pi(fn, 0, fn.f) == 0


@pytest.mark.parametrize("fn", [
    drlm_backward_3_slope(Q(1, 12), Q(2, 12)),
    gj_forward_3_slope(Q(4, 5), Q(4, 9), Q(2, 3)),
])
def test_covered_three_components(fn):
    cc = covered_components(fn)
    assert cc.all_covered
    assert len(set(cc.assignment)) == 3


def test_uncovered_interval_reported():
    # drlm with b > (1+f)/4 leaves an interval untouched by additive faces
    fn = drlm_backward_3_slope(Q(1, 10), Q(3, 10))
    cc = covered_components(fn)
    assert not cc.all_covered
    assert extremality_test(fn) == Verdict.UNCOVERED_UNKNOWN


def test_extremality_examples():
    assert extremality_test(drlm_backward_3_slope(Q(1, 12), Q(2, 12))) == Verdict.EXTREME
    assert extremality_test(chen_4_slope(*CHEN_GOOD)) == Verdict.EXTREME
    assert extremality_test(kzh_3_slope_param_extreme_1(Q(6, 19), Q(1, 19), Q(5, 19))) == Verdict.EXTREME
    assert classify_params(chen_4_slope, CHEN_BAD) == Verdict.NOT_MINIMAL
    assert classify_params(drlm_backward_3_slope, (Q(1, 4), Q(1, 5))) == Verdict.NOT_CONSTRUCTIBLE


def test_verdict_json():
    for v in Verdict:
        assert Verdict.from_json(v.to_json()) == v
    assert Verdict.EXTREME.to_json() == '{"status": "extreme"}'
    assert [Verdict.NOT_CONSTRUCTIBLE.color, Verdict.NOT_MINIMAL.color,
            Verdict.MINIMAL_NOT_EXTREME.color, Verdict.EXTREME.color] == ["white", "yellow", "green", "blue"]


def test_oracle_examples():
    d = drlm_backward_3_slope(Q(1, 12), Q(2, 12))
    assert grid_size(d) == 12 and grid_oracle_extremality(d)
    assert grid_oracle_extremality(chen_4_slope(*CHEN_GOOD))
    assert grid_oracle_extremality(half_gmic())
    assert not grid_oracle_extremality(chen_4_slope(*CHEN_BAD))
    assert not grid_oracle_extremality(drlm_backward_3_slope(Q(1, 10), Q(3, 10)))
    ctx, (f,) = field_new(["f"], ["1/2"])
    with pytest.raises(UnsupportedFunction):
        grid_size(FAMILIES["gmic"](f))


def _random_instances(rng, count):
    out = []
    while len(out) < count:
        name = rng.choice(sorted(FAMILIES))
        spec = FAMILIES[name]
        q = rng.randint(4, 30)
        params = []
        for p in spec.params:
            if p in ("s_pos", "s_neg"):
                params.append(Q(rng.randint(1, 4)) * (1 if p == "s_pos" else -2))
            else:
                params.append(Q(rng.randint(1, q - 1), q))
        try:
            fn = spec.constructor(*params)
        except Exception:
            continue
        if grid_size(fn) <= 30:
            out.append((name, params, fn))
    return out


def test_oracle_agreement_sample():
    rng = random.Random(11)
    for name, params, fn in _random_instances(rng, 25):
        v = extremality_test(fn)
        if v in (Verdict.EXTREME, Verdict.MINIMAL_NOT_EXTREME):
            assert grid_oracle_extremality(fn) == (v == Verdict.EXTREME), (name, params)
        if v == Verdict.NOT_MINIMAL:
            assert not minimality_test(fn)


def test_monotone_chain():
    rng = random.Random(5)
    for name, params, fn in _random_instances(rng, 25):
        if extremality_test(fn) == Verdict.EXTREME:
            assert minimality_test(fn)


def test_parametric_branch_consistency():
    ctx, gens = field_new(["f", "a", "b"], ["6/19", "1/19", "5/19"])
    verdict = classify_params(kzh_3_slope_param_extreme_1, gens)
    atoms = list(ctx.ledger)
    rng = random.Random(2)
    hits = 0
    for _ in range(4000):
        pt = [x + Q(rng.randint(-40, 40), 19 * 2000) for x in ctx.test_point]
        if all(a.holds_at(pt) for a in atoms):
            assert classify_params(kzh_3_slope_param_extreme_1, pt) == verdict
            hits += 1
            if hits == 10:
                break
    assert hits == 10
