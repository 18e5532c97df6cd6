import random

import pytest
from gmpy2 import mpq

from gjcells.atoms import Atom
from gjcells.cells import (
    Cell,
    LinPolyhedron,
    MonomialMap,
    build_cell,
    cell_contains,
    cell_walls,
    linearize,
    reduce_atoms,
    remove_redundancy,
)
from gjcells.families import kzh_3_slope_param_extreme_1, param_3_slope_1
from gjcells.field import field_new
from gjcells.gomory import Verdict
from gjcells.polys import parse_poly

Q = mpq
KZH = ("f", "a", "b")
KZH_POINT = (Q(6, 19), Q(1, 19), Q(5, 19))
GOLDEN_SIX = {
    "3*f + 4*a - b - 1 < 0",
    "-a < 0",
    "-f^2 - f*a + 3*f*b + 3*a*b - b < 0",
    "-f + b < 0",
    "f*a - 3*a*b - f + b < 0",
    "-f - 3*b + 1 < 0",
}


def atom(text, gens, rel="lt"):
    return Atom.oriented_from(parse_poly(text, gens=gens), rel)


@pytest.fixture(scope="module")
def kzh_cell():
    return build_cell(kzh_3_slope_param_extreme_1, KZH, KZH_POINT)


def test_monomial_map():
    m = MonomialMap(("x", "y"))
    assert [m.label(k) for k in range(len(m))] == ["x", "y"]
    poly = linearize([atom("-x^2 - x*y + 42", ("x", "y"))], m)
    assert [m.label(k) for k in range(len(m))] == ["x", "y", "x^2", "x*y"]
    (c,) = poly.constraints
    assert c.coeffs == ((2, -1), (3, -1)) and c.const == 42 and c.rel == "lt"
    assert m.lift([7, 6]) == [7, 6, 49, 42]
    assert poly.contains(m.lift([7, 6])) and not poly.contains(m.lift([1, 1]))


def test_linearize_linear_and_idempotent():
    m = MonomialMap(("f", "b"))
    a = atom("f - b", ("f", "b"))
    p1 = linearize([a], m)
    assert len(m) == 2
    p2 = linearize([a, a], m)
    assert p1.constraints == p2.constraints


def test_redundancy_examples():
    g = ("x", "y")
    m = MonomialMap(g)
    red = reduce_atoms([atom("x - 1", g, "le"), atom("x - 2", g, "le")], m, (0, 0))
    assert [str(a) for a in red] == ["x - 1 <= 0"]
    red = reduce_atoms([atom("x - 1", g, "le"), atom("y - 1", g, "le"), atom("x + y - 3", g, "le")], m, (0, 0))
    assert {str(a) for a in red} == {"x - 1 <= 0", "y - 1 <= 0"}
    # strict versus weak on the same bound: the strict one stays
    red = reduce_atoms([atom("x - 1", g, "lt"), atom("x - 1", g, "le")], m, (0, 0))
    assert [str(a) for a in red] == ["x - 1 < 0"]


def test_redundancy_rejects_bad_point():
    g = ("x",)
    m = MonomialMap(g)
    poly = linearize([atom("x - 1", g)], m)
    with pytest.raises(AssertionError):
        remove_redundancy(poly, m.lift([2]))


def test_kzh_cell(kzh_cell):
    assert kzh_cell.verdict == Verdict.EXTREME
    assert len(kzh_cell.raw_atoms) > 20
    assert {str(a) for a in kzh_cell.atoms} == GOLDEN_SIX
    assert cell_contains(kzh_cell, KZH_POINT)
    assert not cell_contains(kzh_cell, (Q(6, 19), Q(10, 19), Q(5, 19)))
    assert len(cell_walls(kzh_cell)) == len(kzh_cell.atoms)


def test_empty_cell_contains_everything():
    c = Cell(("x",), (), (), (Q(0),), Verdict.EXTREME)
    assert cell_contains(c, (Q(5),)) and cell_walls(c) == []


def test_equality_reported_separately():
    names = ("f", "a", "b", "v")
    cell = build_cell(param_3_slope_1, names, (Q(6, 19), Q(1, 19), Q(5, 19), Q(8, 15)), stage="minimal")
    target = parse_poly("-f^2*v + 3*f*b*v + f^2 + f*a - 3*f*b - 3*a*b - f*v + b", gens=names)
    assert target.primitive()[1] in {a.poly for a in cell.equalities}
    assert all(a.rel != "eq" for a in cell.walls)


def test_json_roundtrip(kzh_cell):
    back = Cell.from_dict(kzh_cell.to_dict())
    assert back.key == kzh_cell.key and back.verdict == kzh_cell.verdict
    assert back.test_point == kzh_cell.test_point


def _points_near(center, rng, k, spread):
    return [tuple(x + Q(rng.randint(-1000, 1000), 1000) * spread for x in center) for _ in range(k)]


def test_lift_correctness_and_conservative_reduction(kzh_cell):
    m = kzh_cell.mmap
    raw = linearize(kzh_cell.raw_atoms, m)
    rng = random.Random(7)
    inside = 0
    for pt in _points_near(KZH_POINT, rng, 1000, Q(1, 10)):
        a = all(x.holds_at(pt) for x in kzh_cell.raw_atoms)
        b = cell_contains(kzh_cell, pt)
        if a:
            assert raw.contains(m.lift(pt))
        # dropped atoms are implied on the relaxation, hence at every real point
        assert a == b
        inside += a
    assert inside > 50


def test_soundness_resampling(kzh_cell):
    rng = random.Random(1)
    raw = {(a.poly, a.sign, a.rel) for a in kzh_cell.raw_atoms}
    hits = 0
    for pt in _points_near(KZH_POINT, rng, 3000, Q(1, 40)):
        if not cell_contains(kzh_cell, pt):
            continue
        other = build_cell(kzh_3_slope_param_extreme_1, KZH, pt)
        assert other.verdict == kzh_cell.verdict
        assert other.key == kzh_cell.key
        assert {(a.poly, a.sign, a.rel) for a in other.raw_atoms} == raw
        hits += 1
        if hits == 10:
            break
    assert hits == 10
