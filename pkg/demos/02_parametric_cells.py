"""
Cells of parameter space
========================

Running the same tests on symbolic parameters (each carrying a concrete test
value) records every comparison the algorithm makes.  The recorded atoms
describe the cell of parameters on which the algorithm takes exactly the same
branches, and so returns the same answer.
"""

from gmpy2 import mpq

from gjcells.cells import build_cell
from gjcells.families import kzh_3_slope_param_extreme_1, param_3_slope_1
from gjcells.field import field_new
from gjcells.gomory import minimality_test

# A toy run: one comparison, one atom.
ctx, (x, y) = field_new(["x", "y"], [7, 6])
print(x * (x + y) > 42, [str(a) for a in ctx.ledger])

# With the value v left free, minimality at the test point forces an equation
# between the parameters.  It is found, not assumed.
ctx, gens = field_new(["f", "a", "b", "v"], ["6/19", "1/19", "5/19", "8/15"])
print()
print("minimal:", minimality_test(param_3_slope_1(*gens)))
for atom in ctx.snapshot().eq_atoms:
    print("  discovered:", atom)

# Solving that equation for v gives a three-parameter family.  Its cell at the
# test point, after dropping linearly implied atoms:
cell = build_cell(kzh_3_slope_param_extreme_1, ("f", "a", "b"), (mpq(6, 19), mpq(1, 19), mpq(5, 19)))
print()
print(f"{len(cell.raw_atoms)} recorded atoms, {len(cell.atoms)} after reduction, verdict {cell.verdict.value}")
print(cell.dump())

# Any point satisfying these atoms gets the same verdict.
print()
print("contains (6/19, 1/19, 5/19):", cell.contains((mpq(6, 19), mpq(1, 19), mpq(5, 19))))
print("contains (6/19, 10/19, 5/19):", cell.contains((mpq(6, 19), mpq(10, 19), mpq(5, 19))))
