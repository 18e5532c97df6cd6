"""
Checking extremality of concrete functions
==========================================

A function from one of the built-in families is constructed with exact
rational parameters, tested for minimality (subadditivity plus symmetry) and
then for extremality with the grid-free test.  The finite-grid oracle gives an
independent second opinion whenever all breakpoints are rational.
"""

from gmpy2 import mpq

from gjcells import families
from gjcells.gomory import Verdict, classify_params, complex_vertices, extremality_test
from gjcells.oracle import grid_oracle_extremality, grid_size

# The backward three-slope function at f = 1/12, b = 1/6 lies inside the region
# 0 < f < b <= (1+f)/4 where it is known to be extreme.
fn = families.drlm_backward_3_slope(mpq(1, 12), mpq(1, 6))
print("breakpoints:", [str(x) for x in fn.breakpoints])
print("values:     ", [str(x) for x in fn.values])
print("verdict:", extremality_test(fn).value)
print("oracle on the 1/(3q) grid, q =", grid_size(fn), "->", grid_oracle_extremality(fn))

# The four-slope function with s+ = 2, s- = -4 at lambda = (1/100, 49/100)
# satisfies the published hypotheses but is not even subadditive.
chen = families.chen_4_slope(mpq(7, 10), 2, -4, mpq(1, 100), mpq(49, 100))
print()
print("chen hypotheses hold:", families.chen_hypotheses(mpq(7, 10), 2, -4, mpq(1, 100), mpq(49, 100)))
worst = min(complex_vertices(chen), key=lambda v: v.slack)
print(f"most violated vertex ({worst.x}, {worst.y}) with slack {worst.slack}")
print("verdict:", classify_params(families.chen_4_slope, (mpq(7, 10), 2, -4, mpq(1, 100), mpq(49, 100))).value)

# Moving lambda to (1/10, 1/10) repairs it.
print("at (1/10, 1/10):", classify_params(families.chen_4_slope, (mpq(7, 10), 2, -4, mpq(1, 10), mpq(1, 10))).value)

# Outside the theorem region the additive faces no longer cover [0, 1]; the
# test then answers "uncovered" rather than guessing, and the oracle confirms
# the function is not extreme.
out = families.drlm_backward_3_slope(mpq(1, 10), mpq(3, 10))
v = extremality_test(out)
print()
print("drlm at (1/10, 3/10):", v.value, "| oracle extreme:", grid_oracle_extremality(out))
assert v != Verdict.EXTREME
