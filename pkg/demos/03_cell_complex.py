"""
Walking the cell complex of a two-parameter family
==================================================

Starting from one cell, every wall is crossed by a short step to the far side
(an exact check accepts the new point), the new point is classified, and the
search continues until no wall is left.  The cells where the function is
extreme are then merged: walls shared by two such cells are interior and
dropped, and what remains describes the region.

Writes ``drlm.svg`` and ``drlm_complex.json`` next to this script.
"""

from pathlib import Path

from gmpy2 import mpq

from gjcells.bfs import SliceSpec, bfs_complex, coverage, region_union_description
from gjcells.gomory import Verdict
from gjcells.plot import PlotConfig, plot_slice

here = Path(__file__).resolve().parent

spec = SliceSpec("drlm_backward_3_slope", {}, ("f", "b"))
cx = bfs_complex(spec, (mpq(1, 12), mpq(1, 6)))
print(f"{len(cx.cells)} cells, {len(cx.edges)} edges, {len(cx.failures)} failed wall crossings (mostly the box edge)")
for verdict, n in sorted(cx.counts().items()):
    print(f"  {verdict:<20}{n}")
print("coverage of a 100 x 100 sample grid:", coverage(cx))

atoms, nonlinear = region_union_description(cx, Verdict.EXTREME)
print()
print("extreme region:")
for a in atoms:
    print("  ", a)
# -b < 0 is implied by the others; the remaining three are 0 < f < b < (1+f)/4

(here / "drlm_complex.json").write_text(cx.to_json(indent=1) + "\n")

# A coarse raster is enough to see the picture; every pixel is an exact run.
config = PlotConfig(spec, resolution=60, out=str(here / "drlm.svg"))
plot_slice(config, cx)
print()
print("wrote", config.out)
