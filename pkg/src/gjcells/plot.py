"""SVG slice plots.

Raster mode classifies every pixel centre with a concrete run; there is no
parametric machinery involved, so each pixel colour is exact.  Overlay mode
adds the cells' test points and their walls (approximate, sampled per row).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from gmpy2 import mpq

from .bfs import CellComplex, SliceSpec, classify_concrete
from .gomory import Verdict

__all__ = ["PlotConfig", "raster", "render_svg", "plot_slice"]

MARGIN = 40


@dataclass
class PlotConfig:
    spec: SliceSpec
    resolution: int = 200
    colors: dict = field(default_factory=lambda: {v: v.rgb for v in Verdict})
    out: str | None = None
    stage: str = "extreme"
    pixel: int = 3

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if len(self.spec.free) != 2:
            raise ValueError("plots need exactly two free parameters")


def pixel_centers(spec: SliceSpec, n: int):
    """Rational pixel centres; row 0 is the bottom of the box."""
    (x0, x1), (y0, y1) = (spec.box[k] for k in spec.free)
    xs = [x0 + (x1 - x0) * mpq(2 * i + 1, 2 * n) for i in range(n)]
    ys = [y0 + (y1 - y0) * mpq(2 * j + 1, 2 * n) for j in range(n)]
    return xs, ys


def raster(spec: SliceSpec, n: int, stage="extreme"):
    """``grid[j][i]`` is the verdict at column ``i``, row ``j``."""
    xs, ys = pixel_centers(spec, n)
    return [[classify_concrete(spec, (x, y), stage) for x in xs] for y in ys]


def _wall_marks(cx: CellComplex, n: int):
    """Pixels where a wall polynomial changes sign between neighbours in a row."""
    xs, ys = pixel_centers(cx.spec, n)
    fx, fy = [float(x) for x in xs], [float(y) for y in ys]
    polys = {a.poly for c in cx.cells for a in c.walls}
    marks = set()
    for p in polys:
        for j, y in enumerate(fy):
            prev = None
            for i, x in enumerate(fx):
                s = p.eval_float((x, y)) > 0
                if prev is not None and s != prev:
                    marks.add((i, j))
                prev = s
    return sorted(marks)


def render_svg(grid, config: PlotConfig, cx: CellComplex | None = None) -> str:
    n = config.resolution
    px = config.pixel
    size = n * px
    spec = config.spec
    (x0, x1), (y0, y1) = (spec.box[k] for k in spec.free)
    W = H = size + 2 * MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f"<title>{escape(spec.family)}</title>",
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
        '<g shape-rendering="crispEdges">',
    ]
    for j, row in enumerate(grid):
        top = MARGIN + (n - 1 - j) * px
        i = 0
        while i < n:
            k = i
            while k + 1 < n and row[k + 1] == row[i]:
                k += 1
            color = config.colors[row[i]]
            out.append(f'<rect x="{MARGIN + i * px}" y="{top}" width="{(k - i + 1) * px}" '
                       f'height="{px}" fill="{color}"/>')
            i = k + 1
    out.append("</g>")
    out.append(f'<rect x="{MARGIN}" y="{MARGIN}" width="{size}" height="{size}" '
               'fill="none" stroke="#000000"/>')
    if cx is not None:
        out.append('<g fill="#000000" opacity="0.6">')
        for i, j in _wall_marks(cx, n):
            out.append(f'<rect x="{MARGIN + i * px}" y="{MARGIN + (n - 1 - j) * px}" '
                       f'width="{px}" height="{px}"/>')
        out.append("</g>")
        out.append('<g fill="#d62728" stroke="#000000">')
        for c in cx.cells:
            tx, ty = (float(v) for v in c.test_point)
            cxp = MARGIN + (tx - float(x0)) / float(x1 - x0) * size
            cyp = MARGIN + size - (ty - float(y0)) / float(y1 - y0) * size
            out.append(f'<circle cx="{cxp:.2f}" cy="{cyp:.2f}" r="{max(px, 2)}"/>')
        out.append("</g>")
    fixed = ", ".join(f"{k}={v}" for k, v in spec.fixed.items())
    label = escape(f"{spec.family}" + (f" ({fixed})" if fixed else ""))
    out += [
        f'<text x="{MARGIN}" y="{MARGIN - 12}" font-family="sans-serif" font-size="12">{label}</text>',
        f'<text x="{MARGIN + size / 2}" y="{H - 10}" font-family="sans-serif" font-size="12" '
        f'text-anchor="middle">{escape(spec.free[0])} in [{x0}, {x1}]</text>',
        f'<text x="12" y="{MARGIN + size / 2}" font-family="sans-serif" font-size="12" '
        f'text-anchor="middle" transform="rotate(-90 12 {MARGIN + size / 2})">'
        f"{escape(spec.free[1])} in [{y0}, {y1}]</text>",
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def plot_slice(config: PlotConfig, cx: CellComplex | None = None, grid=None) -> str:
    """Classify the raster (unless ``grid`` is given), render and optionally write."""
    if grid is None:
        grid = raster(config.spec, config.resolution, config.stage)
    svg = render_svg(grid, config, cx)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    return svg
