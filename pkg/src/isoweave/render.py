"""SVG drawings of designs, their symmetry markers and coloured patterns.

Geometry is computed in half units (a cell is 2 x 2) and scaled by 10, so a
cell is 20 SVG units wide.  The y axis is flipped: SVG ``y = -10 * y2``.
Only ``rect``, ``line``, ``path`` and ``polygon`` elements are emitted, in a
fixed order, with fixed number formatting.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .colouring import Pattern, Side, pattern_view
from .fabric import Design
from .geometry import QUARTER, mat_vec
from .symmetry import (
    GroupDescription,
    Marker,
    NotApplicable,
    axes,
    axis_period,
    half_turns,
    lattice_unit_of,
    quarter_turn_centres,
)

CELL = 20
MARKER = 6
SCALE = CELL // 2
MARGIN = 10

DARK = "#6b6b6b"
PALE = "#ffffff"
INK = "#000000"

DEFAULT_PALETTE = (
    "#d62728",  # red
    "#f2c80f",  # yellow
    "#1f4e9c",  # dark blue
    "#2ca02c",  # green
    "#f4a6c6",  # pink
    "#7fb8e6",  # light blue
)

PALETTE_ENV = "ISOWEAVE_PALETTE"


class PaletteError(ValueError):
    pass


def load_palette(path: str | None = None) -> tuple[str, ...]:
    """Colours from a file with one entry per line; blank lines and ``;`` comments are skipped.

    With no argument the file named by ``$ISOWEAVE_PALETTE`` is used, falling
    back to :data:`DEFAULT_PALETTE`.
    """
    path = path or os.environ.get(PALETTE_ENV)
    if not path:
        return DEFAULT_PALETTE
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise PaletteError(f"cannot read palette file {path!r}: {exc}") from exc
    colours = tuple(c for c in (ln.split(";", 1)[0].strip() for ln in lines) if c)
    if not colours:
        raise PaletteError(f"palette file {path!r} lists no colours")
    return colours


@dataclass(frozen=True)
class RenderOptions:
    markers: bool = True
    axes: bool = True
    lattice_unit: bool = True
    nested_units: bool = True


def _num(v) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{float(v):.2f}".rstrip("0").rstrip(".")


def _pt(x2, y2) -> tuple[Fraction, Fraction]:
    return Fraction(x2) * SCALE, -Fraction(y2) * SCALE


class _Svg:
    def __init__(self, rows: int, cols: int):
        self.width, self.height = cols * CELL, rows * CELL
        self.parts: list[str] = []

    def rect(self, x, y, w, h, fill, stroke=None, stroke_width=None):
        extra = f' stroke="{stroke}" stroke-width="{_num(stroke_width)}"' if stroke else ""
        self.parts.append(
            f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" height="{_num(h)}" fill="{fill}"{extra}/>'
        )

    def line(self, a, b, width, colour=INK, dash=None):
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{_num(a[0])}" y1="{_num(a[1])}" x2="{_num(b[0])}" y2="{_num(b[1])}" '
            f'stroke="{colour}" stroke-width="{_num(width)}"{extra}/>'
        )

    def polygon(self, points, fill, stroke=INK, width=1, dash=None):
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in points)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" stroke-width="{_num(width)}"{extra}/>'
        )

    def path(self, d, stroke=INK, width=1):
        self.parts.append(f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{_num(width)}"/>')

    def text(self) -> str:
        w, h = self.width + 2 * MARGIN, self.height + 2 * MARGIN
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
            f'viewBox="{-MARGIN} {-MARGIN} {w} {h}">'
        )
        return "\n".join([head, *self.parts, "</svg>"]) + "\n"


def _grid(svg: _Svg, colours, fills):
    rows, cols = len(colours), len(colours[0])
    for i in range(rows):
        for j in range(cols):
            svg.rect(j * CELL, i * CELL, CELL, CELL, fills[colours[i][j]])
    # cell boundaries as one path
    d = [f"M0 {i * CELL}H{cols * CELL}" for i in range(rows + 1)]
    d += [f"M{j * CELL} 0V{rows * CELL}" for j in range(cols + 1)]
    svg.path("".join(d), width=Fraction(1, 2))


def _marker(svg: _Svg, centre, kind: Marker):
    x, y = _pt(*centre)
    h = Fraction(MARKER, 2)
    fill = INK if kind in (Marker.FILLED_BOX, Marker.FILLED_DIAMOND) else PALE
    if kind in (Marker.FILLED_BOX, Marker.HOLLOW_BOX):
        svg.rect(x - h, y - h, MARKER, MARKER, fill, INK, 1)
    else:
        svg.polygon([(x, y - h), (x + h, y), (x, y + h), (x - h, y)], fill)


def _clip_axis(slope: int, k: Fraction, w2: int, h2: int):
    """Segment of ``x2 - y2 = k`` (slope 1) or ``x2 + y2 = k`` (slope -1) inside the box."""
    if slope == 1:
        lo, hi = max(Fraction(0), k - h2), min(Fraction(w2), k)
        if hi <= lo:
            return None
        return (lo, lo - k), (hi, hi - k)
    lo, hi = max(Fraction(0), k), min(Fraction(w2), k + h2)
    if hi <= lo:
        return None
    return (lo, k - lo), (hi, k - hi)


def _draw_axes(svg: _Svg, g: GroupDescription, w2: int, h2: int):
    found = axes(g)
    mirrors = {(a.slope, a.offset) for a in found if a.mirror}
    for a in found:
        period = axis_period(g.lattice, a.slope)
        span = (0, w2 + h2) if a.slope == 1 else (-h2, w2)
        t = (span[0] - a.offset) // period
        k = a.offset + t * period
        while k <= span[1]:
            seg = _clip_axis(a.slope, k, w2, h2)
            if seg is not None:
                p, q = _pt(*seg[0]), _pt(*seg[1])
                if a.mirror:
                    svg.line(p, q, 3)
                elif (a.slope, a.offset) in mirrors:
                    svg.line(p, q, 1, PALE, "4 4")  # broken filling of a mirror
                elif a.tau:
                    svg.line(p, q, 3, INK, "8 4")
                else:
                    svg.line(p, q, 4, INK, "8 4")  # hollow: white core over a dark edge
                    svg.line(p, q, 2, PALE, "8 4")
            k += period
    return found


def _draw_centres(svg: _Svg, g: GroupDescription, w2: int, h2: int):
    lo, hi = (0, -h2), (w2, 0)
    quarter = set()
    marks = []
    for c, tau in quarter_turn_centres(g):
        kind = Marker.for_rotation(True, tau)
        for p in g.lattice.points_in_box(lo, hi, c):
            quarter.add(p)
            marks.append((p, kind))
    for h in half_turns(g):
        for p in g.lattice.points_in_box(lo, hi, h.center):
            if p not in quarter:
                marks.append((p, h.marker))
    for p, kind in sorted(set(marks), key=lambda m: (m[0][1] * -1, m[0][0], m[1].value)):
        _marker(svg, p, kind)


def _unit_polygon(anchor, v):
    w = mat_vec(QUARTER, v)
    a = anchor
    return [a, (a[0] + v[0], a[1] + v[1]), (a[0] + v[0] + w[0], a[1] + v[1] + w[1]), (a[0] + w[0], a[1] + w[1])]


def _draw_unit(svg: _Svg, g: GroupDescription, w2: int, h2: int, nested: bool):
    try:
        unit = lattice_unit_of(g)
    except NotApplicable:
        return
    v = unit.side
    full = g.full_lattice

    def overflow(a):
        xs = [p[0] for p in _unit_polygon(a, v)]
        ys = [p[1] for p in _unit_polygon(a, v)]
        return max(0, -min(xs)) + max(0, max(xs) - w2) + max(0, min(ys) * -1 - h2) + max(0, max(ys))

    candidates = full.points_in_box((0, -h2), (w2, 0), unit.anchor) or [tuple(unit.anchor)]
    anchor = min(candidates, key=lambda a: (overflow(a), -a[1], a[0]))
    svg.polygon([_pt(*p) for p in _unit_polygon(anchor, v)], "none", INK, 1)
    if not nested or unit.level is None:
        return
    side = v
    for level in range(unit.level, 1, -1):
        r = mat_vec(QUARTER, side)
        sign = -1 if level % 2 else 1
        side = ((side[0] + sign * r[0]) // 2, (side[1] + sign * r[1]) // 2)
        svg.polygon([_pt(*p) for p in _unit_polygon(anchor, side)], "none", INK, 1, "4 3")


def render_design(d: Design, g: GroupDescription | None = None, opts: RenderOptions | None = None) -> str:
    """Dark and pale cells over one ``order x order`` square, with ``g``'s features on top."""
    opts = opts or RenderOptions()
    sq = d.square()
    n = sq.shape[0]
    svg = _Svg(n, n)
    _grid(svg, sq.astype(int).tolist(), {0: PALE, 1: DARK})
    if g is not None:
        w2 = h2 = 2 * n
        if opts.lattice_unit:
            _draw_unit(svg, g, w2, h2, opts.nested_units)
        if opts.axes:
            _draw_axes(svg, g, w2, h2)
        if opts.markers:
            _draw_centres(svg, g, w2, h2)
    return svg.text()


def render_pattern(pat: Pattern, side: Side | str = Side.OBVERSE, palette=None) -> str:
    """The colours seen on one side over a colour period."""
    view = pattern_view(pat, side)
    if pat.striping is None:
        fills = {0: PALE, 1: DARK}
    else:
        palette = tuple(palette) if palette is not None else load_palette()
        if len(palette) < pat.striping.p:
            raise PaletteError(f"palette has {len(palette)} colours, pattern needs {pat.striping.p}")
        fills = dict(enumerate(palette))
    rows, cols = view.shape
    svg = _Svg(rows, cols)
    _grid(svg, view.tolist(), fills)
    return svg.text()


__all__ = [
    "CELL",
    "DEFAULT_PALETTE",
    "MARKER",
    "PaletteError",
    "RenderOptions",
    "load_palette",
    "render_design",
    "render_pattern",
]
