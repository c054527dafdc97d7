"""SVG output for Tangles and dual polyforms.

Coordinates are evaluated from their exact Q[sqrt 3] values with ``decimal``
and printed to 9 significant digits, so identical inputs give identical bytes.
The y axis is flipped so pictures come out the usual way up.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction

from . import lattice as L
from .geometry import QSqrt3
from .lattice import DIRS
from .polyform import BLACK, DualPolyform, ValidityReport, to_dual_graph
from .tangle import Tangle

_CTX = decimal.Context(prec=40)
_SQRT3 = _CTX.sqrt(decimal.Decimal(3))


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 40.0  # pixels per unit radius
    radius: float = 1.0  # physical radius; multiplies the scale
    show_polyform: bool = False
    show_coloring: bool = True
    show_dual_graph: bool = False
    curve_width: float = 3.0
    edge_width: float = 1.0
    vertex_radius: float = 4.0
    margin: float = 10.0

    def __post_init__(self):
        if self.scale <= 0 or self.radius <= 0:
            raise ValueError("scale and radius must be positive")

    @property
    def px(self) -> Fraction:
        return Fraction(str(self.scale)) * Fraction(str(self.radius))


def _dec(q: QSqrt3) -> decimal.Decimal:
    a = _CTX.divide(decimal.Decimal(q.a.numerator), decimal.Decimal(q.a.denominator))
    b = _CTX.divide(decimal.Decimal(q.b.numerator), decimal.Decimal(q.b.denominator))
    return _CTX.add(a, _CTX.multiply(b, _SQRT3))


def fmt(q: QSqrt3) -> str:
    d = _dec(q)
    if d.is_zero():
        return "0"
    s = format(_CTX.plus(d).normalize(decimal.Context(prec=9)), "f")
    return s


def _fmt_num(x) -> str:
    return fmt(QSqrt3(Fraction(str(x))))


class _Frame:
    """Maps exact lattice coordinates (edge length 2, radius 1) to pixels."""

    def __init__(self, points, opts: RenderOptions):
        self.s = opts.px
        xs = [QSqrt3(p[0], p[1]) for p in points]
        ys = [QSqrt3(p[2], p[3]) for p in points]
        m = QSqrt3(Fraction(str(opts.margin)))
        self.x0 = min(xs) * self.s - m
        self.y0 = -(max(ys) * self.s) - m
        self.w = (max(xs) - min(xs)) * self.s + m * 2
        self.h = (max(ys) - min(ys)) * self.s + m * 2

    def xy(self, v, half=False) -> str:
        k = Fraction(1, 2) if half else 1
        x = QSqrt3(v[0], v[1]) * self.s * k
        y = -(QSqrt3(v[2], v[3]) * self.s * k)
        return f"{fmt(x)} {fmt(y)}"

    def header(self) -> str:
        return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{fmt(self.w)}" height="{fmt(self.h)}" '
                f'viewBox="{fmt(self.x0)} {fmt(self.y0)} {fmt(self.w)} {fmt(self.h)}">')


def _double(v):
    return tuple(2 * x for x in v)


def _tangle_extremes(t: Tangle) -> list:
    """Doubled coordinates of every arc endpoint and axis-extreme point."""
    pts = []
    unit = t.tiling.unit
    for l in t.links:
        c2 = _double(l.center)
        for k in l.span(unit):
            if k in (l.start_dir, l.end_dir(unit)) or k % 3 == 0:
                d = DIRS[k]
                pts.append(tuple(c2[i] + d[i] for i in range(4)))
    return pts


def _path(t: Tangle, fr: _Frame, stroke: str, width: float) -> str:
    r = fmt(QSqrt3(fr.s))
    parts = [f"M {fr.xy(t.start2(0), half=True)}"]
    for i, l in enumerate(t.links):
        # the y flip reverses orientation: counter-clockwise is sweep 0 on screen
        sweep = 0 if l.convex else 1
        parts.append(f"A {r} {r} 0 0 {sweep} {fr.xy(t.end2(i), half=True)}")
    d = " ".join(parts) + " Z"
    return (f'<path d="{d}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt_num(width)}" stroke-linecap="round"/>')


def _polyform_parts(p: DualPolyform, fr: _Frame, opts: RenderOptions, fill="#e8e8e8") -> list[str]:
    t = p.tiling
    out = []
    for c in sorted(p.cells):
        pts = " ".join(fr.xy(v).replace(" ", ",") for v in L.cell_vertices(t, c))
        out.append(f'<polygon points="{pts}" fill="{fill}" stroke="#808080" '
                   f'stroke-width="{_fmt_num(opts.edge_width)}"/>')
    return out


def _vertex_marks(p: DualPolyform, fr: _Frame, opts: RenderOptions, highlight=()) -> list[str]:
    out = []
    rad = _fmt_num(opts.vertex_radius)
    for v, c in sorted(p.coloring.items()):
        x, y = fr.xy(v).split()
        fill = "black" if c is BLACK else "white"
        out.append(f'<circle cx="{x}" cy="{y}" r="{rad}" fill="{fill}" stroke="black" '
                   f'stroke-width="{_fmt_num(opts.edge_width)}"/>')
    for v in highlight:
        x, y = fr.xy(v).split()
        out.append(f'<circle class="offender" cx="{x}" cy="{y}" r="{_fmt_num(2 * opts.vertex_radius)}" '
                   f'fill="none" stroke="red" stroke-width="{_fmt_num(opts.edge_width * 2)}"/>')
    return out


def _frame_points(tangles, p: DualPolyform | None, opts) -> list:
    pts = []
    for t in tangles:
        pts.extend(_tangle_extremes(t))
    if p is not None and (opts.show_polyform or not tangles):
        pts.extend(_double(v) for v in (p.vertices or p.coloring))
    # everything in doubled coordinates; halve for the frame
    return [tuple(Fraction(x, 2) for x in q) for q in pts]


def render_svg(t: Tangle, p: DualPolyform | None = None, opts: RenderOptions = RenderOptions(),
               previous: Tangle | None = None) -> str:
    """Draw a Tangle; ``previous`` is drawn underneath in gray (operation preview)."""
    if not t.is_closed():
        raise ValueError("cannot render an open link sequence")
    tangles = [t] if previous is None else [previous, t]
    fr = _Frame(_frame_points(tangles, p, opts), opts)
    body = []
    if p is not None and opts.show_polyform:
        body += _polyform_parts(p, fr, opts)
        if opts.show_coloring:
            body += _vertex_marks(p, fr, opts)
    if previous is not None:
        body.append(_path(previous, fr, "#a0a0a0", opts.curve_width))
    body.append(_path(t, fr, "black", opts.curve_width))
    return "\n".join([fr.header(), *body, "</svg>"]) + "\n"


def render_polyform_svg(p: DualPolyform, opts: RenderOptions = RenderOptions(),
                        report: ValidityReport | None = None) -> str:
    """Cells as polygons with the boundary colouring; failing vertices from
    ``report`` are ringed in red."""
    fr = _Frame(_frame_points([], p, opts), opts)
    body = _polyform_parts(p, fr, opts)
    if opts.show_dual_graph and p.tiling is L.SQUARE and p.cells:
        _, edges = to_dual_graph(p)
        for u, v in edges:
            a, b = fr.xy(u).split(), fr.xy(v).split()
            body.append(f'<line class="dual" x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                        f'stroke="black" stroke-width="{_fmt_num(opts.curve_width)}"/>')
    highlight = []
    if report is not None:
        for name, res in sorted(report.checks.items()):
            off = res.offender
            if not res.ok and isinstance(off, tuple) and len(off) == 4 and isinstance(off[0], int):
                highlight.append(off)
    if opts.show_coloring:
        body += _vertex_marks(p, fr, opts, highlight)
    return "\n".join([fr.header(), *body, "</svg>"]) + "\n"
