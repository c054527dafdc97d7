import math
import re
import xml.etree.ElementTree as ET

from hypothesis import given, settings, strategies as st

from tangles import fixtures as F, lattice as L
from tangles.ops import apply, applicable_ops
from tangles.polyform import validate
from tangles.render import RenderOptions, render_polyform_svg, render_svg
from tangles.tangle import build_tangle

from conftest import all_small

NS = "{http://www.w3.org/2000/svg}"
R3 = math.sqrt(3)


def paths(svg):
    root = ET.fromstring(svg)
    return root, root.findall(f"{NS}path")


def parse_path(d):
    tok = d.split()
    assert tok[0] == "M"
    start = (float(tok[1]), float(tok[2]))
    segs = []
    i = 3
    while tok[i] == "A":
        rx, ry, rot, large, sweep, x, y = tok[i + 1:i + 8]
        segs.append((float(rx), int(large), int(sweep), float(x), float(y)))
        i += 8
    assert tok[i] == "Z"
    return tok, start, segs


def arc_center(p0, p1, r, large, sweep):
    """Centre of an SVG elliptical arc with rx = ry = r, from the endpoint form."""
    x1p, y1p = (p0[0] - p1[0]) / 2, (p0[1] - p1[1]) / 2
    k = math.sqrt(max(0.0, (r * r - x1p * x1p - y1p * y1p) / (x1p * x1p + y1p * y1p)))
    if large == sweep:
        k = -k
    cxp, cyp = k * y1p, -k * x1p
    return cxp + (p0[0] + p1[0]) / 2, cyp + (p0[1] + p1[1]) / 2


def test_circle_path_closes_exactly():
    svg = render_svg(build_tangle(F.circle(L.SQUARE)))
    _, ps = paths(svg)
    assert len(ps) == 1
    tok, start, segs = parse_path(ps[0].get("d"))
    assert len(segs) == 4
    assert tok[-3:-1] == tok[1:3]


def test_single_square_bbox():
    opts = RenderOptions()
    svg = render_svg(build_tangle(F.single_square()), opts=opts)
    root, ps = paths(svg)
    _, _, segs = parse_path(ps[0].get("d"))
    assert len(segs) == 8
    x0, y0, w, h = map(float, root.get("viewBox").split())
    s, m = opts.scale, opts.margin
    assert (x0, w) == (-s - m, 4 * s + 2 * m)
    # y is flipped: the box spans -3s .. s
    assert (y0, h) == (-3 * s - m, 4 * s + 2 * m)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(all_small()))
def test_arcs_have_the_right_centres(p):
    tg = build_tangle(p)
    opts = RenderOptions(scale=25)
    _, ps = paths(render_svg(tg, opts=opts))
    _, start, segs = parse_path(ps[0].get("d"))
    prev = start
    for l, (r, large, sweep, x, y) in zip(tg.links, segs):
        cx, cy = arc_center(prev, (x, y), r, large, sweep)
        want = ((l.center[0] + l.center[1] * R3) * 25, -(l.center[2] + l.center[3] * R3) * 25)
        assert math.isclose(cx, want[0], abs_tol=1e-5) and math.isclose(cy, want[1], abs_tol=1e-5)
        prev = (x, y)


def test_endpoints_match_exact_positions():
    tg = build_tangle(F.triangle_fan())
    s = 40
    _, ps = paths(render_svg(tg, opts=RenderOptions(scale=s)))
    _, _, segs = parse_path(ps[0].get("d"))
    for i, (_, _, _, x, y) in enumerate(segs):
        e = tg.end2(i)
        assert abs(x - (e[0] + e[1] * R3) / 2 * s) < 1e-6 * s
        assert abs(y + (e[2] + e[3] * R3) / 2 * s) < 1e-6 * s


def test_byte_deterministic():
    p = F.hex_reflect_prestate()
    a = render_svg(build_tangle(p), p, RenderOptions(show_polyform=True))
    b = render_svg(build_tangle(p), p, RenderOptions(show_polyform=True))
    assert a == b
    assert not re.search(r"\d\.\d{10,}", a)


def test_op_preview_has_two_paths():
    c = F.circle(L.SQUARE)
    q = apply(c, applicable_ops(c)[0])
    _, ps = paths(render_svg(build_tangle(q), previous=build_tangle(c)))
    assert [x.get("stroke") for x in ps] == ["#a0a0a0", "black"]


def test_polyform_svg():
    root, _ = paths(render_polyform_svg(F.single_square()))
    assert len(root.findall(f"{NS}polygon")) == 1
    marks = root.findall(f"{NS}circle")
    assert sorted(c.get("fill") for c in marks) == ["black", "black", "white", "white"]


def test_invalid_polyform_highlights_white_cut():
    p = F.white_cut_pair()
    root, _ = paths(render_polyform_svg(p, report=validate(p)))
    ring = [c for c in root.findall(f"{NS}circle") if c.get("class") == "offender"]
    assert len(ring) == 1
    assert (float(ring[0].get("cx")), float(ring[0].get("cy"))) == (0.0, -80.0)


def test_dual_graph_overlay():
    root, _ = paths(render_polyform_svg(F.square_block(), RenderOptions(show_dual_graph=True)))
    assert len([e for e in root.findall(f"{NS}line") if e.get("class") == "dual"]) == 4


def test_radius_scales_drawing():
    tg = build_tangle(F.circle(L.SQUARE))
    root, _ = paths(render_svg(tg, opts=RenderOptions(radius=2.5, margin=0)))
    assert float(root.get("width")) == 200.0
