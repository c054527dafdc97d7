"""Hand-built reference polyforms and two deliberate non-Tangles."""
from __future__ import annotations

from . import lattice as L
from .polyform import BLACK, WHITE, DualPolyform, walk_cells
from .tangle import Tangle, trace_links


def _xy(x, y):
    return (x, 0, y, 0)


def circle(t) -> DualPolyform:
    t = L.get_tiling(t)
    return DualPolyform.circle(t, (2, 0, 0, 0) if t is L.HEXAGONAL else (0, 0, 0, 0))


def single_square() -> DualPolyform:
    return DualPolyform(L.SQUARE, {(0, 0)},
                        {_xy(0, 0): BLACK, _xy(2, 0): WHITE, _xy(2, 2): BLACK, _xy(0, 2): WHITE})


def square_block() -> DualPolyform:
    """2x2 block of squares, corners and edge midpoints coloured by parity."""
    cells = {(0, 0), (1, 0), (0, 1), (1, 1)}
    col = {}
    for x in (0, 2, 4):
        for y in (0, 2, 4):
            if (x, y) != (2, 2):
                col[_xy(x, y)] = ((x + y) // 2) % 2 == 0
    return DualPolyform(L.SQUARE, cells, col)


def triangle_fan() -> DualPolyform:
    """Four triangles around the origin: a fan completed to a valid Tangle."""
    cells = {(-1, 0, 1), (-1, 0, 0), (-1, -1, 1), (0, -1, 0)}
    col = {(0, 0, 0, 0): BLACK, (1, 0, 0, 1): WHITE, (-1, 0, 0, 1): BLACK,
           (-2, 0, 0, 0): WHITE, (-1, 0, 0, -1): BLACK, (1, 0, 0, -1): WHITE}
    return DualPolyform(L.TRIANGULAR, cells, col)


def hex_reflect_prestate() -> DualPolyform:
    """Two hexagons whose shared white vertex carries an inverted 2-bulb;
    adding the hexagon above is a reflection."""
    t = L.HEXAGONAL
    cells = frozenset({(0, -1), (1, -1)})
    visits = walk_cells(t, cells)
    white = (1, 0, 0, -1)
    for phase in (BLACK, WHITE):
        col = {v.vertex: (phase if i % 2 == 0 else not phase) for i, v in enumerate(visits)}
        if col[white] is WHITE:
            return DualPolyform(t, cells, col)
    raise AssertionError("unreachable")


def square_reflection_prestate() -> DualPolyform:
    """Two squares side by side.  Their lower side carries an inverted 2-bulb
    that a domino attached below turns into a 2-bulb."""
    cells = {(0, -1), (1, -1)}
    col = {_xy(0, 0): WHITE, _xy(2, 0): BLACK, _xy(4, 0): WHITE,
           _xy(0, -2): BLACK, _xy(2, -2): WHITE, _xy(4, -2): BLACK}
    return DualPolyform(L.SQUARE, cells, col)


def white_cut_pair() -> DualPolyform:
    """Two squares meeting at a white vertex: fails the cut-vertex rule."""
    cells = {(0, 0), (-1, 1)}
    col = {_xy(0, 0): BLACK, _xy(2, 0): WHITE, _xy(2, 2): BLACK, _xy(0, 2): WHITE,
           _xy(0, 4): BLACK, _xy(-2, 4): WHITE, _xy(-2, 2): BLACK}
    return DualPolyform(L.SQUARE, cells, col)


def white_pinch() -> Tangle:
    """A diamond of two triangles with both ends of the shared edge white:
    the two concave arcs kiss in the middle of the curve."""
    t = L.TRIANGULAR
    cells = frozenset({(0, 0, L.UP), (0, 0, L.DOWN)})
    col = {(0, 0, 0, 0): BLACK, (2, 0, 0, 0): WHITE, (3, 0, 0, 1): BLACK, (1, 0, 0, 1): WHITE}
    return Tangle(t, tuple(trace_links(t, walk_cells(t, cells), col)))


def single_triangle() -> Tangle:
    """One triangle with one black corner: five convex and two concave links,
    so the curve has cusps and violates the turning count."""
    t = L.TRIANGULAR
    cells = frozenset({(0, 0, L.UP)})
    col = {(0, 0, 0, 0): BLACK, (2, 0, 0, 0): WHITE, (1, 0, 0, 1): WHITE}
    return Tangle(t, tuple(trace_links(t, walk_cells(t, cells), col)))
