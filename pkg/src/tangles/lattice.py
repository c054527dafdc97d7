"""The three regular tilings with edge length 2 (so packing circles have r = 1).

Vertices are keyed by their exact position.  Every lattice vertex has integer
coordinates in the basis ``x = xa + xb*sqrt3, y = ya + yb*sqrt3``, so a
``VertexId`` is the plain tuple ``(xa, xb, ya, yb)``; ``to_point`` lifts it
into :mod:`tangles.geometry` when exact arithmetic is needed.

Cell ids:
  * square ``(i, j)`` -- the square with lower-left corner ``(2i, 2j)``;
  * triangular ``(i, j, o)`` with ``o = 0`` (up) or ``1`` (down);
  * hexagonal axial ``(p, q)`` -- centre ``(3p, sqrt3*(p + 2q))``.

Directions are multiples of 30 degrees (``0 <= k < 12``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .geometry import ExactPoint, QSqrt3

VertexId = tuple  # (xa, xb, ya, yb), all ints
CellId = tuple

UP, DOWN = 0, 1


@dataclass(frozen=True)
class Tiling:
    tag: str
    n: int  # links per full circle
    unit: int  # link angle in 30-degree steps

    def __post_init__(self):
        assert self.n * self.unit == 12

    @property
    def order(self) -> int:
        """Size of the point group used for canonical forms."""
        return 8 if self.tag == "square" else 12

    def __str__(self):
        return self.tag

    def __reduce__(self):
        # keep the module-level singletons identical across pickling
        return (get_tiling, (self.tag,))


SQUARE = Tiling("square", 4, 3)
HEXAGONAL = Tiling("hexagonal", 3, 4)
TRIANGULAR = Tiling("triangular", 6, 2)
TILINGS = {t.tag: t for t in (SQUARE, HEXAGONAL, TRIANGULAR)}


def get_tiling(tag) -> Tiling:
    if isinstance(tag, Tiling):
        return tag
    try:
        return TILINGS[tag]
    except KeyError:
        raise ValueError(f"unknown tiling {tag!r}") from None


# 2*(cos 30k, sin 30k) in (xa, xb, ya, yb) form
DIRS = (
    (2, 0, 0, 0), (0, 1, 1, 0), (1, 0, 0, 1), (0, 0, 2, 0),
    (-1, 0, 0, 1), (0, -1, 1, 0), (-2, 0, 0, 0), (0, -1, -1, 0),
    (-1, 0, 0, -1), (0, 0, -2, 0), (1, 0, 0, -1), (0, 1, -1, 0),
)
_DIR_INDEX = {d: k for k, d in enumerate(DIRS)}


def vadd(u: VertexId, d) -> VertexId:
    return (u[0] + d[0], u[1] + d[1], u[2] + d[2], u[3] + d[3])


def vsub(u: VertexId, v: VertexId) -> VertexId:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3])


def to_point(v) -> ExactPoint:
    return ExactPoint(QSqrt3(v[0], v[1]), QSqrt3(v[2], v[3]))


def from_point(p: ExactPoint) -> VertexId:
    key = p.key()
    if any(c.denominator != 1 for c in key):
        raise ValueError(f"{p} is not a lattice position")
    return tuple(int(c) for c in key)


# ---------------------------------------------------------------- vertices

def _hex_center(p: int, q: int) -> VertexId:
    return (3 * p, 0, 0, p + 2 * q)


def _hex_from_center(c: VertexId) -> CellId:
    p = c[0] // 3
    return (p, (c[3] - p) // 2)


def _in_hex_center_lattice(d: VertexId) -> bool:
    return d[1] == 0 and d[2] == 0 and d[0] % 3 == 0 and (d[3] - d[0] // 3) % 2 == 0


_HEX_A = (2, 0, 0, 0)
_HEX_B = (-2, 0, 0, 0)


def hex_class(v: VertexId) -> int | None:
    """0 / 1 for the two honeycomb sublattices, None off the lattice."""
    if _in_hex_center_lattice(vsub(v, _HEX_A)):
        return 0
    if _in_hex_center_lattice(vsub(v, _HEX_B)):
        return 1
    return None


def is_vertex(t: Tiling, v: VertexId) -> bool:
    if len(v) != 4 or not all(isinstance(c, int) for c in v):
        return False
    if t is SQUARE:
        return v[1] == 0 and v[3] == 0 and v[0] % 2 == 0 and v[2] % 2 == 0
    if t is TRIANGULAR:
        return v[1] == 0 and v[2] == 0 and (v[0] - v[3]) % 2 == 0
    return hex_class(v) is not None


def neighbor_dirs(t: Tiling, v: VertexId) -> tuple[int, ...]:
    if t is SQUARE:
        return (0, 3, 6, 9)
    if t is TRIANGULAR:
        return (0, 2, 4, 6, 8, 10)
    return (0, 4, 8) if hex_class(v) == 0 else (2, 6, 10)


def vertex_neighbors(t: Tiling, v: VertexId) -> list[VertexId]:
    if not is_vertex(t, v):
        raise ValueError(f"{v} is not a vertex of the {t} tiling")
    return [vadd(v, DIRS[k]) for k in neighbor_dirs(t, v)]


def direction(v: VertexId, u: VertexId) -> int:
    """The k with ``u - v = 2(cos 30k, sin 30k)``."""
    try:
        return _DIR_INDEX[vsub(u, v)]
    except KeyError:
        raise ValueError(f"{u} is not a lattice neighbour of {v}") from None


# ---------------------------------------------------------------- cells

@lru_cache(maxsize=None)
def cell_vertices(t: Tiling, c: CellId) -> tuple[VertexId, ...]:
    """Corners of cell ``c`` in counter-clockwise order."""
    if t is SQUARE:
        i, j = c
        return ((2 * i, 0, 2 * j, 0), (2 * i + 2, 0, 2 * j, 0),
                (2 * i + 2, 0, 2 * j + 2, 0), (2 * i, 0, 2 * j + 2, 0))
    if t is TRIANGULAR:
        i, j, o = c
        x = 2 * i + j
        if o == UP:
            return ((x, 0, 0, j), (x + 2, 0, 0, j), (x + 1, 0, 0, j + 1))
        return ((x + 2, 0, 0, j), (x + 3, 0, 0, j + 1), (x + 1, 0, 0, j + 1))
    p, q = c
    ctr = _hex_center(p, q)
    return tuple(vadd(ctr, DIRS[2 * k]) for k in range(6))


@lru_cache(maxsize=None)
def cell_edges(t: Tiling, c: CellId) -> tuple[tuple[VertexId, VertexId], ...]:
    vs = cell_vertices(t, c)
    return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


@lru_cache(maxsize=None)
def incident_cells(t: Tiling, v: VertexId) -> tuple[CellId, ...]:
    if t is SQUARE:
        a, b = v[0] // 2, v[2] // 2
        return ((a - 1, b - 1), (a, b - 1), (a - 1, b), (a, b))
    if t is TRIANGULAR:
        j = v[3]
        i = (v[0] - j) // 2
        return ((i, j, UP), (i - 1, j, UP), (i, j - 1, UP),
                (i - 1, j, DOWN), (i - 1, j - 1, DOWN), (i, j - 1, DOWN))
    cls = hex_class(v)
    offsets = (0, 4, 8) if cls == 0 else (2, 6, 10)
    return tuple(_hex_from_center(vsub(v, DIRS[k])) for k in offsets)


def cell_from_vertices(t: Tiling, vs: Iterable[VertexId]) -> CellId:
    vs = list(vs)
    if t is SQUARE:
        m = min(vs, key=lambda v: (v[0], v[2]))
        return (m[0] // 2, m[2] // 2)
    if t is TRIANGULAR:
        lo = min(v[3] for v in vs)
        bottom = sorted(v[0] for v in vs if v[3] == lo)
        if len(bottom) == 2:
            return ((bottom[0] - lo) // 2, lo, UP)
        return ((bottom[0] - lo - 2) // 2, lo, DOWN)
    sx = sum(v[0] for v in vs)
    sy = sum(v[3] for v in vs)
    return _hex_from_center((sx // 6, 0, 0, sy // 6))


@lru_cache(maxsize=None)
def edge_neighbors(t: Tiling, c: CellId) -> tuple[CellId, ...]:
    """Cells sharing an edge with ``c``."""
    if t is SQUARE:
        i, j = c
        return ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1))
    if t is TRIANGULAR:
        i, j, o = c
        if o == UP:
            return ((i, j - 1, DOWN), (i, j, DOWN), (i - 1, j, DOWN))
        return ((i, j, UP), (i + 1, j, UP), (i, j + 1, UP))
    p, q = c
    return ((p + 1, q), (p - 1, q), (p, q + 1), (p, q - 1), (p + 1, q - 1), (p - 1, q + 1))


def edge_cells(t: Tiling, u: VertexId, v: VertexId) -> tuple[CellId, ...]:
    """The (two) cells having ``u-v`` as an edge."""
    cv = set(incident_cells(t, v))
    return tuple(c for c in incident_cells(t, u) if c in cv)


def left_cell(t: Tiling, u: VertexId, v: VertexId) -> CellId:
    """Cell on the left of the directed edge ``u -> v``."""
    for c in edge_cells(t, u, v):
        for a, b in cell_edges(t, c):
            if a == u and b == v:
                return c
    raise ValueError(f"{u}->{v} is not a tiling edge")


# ---------------------------------------------------------------- symmetry

def _rot90(v):
    return (-v[2], -v[3], v[0], v[1])


def _rot60(v):
    xa, xb, ya, yb = v
    # (x/2 - sqrt3*y/2, sqrt3*x/2 + y/2)
    return ((xa - 3 * yb) // 2, (xb - ya) // 2, (3 * xb + ya) // 2, (xa + yb) // 2)


def _reflect(v):
    return (v[0], v[1], -v[2], -v[3])


def _compose(f, g):
    return lambda v: f(g(v))


@lru_cache(maxsize=None)
def point_group(t: Tiling) -> tuple[Callable, ...]:
    """Point-group elements as maps on vertex ids (identity first)."""
    rot, steps = (_rot90, 4) if t is SQUARE else (_rot60, 6)
    rots = [lambda v: v]
    for _ in range(steps - 1):
        rots.append(_compose(rot, rots[-1]))
    return tuple(rots + [_compose(_reflect, r) for r in rots])


def translation_anchor(t: Tiling, v: VertexId) -> VertexId:
    """Canonical representative of v's class under lattice translations."""
    if t is HEXAGONAL:
        return _HEX_A if hex_class(v) == 0 else _HEX_B
    return (0, 0, 0, 0)


def transform_cell(t: Tiling, g: Callable, c: CellId) -> CellId:
    return cell_from_vertices(t, (g(v) for v in cell_vertices(t, c)))


def symmetry_images(t: Tiling, cells: Iterable[CellId], coloring: Mapping[VertexId, bool]):
    """Images of a coloured cell set under the point group, translated so the
    lexicographically least vertex sits on its class anchor.  Colours travel
    with their vertices."""
    cells = list(cells)
    out = []
    for g in point_group(t):
        vmap = {}
        for c in cells:
            for v in cell_vertices(t, c):
                if v not in vmap:
                    vmap[v] = g(v)
        for v in coloring:
            if v not in vmap:
                vmap[v] = g(v)
        if not vmap:
            out.append((frozenset(), {}))
            continue
        least = min(vmap.values())
        shift = vsub(translation_anchor(t, least), least)
        new_cells = frozenset(
            cell_from_vertices(t, (vadd(vmap[v], shift) for v in cell_vertices(t, c))) for c in cells
        )
        new_col = {vadd(vmap[v], shift): col for v, col in coloring.items()}
        out.append((new_cells, new_col))
    return out


# ---------------------------------------------------------------- json

def cell_to_json(t: Tiling, c: CellId):
    if t is TRIANGULAR:
        return [c[0], c[1], "U" if c[2] == UP else "D"]
    return [c[0], c[1]]


def cell_from_json(t: Tiling, obj) -> CellId:
    if t is TRIANGULAR:
        i, j, o = obj
        if o not in ("U", "D"):
            raise ValueError(f"bad triangle orientation {o!r}")
        return (int(i), int(j), UP if o == "U" else DOWN)
    if len(obj) != 2:
        raise ValueError(f"bad cell id {obj!r}")
    return (int(obj[0]), int(obj[1]))


def vertex_to_json(v: VertexId):
    return to_point(v).to_json()


def vertex_from_json(t: Tiling, obj) -> VertexId:
    v = from_point(ExactPoint.from_json(obj))
    if not is_vertex(t, v):
        raise ValueError(f"{obj!r} is not a vertex of the {t} tiling")
    return v
