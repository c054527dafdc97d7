"""Tangles as cyclic link sequences: construction from a dual polyform,
measurements, exact area, simplicity, and the inverse map.

A link is a unit arc (quarter / third / sixth circle) of radius 1 about a
lattice vertex.  Convex links turn counter-clockwise, concave links clockwise,
and the curve is traversed with its interior on the left.  Link endpoints are
kiss points, so ``2*endpoint`` is always an integer lattice vector; the area
integral is carried out in those doubled coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import lattice as L
from .geometry import AreaValue, QSqrt3
from .lattice import DIRS, Tiling, VertexId
from .polyform import (
    BLACK, DualPolyform, Visit, boundary_walk, validate,
)


class TangleError(ValueError):
    def __init__(self, msg, vertex=None):
        super().__init__(msg)
        self.vertex = vertex


class Link(NamedTuple):
    center: VertexId
    convex: bool
    start_dir: int

    def end_dir(self, unit: int) -> int:
        return (self.start_dir + (unit if self.convex else -unit)) % 12

    def span(self, unit: int) -> frozenset:
        """Closed set of 30-degree directions covered by the arc."""
        lo = self.start_dir if self.convex else self.start_dir - unit
        return frozenset((lo + i) % 12 for i in range(unit + 1))


def _double(c: VertexId, k: int):
    d = DIRS[k]
    return (2 * c[0] + d[0], 2 * c[1] + d[1], 2 * c[2] + d[2], 2 * c[3] + d[3])


@dataclass(frozen=True)
class Tangle:
    tiling: Tiling
    links: tuple

    def __post_init__(self):
        object.__setattr__(self, "tiling", L.get_tiling(self.tiling))
        object.__setattr__(self, "links", tuple(Link(*l) for l in self.links))

    def __len__(self):
        return len(self.links)

    def start2(self, i: int):
        l = self.links[i]
        return _double(l.center, l.start_dir)

    def end2(self, i: int):
        l = self.links[i]
        return _double(l.center, l.end_dir(self.tiling.unit))

    def is_closed(self) -> bool:
        n = len(self.links)
        return n > 0 and all(self.end2(i) == self.start2((i + 1) % n) for i in range(n))

    def to_json(self) -> dict:
        return {
            "tiling": self.tiling.tag,
            "links": [{"center": L.vertex_to_json(l.center), "curv": "X" if l.convex else "V",
                       "start_dir": l.start_dir} for l in self.links],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Tangle":
        t = L.get_tiling(obj["tiling"])
        links = []
        for d in obj["links"]:
            if d["curv"] not in ("X", "V"):
                raise ValueError(f"bad curvature tag {d['curv']!r}")
            k = int(d["start_dir"])
            if not 0 <= k < 12:
                raise ValueError(f"start_dir {k} out of range")
            links.append(Link(L.vertex_from_json(t, d["center"]), d["curv"] == "X", k))
        return cls(t, tuple(links))


# ------------------------------------------------------------------ construction

def trace_links(t: Tiling, visits: Sequence[Visit], coloring) -> list[Link]:
    """Emit the unit links of each boundary visit.  Does no validity checking
    beyond the arc extents, so it also produces non-Tangles on purpose."""
    unit = t.unit
    links = []
    for vis in visits:
        v = vis.vertex
        th_u = L.direction(v, vis.prev)
        black = coloring[v]
        extent = vis.gap if black else (12 - vis.gap) % 12
        if extent == 0 or extent % unit:
            raise TangleError(f"arc at {v} spans {30 * extent} degrees", v)
        step = unit if black else -unit
        links.extend(Link(v, black, (th_u + i * step) % 12) for i in range(extent // unit))
    return links


def circle_tangle(t: Tiling, v: VertexId) -> Tangle:
    d0 = min(L.neighbor_dirs(t, v))
    return Tangle(t, tuple(Link(v, True, (d0 + i * t.unit) % 12) for i in range(t.n)))


def build_tangle(p: DualPolyform, check: bool = True) -> Tangle:
    if check:
        rep = validate(p)
        if not rep.valid:
            raise TangleError(f"polyform fails {rep.failures()}")
    if p.is_circle:
        return circle_tangle(p.tiling, p.circle_vertex)
    return Tangle(p.tiling, tuple(trace_links(p.tiling, boundary_walk(p), p.coloring)))


# ------------------------------------------------------------------ measurements

@dataclass(frozen=True)
class TangleMetrics:
    length: int
    j: int
    k: int
    size: int | None = None
    cls: int | None = None

    def to_json(self) -> dict:
        out = {"length": self.length, "j": self.j, "k": self.k, "size": self.size}
        if self.cls is not None:
            out["class"] = self.cls
        return out


def metrics(t: Tangle, p: DualPolyform | None = None) -> TangleMetrics:
    j = sum(1 for l in t.links if l.convex)
    n = len(t.links)
    cls = n // 4 if t.tiling is L.SQUARE else None
    return TangleMetrics(n, j, n - j, None if p is None else p.size, cls)


def check_gauss_bonnet(t: Tangle) -> bool:
    m = metrics(t)
    return m.j - m.k == t.tiling.n


def bulb_sizes(t: Tangle) -> list[int]:
    """Sizes of maximal convex runs flanked by concave links (sorted)."""
    flags = [l.convex for l in t.links]
    if all(flags) or not any(flags):
        return []
    n = len(flags)
    first = flags.index(False)
    sizes, run = [], 0
    for i in range(1, n + 1):
        if flags[(first + i) % n]:
            run += 1
        else:
            if run:
                sizes.append(run)
            run = 0
    return sorted(sizes)


def _mul(a, b, c, d):
    # (a + b r3)(c + d r3)
    return a * c + 3 * b * d, a * d + b * c


def enclosed_area(t: Tangle) -> AreaValue:
    """Green's-theorem area: each arc contributes
    1/2 [cx (y2 - y1) - cy (x2 - x1)] + 1/2 * signed sweep."""
    if not t.is_closed():
        raise TangleError("area of a non-closed link sequence")
    ra = rb = 0
    for i, l in enumerate(t.links):
        c = l.center
        s, e = t.start2(i), t.end2(i)
        # doubled endpoints: contribution is 1/4 * (cx*dY - cy*dX)
        p1 = _mul(c[0], c[1], e[2] - s[2], e[3] - s[3])
        p2 = _mul(c[2], c[3], e[0] - s[0], e[1] - s[1])
        ra += p1[0] - p2[0]
        rb += p1[1] - p2[1]
    j = sum(1 for l in t.links if l.convex)
    k = len(t.links) - j
    # each link sweeps 2pi/n; half of that goes into the pi coefficient
    return AreaValue(QSqrt3(Fraction(ra, 4), Fraction(rb, 4)),
                     QSqrt3(Fraction(j - k, t.tiling.n), 0))


def formula_area(t: Tiling, m: int) -> AreaValue:
    t = L.get_tiling(t)
    if t is L.SQUARE:
        return AreaValue.of(4 * m, 0, 1)
    if t is L.HEXAGONAL:
        return AreaValue.of(0, 6 * m, 1)
    return AreaValue.of(0, m, 1)


# ------------------------------------------------------------------ simplicity

class Violation(NamedTuple):
    kind: str  # "gap", "cusp", "jump", "overlap", "touch"
    i: int
    j: int
    where: object

    def to_json(self) -> dict:
        w = self.where
        if isinstance(w, tuple) and len(w) == 4:
            w = [[str(Fraction(w[0], 2)), str(Fraction(w[1], 2))],
                 [str(Fraction(w[2], 2)), str(Fraction(w[3], 2))]]
        return {"kind": self.kind, "links": [self.i, self.j], "at": w}


@dataclass
class SimplicityReport:
    violations: list = field(default_factory=list)

    @property
    def simple(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.simple


def check_simple(t: Tangle) -> SimplicityReport:
    """Exact test that the link sequence is a smooth closed curve without
    self-contacts.  Arcs on circles further apart than 2 cannot meet; kissing
    circles can only share their kiss point; arcs on one circle are compared
    as direction intervals."""
    rep = SimplicityReport()
    links = t.links
    n = len(links)
    unit = t.tiling.unit
    if n == 0:
        rep.violations.append(Violation("gap", 0, 0, None))
        return rep

    for i in range(n):
        a, b = links[i], links[(i + 1) % n]
        if t.end2(i) != t.start2((i + 1) % n):
            rep.violations.append(Violation("gap", i, (i + 1) % n, t.end2(i)))
            continue
        if a.center == b.center:
            if a.convex != b.convex:
                rep.violations.append(Violation("cusp", i, (i + 1) % n, t.end2(i)))
        elif a.convex == b.convex:
            rep.violations.append(Violation("cusp", i, (i + 1) % n, t.end2(i)))

    spans = [l.span(unit) for l in links]
    by_center: dict = {}
    for i, l in enumerate(links):
        by_center.setdefault(l.center, []).append(i)

    def consecutive(i, j, d_i, d_j):
        # junction of i then j: end of i is start of j, at the contact point
        return ((i + 1) % n == j and links[i].end_dir(unit) == d_i and links[j].start_dir == d_j)

    def allowed(i, j, d_i, d_j):
        return consecutive(i, j, d_i, d_j) or consecutive(j, i, d_j, d_i)

    for c, idx in by_center.items():
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                i, j = idx[x], idx[y]
                common = spans[i] & spans[j]
                if len(common) >= 2:
                    rep.violations.append(Violation("overlap", i, j, c))
                elif common:
                    d = next(iter(common))
                    if not allowed(i, j, d, d):
                        rep.violations.append(Violation("touch", i, j, _double(c, d)))
        for k in range(12):
            other = L.vadd(c, DIRS[k])
            if other <= c or other not in by_center:
                continue
            back = (k + 6) % 12
            for i in idx:
                if k not in spans[i]:
                    continue
                for j in by_center[other]:
                    if back in spans[j] and not allowed(i, j, k, back):
                        rep.violations.append(Violation("touch", i, j, _double(c, k)))
    return rep


# ------------------------------------------------------------------ inverse

def dual_polyform(t: Tangle) -> DualPolyform:
    """Recover the dual polyform: convex centres black, concave white, cells
    flood-filled from the left side of every centre-to-centre transition."""
    links = t.links
    n = len(links)
    if n == 0 or not t.is_closed():
        raise TangleError("inconsistent arc data: not a closed link sequence")
    coloring: dict = {}
    for l in links:
        if coloring.setdefault(l.center, l.convex) != l.convex:
            raise TangleError("one circle carries both convex and concave links", l.center)
    if len(coloring) == 1:
        (v,) = coloring
        if not coloring[v] or n != t.tiling.n:
            raise TangleError("single-circle sequence is not a full convex circle", v)
        return DualPolyform.circle(t.tiling, v)

    tl = t.tiling
    bedges = set()
    for i in range(n):
        a, b = links[i].center, links[(i + 1) % n].center
        if a != b:
            L.direction(a, b)  # raises if the circles do not kiss
            bedges.add((a, b))
    undirected = bedges | {(b, a) for a, b in bedges}
    seeds = {L.left_cell(tl, a, b) for a, b in bedges}
    cells = set(seeds)
    stack = list(seeds)
    limit = 4 * n * n + 16
    while stack:
        c = stack.pop()
        for u, v in L.cell_edges(tl, c):
            if (u, v) in undirected:
                continue
            for d in L.edge_cells(tl, u, v):
                if d != c and d not in cells:
                    cells.add(d)
                    stack.append(d)
        if len(cells) > limit:
            raise TangleError("flood fill escaped: boundary is not closed")
    return DualPolyform(tl, frozenset(cells), coloring)
