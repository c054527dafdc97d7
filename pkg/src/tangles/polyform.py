"""Dual polyforms: a cell set of a regular tiling plus a black/white colouring
of its boundary vertices (black = interior circle, white = exterior circle).

Colours are stored as booleans, ``True`` for black.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from . import lattice as L
from .lattice import CellId, Tiling, VertexId

BLACK, WHITE = True, False


@dataclass(frozen=True, eq=False)
class DualPolyform:
    tiling: Tiling
    cells: frozenset
    coloring: Mapping[VertexId, bool]
    circle_vertex: VertexId | None = None

    def __post_init__(self):
        object.__setattr__(self, "tiling", L.get_tiling(self.tiling))
        object.__setattr__(self, "cells", frozenset(self.cells))
        object.__setattr__(self, "coloring", dict(self.coloring))

    @classmethod
    def circle(cls, tiling, v: VertexId) -> "DualPolyform":
        return cls(tiling, frozenset(), {v: BLACK}, v)

    @property
    def size(self) -> int:
        return len(self.cells)

    @property
    def is_circle(self) -> bool:
        return not self.cells

    def _key(self):
        return (self.tiling.tag, self.cells, frozenset(self.coloring.items()), self.circle_vertex)

    def __eq__(self, other):
        if not isinstance(other, DualPolyform):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"DualPolyform({self.tiling.tag}, cells={sorted(self.cells)}, "
                f"black={sorted(v for v, c in self.coloring.items() if c)}, "
                f"white={sorted(v for v, c in self.coloring.items() if not c)})")

    @cached_property
    def boundary_edges(self) -> frozenset:
        return boundary_edges(self.tiling, self.cells)

    @cached_property
    def boundary_vertices(self) -> frozenset:
        if self.is_circle:
            return frozenset([self.circle_vertex]) if self.circle_vertex is not None else frozenset()
        return frozenset(u for u, _ in self.boundary_edges)

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(v for c in self.cells for v in L.cell_vertices(self.tiling, c))

    def black(self) -> list[VertexId]:
        return sorted(v for v, c in self.coloring.items() if c)

    def white(self) -> list[VertexId]:
        return sorted(v for v, c in self.coloring.items() if not c)

    # -------------------------------------------------------------- json
    def to_json(self) -> dict:
        t = self.tiling
        out = {
            "tiling": t.tag,
            "cells": [L.cell_to_json(t, c) for c in sorted(self.cells)],
            "coloring": [[L.vertex_to_json(v), "B" if col else "W"]
                         for v, col in sorted(self.coloring.items())],
        }
        if self.is_circle:
            out["circle_vertex"] = L.vertex_to_json(self.circle_vertex)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "DualPolyform":
        t = L.get_tiling(obj["tiling"])
        cells = frozenset(L.cell_from_json(t, c) for c in obj["cells"])
        coloring = {}
        for v, col in obj.get("coloring", []):
            if col not in ("B", "W"):
                raise ValueError(f"bad colour {col!r}")
            coloring[L.vertex_from_json(t, v)] = col == "B"
        cv = obj.get("circle_vertex")
        cv = L.vertex_from_json(t, cv) if cv is not None else None
        if not cells and cv is None and len(coloring) == 1:
            cv = next(iter(coloring))
        return cls(t, cells, coloring, cv)


# ------------------------------------------------------------------ boundary

def boundary_edges(t: Tiling, cells: Iterable[CellId]) -> frozenset:
    """Directed boundary edges, interior on the left."""
    directed = set()
    for c in cells:
        directed.update(L.cell_edges(t, c))
    return frozenset(e for e in directed if (e[1], e[0]) not in directed)


class Visit(NamedTuple):
    vertex: VertexId
    prev: VertexId
    next: VertexId
    gap: int  # exterior angle between arrival and departure, 30-degree steps
    wedge: tuple  # cells of the interior sector entered on arrival


class BoundaryError(ValueError):
    pass


def _trace(t: Tiling, edges: frozenset) -> list[tuple[VertexId, VertexId]]:
    """Follow the boundary from its least edge.  At each vertex the walk pivots
    to the first boundary edge met turning counter-clockwise from the arrival
    edge, so a pinch vertex is left through the exterior gap it borders."""
    out: dict = {}
    for u, v in edges:
        out.setdefault(u, []).append(v)
    start = min(edges)
    seq = [start]
    e = start
    while True:
        u, v = e
        back = L.direction(v, u)
        w = min(out[v], key=lambda w: (L.direction(v, w) - back) % 12)
        e = (v, w)
        if e == start:
            break
        seq.append(e)
        if len(seq) > len(edges):
            raise BoundaryError("boundary walk does not close")
    if len(seq) != len(edges):
        raise BoundaryError("cell set has more than one boundary cycle (disconnected or holed)")
    return seq


def _sector(t: Tiling, c: CellId, v: VertexId) -> tuple[int, int]:
    vs = L.cell_vertices(t, c)
    i = vs.index(v)
    nxt, prv = vs[(i + 1) % len(vs)], vs[i - 1]
    return L.direction(v, nxt), L.direction(v, prv)


def walk_cells(t: Tiling, cells: frozenset) -> list[Visit]:
    edges = boundary_edges(t, cells)
    if not edges:
        return []
    seq = _trace(t, edges)
    dirs_at: dict = {}
    for u, v in edges:
        dirs_at.setdefault(u, []).append(L.direction(u, v))
        dirs_at.setdefault(v, []).append(L.direction(v, u))
    visits = []
    n = len(seq)
    for i in range(n):
        u, v = seq[i - 1]
        w = seq[i][1]
        th_u, th_w = L.direction(v, u), L.direction(v, w)
        # interior sector ends at the arrival edge; find where it starts
        th_x = min(dirs_at[v], key=lambda d: (th_u - d) % 12 or 12)
        span = (th_u - th_x) % 12 or 12
        wedge = tuple(sorted(
            c for c in L.incident_cells(t, v)
            if c in cells and (_sector(t, c, v)[0] - th_x) % 12 < span
        ))
        visits.append(Visit(v, u, w, (th_w - th_u) % 12, wedge))
    return visits


def boundary_walk(p: DualPolyform) -> list[Visit]:
    """Counter-clockwise boundary walk; empty for the circle."""
    if p.is_circle:
        return []
    return walk_cells(p.tiling, p.cells)


# ------------------------------------------------------------------ validity

def _connected(t: Tiling, cells, skip: VertexId | None = None) -> bool:
    cells = list(cells)
    if not cells:
        return True
    by_vertex: dict = {}
    for c in cells:
        for v in L.cell_vertices(t, c):
            if v != skip:
                by_vertex.setdefault(v, []).append(c)
    seen = {cells[0]}
    stack = [cells[0]]
    while stack:
        c = stack.pop()
        for v in L.cell_vertices(t, c):
            for d in by_vertex.get(v, ()):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
    return len(seen) == len(cells)


def _box(t: Tiling, cells) -> list[CellId]:
    lo_i = min(c[0] for c in cells) - 1
    hi_i = max(c[0] for c in cells) + 1
    lo_j = min(c[1] for c in cells) - 1
    hi_j = max(c[1] for c in cells) + 1
    if t is L.TRIANGULAR:
        return [(i, j, o) for i in range(lo_i, hi_i + 1) for j in range(lo_j, hi_j + 1) for o in (0, 1)]
    return [(i, j) for i in range(lo_i, hi_i + 1) for j in range(lo_j, hi_j + 1)]


def find_hole(t: Tiling, cells) -> CellId | None:
    """A complement cell enclosed by ``cells``, or None if simply connected."""
    if not cells:
        return None
    box = set(_box(t, cells))
    free = box - set(cells)
    seen = set()
    stack = []
    for c in free:
        if any(d not in box for d in L.edge_neighbors(t, c)):
            seen.add(c)
            stack.append(c)
    while stack:
        c = stack.pop()
        for d in L.edge_neighbors(t, c):
            if d in free and d not in seen:
                seen.add(d)
                stack.append(d)
    rest = free - seen
    return min(rest) if rest else None


def cut_vertices(p: DualPolyform) -> frozenset:
    """Vertices whose removal disconnects the cells (never on polyhexes)."""
    if p.is_circle:
        return frozenset()
    t = p.tiling
    outs: dict = {}
    for u, _ in p.boundary_edges:
        outs[u] = outs.get(u, 0) + 1
    return frozenset(v for v, k in outs.items() if k > 1 and not _connected(t, p.cells, skip=v))


class CheckResult(NamedTuple):
    ok: bool | None
    offender: object = None


CHECKS = ("V0", "V1", "V2", "V3", "V4", "V5", "domain")


@dataclass
class ValidityReport:
    checks: dict = field(default_factory=dict)
    simple: str = "not evaluated"

    @property
    def valid(self) -> bool:
        return all(r.ok for r in self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, r in self.checks.items() if not r.ok]

    def to_json(self) -> dict:
        out = {"valid": self.valid, "checks": {}, "simple": self.simple}
        for k, r in self.checks.items():
            entry = {"pass": bool(r.ok)}
            if r.offender is not None:
                entry["offender"] = _offender_json(r.offender)
            out["checks"][k] = entry
        return out


def _offender_json(x):
    if isinstance(x, tuple) and len(x) == 4 and all(isinstance(c, int) for c in x):
        return L.vertex_to_json(x)
    if isinstance(x, tuple) and len(x) == 2 and all(isinstance(c, tuple) and len(c) == 4 for c in x):
        return [L.vertex_to_json(v) for v in x]
    if isinstance(x, tuple):
        return list(x)
    return x


def validate(p: DualPolyform) -> ValidityReport:
    rep = ValidityReport()
    ck = rep.checks
    t = p.tiling
    col = p.coloring

    if p.is_circle:
        cv = p.circle_vertex
        ok = cv is not None and L.is_vertex(t, cv) and col == {cv: BLACK}
        ck["V0"] = CheckResult(ok, None if ok else cv)
        for k in CHECKS[1:]:
            ck[k] = CheckResult(ok)
        return rep

    ck["V0"] = CheckResult(True)
    ck["V1"] = CheckResult(_connected(t, p.cells))
    hole = find_hole(t, p.cells) if ck["V1"].ok else None
    ck["V2"] = CheckResult(ck["V1"].ok and hole is None, hole)

    bverts = p.boundary_vertices
    extra = set(col) - bverts
    missing = bverts - set(col)
    bad = min(extra | missing) if (extra or missing) else None
    ck["domain"] = CheckResult(bad is None, bad)

    white_cuts = sorted(v for v in cut_vertices(p) if col.get(v) is not BLACK)
    ck["V3"] = CheckResult(not white_cuts, white_cuts[0] if white_cuts else None)

    bad_edge = None
    for u, v in sorted(p.boundary_edges):
        if u in col and v in col and col[u] == col[v]:
            bad_edge = (u, v)
            break
    ck["V4"] = CheckResult(bad_edge is None, bad_edge)

    # interior edges (both sides in the polyform) may not join two white circles
    bad_edge = None
    whites = sorted(v for v, c in col.items() if not c)
    wset = set(whites)
    for u in whites:
        for w in L.vertex_neighbors(t, u):
            if w in wset and u < w and (u, w) not in p.boundary_edges and (w, u) not in p.boundary_edges:
                if all(c in p.cells for c in L.edge_cells(t, u, w)):
                    bad_edge = (u, w)
                    break
        if bad_edge:
            break
    ck["V5"] = CheckResult(bad_edge is None, bad_edge)
    return rep


def is_valid(p: DualPolyform) -> bool:
    return validate(p).valid


# ------------------------------------------------------------------ canonical form

def _encode(cells, coloring) -> bytes:
    return repr((sorted(cells), sorted(coloring.items()))).encode()


def canonicalize(p: DualPolyform, check: bool = True) -> tuple[bytes, DualPolyform]:
    """Least serialisation over the symmetry orbit, with the polyform that
    realises it."""
    if check:
        rep = validate(p)
        if not rep.valid:
            raise ValueError(f"cannot canonicalize invalid polyform: fails {rep.failures()}")
    best = None
    for cells, col in L.symmetry_images(p.tiling, p.cells, p.coloring):
        enc = _encode(cells, col)
        if best is None or enc < best[0]:
            best = (enc, cells, col)
    enc, cells, col = best
    cv = next(iter(col)) if not cells else None
    return enc, DualPolyform(p.tiling, cells, col, cv)


def canonical_key(p: DualPolyform) -> bytes:
    return canonicalize(p, check=False)[0]


# ------------------------------------------------------------------ square dual graph

def full_coloring(p: DualPolyform) -> dict:
    """Boundary colouring extended to every vertex by the bipartite rule."""
    if p.tiling is not L.SQUARE:
        raise ValueError("the forced interior colouring exists only for square polyforms")
    ref, refc = next(iter(p.coloring.items()))
    par = ((ref[0] + ref[2]) // 2) % 2
    verts = p.vertices or {ref}
    return {v: (((v[0] + v[2]) // 2) % 2 == par) == refc for v in verts}


def to_dual_graph(p: DualPolyform) -> tuple[frozenset, list]:
    """Black vertices and one edge per square joining its two black corners."""
    if p.tiling is not L.SQUARE:
        raise ValueError("dual graphs are defined for square polyforms only")
    col = full_coloring(p)
    nodes = frozenset(v for v, c in col.items() if c)
    edges = []
    for c in sorted(p.cells):
        b = [v for v in L.cell_vertices(p.tiling, c) if col[v]]
        edges.append(tuple(sorted(b)))
    return nodes, edges
