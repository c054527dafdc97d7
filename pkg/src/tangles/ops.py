"""Fundamental operations: adding one square or hexagon, or a pair of
triangles sharing a vertex, to the dual polyform.

After the cells are added the boundary colouring of the result is forced: the
colours must alternate along the new boundary walk, and vertices that stay on
the boundary keep their colour.  The only permitted exception is the middle
vertex of vampire teeth or a bowtie, which may switch from white to black.
An operation is applicable when its local pattern matches and the result is a
valid polyform whose curve is simple.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import lattice as L
from .lattice import CellId, Tiling, VertexId
from .polyform import (
    BLACK, BoundaryError, DualPolyform, _sector, validate, walk_cells,
)
from .tangle import build_tangle, check_simple

SQUARE_KINDS = ("SqInsert", "SqReduce")
HEX_KINDS = ("HexInsert", "HexReflect", "HexReduce")
TRI_KINDS = ("Tri4Insert", "Tri4Reduce", "Tri3Insert", "Tri3Reduce", "TriReflect")
KINDS = SQUARE_KINDS + HEX_KINDS + TRI_KINDS

# change in number of links
LENGTH_DELTA = {
    "SqInsert": 4, "SqReduce": -4,
    "HexInsert": 6, "HexReflect": 0, "HexReduce": -6,
    "Tri4Insert": 4, "Tri3Insert": 2, "TriReflect": 0, "Tri3Reduce": -2, "Tri4Reduce": -4,
}


class OpError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TangleOp:
    kind: str
    cells: tuple  # cells added, sorted
    anchor: tuple  # black vertices of the pre-state shared with the new cells

    def to_json(self, t: Tiling) -> dict:
        return {"kind": self.kind,
                "cells": [L.cell_to_json(t, c) for c in self.cells],
                "anchor": [L.vertex_to_json(v) for v in self.anchor]}

    @classmethod
    def from_json(cls, t: Tiling, obj: dict) -> "TangleOp":
        if obj["kind"] not in KINDS:
            raise ValueError(f"unknown operation kind {obj['kind']!r}")
        return cls(obj["kind"],
                   tuple(sorted(L.cell_from_json(t, c) for c in obj["cells"])),
                   tuple(sorted(L.vertex_from_json(t, v) for v in obj["anchor"])))


# ------------------------------------------------------------------ classification

def _black_in(p: DualPolyform, vs: Iterable[VertexId]) -> list[VertexId]:
    return sorted(v for v in vs if p.coloring.get(v) is BLACK)


def _pair_shape(t: Tiling, a: CellId, b: CellId):
    """Describe two triangles sharing at least a vertex.

    Returns ("diamond", shared_edge, tips), ("teeth", s, line_ends, tips),
    ("bowtie", s, a_others, b_others) or None."""
    va, vb = set(L.cell_vertices(t, a)), set(L.cell_vertices(t, b))
    shared = va & vb
    if len(shared) == 2:
        return ("diamond", tuple(sorted(shared)), ((va - shared).pop(), (vb - shared).pop()))
    if len(shared) != 1:
        return None
    (s,) = shared
    pa, pb = _sector(t, a, s)[0] // 2, _sector(t, b, s)[0] // 2
    gap = (pb - pa) % 6
    if gap == 3:
        return ("bowtie", s, tuple(sorted(va - shared)), tuple(sorted(vb - shared)))
    if gap == 4:
        a, b, pa, pb = b, a, pb, pa
    # a spans directions pa..pa+1, b spans pa+2..pa+3 (60-degree units)
    ends = (L.vadd(s, L.DIRS[2 * pa]), L.vadd(s, L.DIRS[(2 * pa + 6) % 12]))
    tips = (L.vadd(s, L.DIRS[(2 * pa + 2) % 12]), L.vadd(s, L.DIRS[(2 * pa + 4) % 12]))
    return ("teeth", s, ends, tips)


def classify(p: DualPolyform, cells: tuple):
    """Match the local pattern of adding ``cells`` to ``p``.

    Returns ``(kind, anchor, flip)`` where ``flip`` is the vertex allowed to
    turn from white to black, or None if no fundamental operation matches."""
    t = p.tiling
    if any(c in p.cells for c in cells):
        return None
    if t is not L.TRIANGULAR:
        if len(cells) != 1:
            return None
        anchor = tuple(_black_in(p, L.cell_vertices(t, cells[0])))
        kinds = SQUARE_KINDS if t is L.SQUARE else HEX_KINDS
        if 1 <= len(anchor) <= len(kinds):
            return kinds[len(anchor) - 1], anchor, None
        return None
    if len(cells) != 2:
        return None
    shape = _pair_shape(t, *cells)
    if shape is None:
        return None
    allv = set(L.cell_vertices(t, cells[0])) | set(L.cell_vertices(t, cells[1]))
    anchor = tuple(_black_in(p, allv))
    sa = set(anchor)
    if shape[0] == "diamond":
        _, edge, tips = shape
        if len(sa) == 1 and sa <= set(edge):
            return "Tri4Insert", anchor, None
        if sa == set(tips):
            return "Tri4Reduce", anchor, None
        return None
    if shape[0] == "teeth":
        _, s, ends, tips = shape
        if sa == set(tips):
            return "Tri3Insert", anchor, s
        if sa == set(ends):
            return "Tri3Reduce", anchor, s
        return None
    _, s, aa, bb = shape
    if len(sa) == 2 and s not in sa and sa & set(aa) and sa & set(bb):
        return "TriReflect", anchor, s
    return None


# ------------------------------------------------------------------ forced colouring

def _alternating(visits):
    """The two alternating colourings of a boundary walk (fewer if the walk
    cannot be two-coloured consistently)."""
    if len(visits) % 2:
        return []
    out = []
    for phase in (BLACK, not BLACK):
        col: dict = {}
        ok = True
        for i, vis in enumerate(visits):
            c = phase if i % 2 == 0 else not phase
            if col.setdefault(vis.vertex, c) != c:
                ok = False
                break
        if ok:
            out.append(col)
    return out


def forced_coloring(t: Tiling, cells: frozenset, old: dict, flip: VertexId | None):
    """Alternating colouring of ``cells`` that agrees with ``old`` on retained
    vertices, except that ``flip`` may go from white to black."""
    try:
        visits = walk_cells(t, cells)
    except BoundaryError:
        return None
    for col in _alternating(visits):
        good = True
        for v, c in col.items():
            if v in old and old[v] != c:
                if not (v == flip and old[v] is not BLACK and c is BLACK):
                    good = False
                    break
        if good:
            return col
    return None


def _outcome(p: DualPolyform, cells: tuple, flip) -> DualPolyform | None:
    new_cells = p.cells | set(cells)
    col = forced_coloring(p.tiling, new_cells, p.coloring, flip)
    if col is None:
        return None
    q = DualPolyform(p.tiling, new_cells, col)
    if not validate(q).valid:
        return None
    if not check_simple(build_tangle(q, check=False)).simple:
        return None
    return q


# ------------------------------------------------------------------ applicability

def _candidates(p: DualPolyform) -> list[tuple]:
    t = p.tiling
    near = set()
    for v in p.black():
        for c in L.incident_cells(t, v):
            if c not in p.cells:
                near.add(c)
    if t is not L.TRIANGULAR:
        return [(c,) for c in sorted(near)]
    near = sorted(near)
    verts = {c: set(L.cell_vertices(t, c)) for c in near}
    return [(a, b) for i, a in enumerate(near) for b in near[i + 1:] if verts[a] & verts[b]]


def expand(p: DualPolyform) -> list[tuple[TangleOp, DualPolyform]]:
    """Every applicable operation together with its result."""
    out = []
    for cells in _candidates(p):
        m = classify(p, cells)
        if m is None:
            continue
        kind, anchor, flip = m
        q = _outcome(p, cells, flip)
        if q is not None:
            out.append((TangleOp(kind, cells, anchor), q))
    return out


def applicable_ops(p: DualPolyform) -> list[TangleOp]:
    if not validate(p).valid:
        raise OpError("operations are defined on valid polyforms only")
    return [op for op, _ in expand(p)]


def apply(p: DualPolyform, op: TangleOp) -> DualPolyform:
    cells = tuple(sorted(op.cells))
    m = classify(p, cells)
    if m is None or m[0] != op.kind or tuple(m[1]) != tuple(op.anchor):
        raise OpError(f"{op.kind} does not match the local pattern at {cells}")
    q = _outcome(p, cells, m[2])
    if q is None:
        raise OpError(f"{op.kind} at {cells} does not yield a valid Tangle")
    return q


# ------------------------------------------------------------------ construction sequences

@dataclass(frozen=True)
class OpSequence:
    tiling: Tiling
    start: VertexId
    steps: tuple

    def to_json(self) -> dict:
        return {"tiling": self.tiling.tag, "start": L.vertex_to_json(self.start),
                "steps": [op.to_json(self.tiling) for op in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> "OpSequence":
        t = L.get_tiling(obj["tiling"])
        return cls(t, L.vertex_from_json(t, obj["start"]),
                   tuple(TangleOp.from_json(t, s) for s in obj["steps"]))


class ReplayError(OpError):
    def __init__(self, index: int, msg: str):
        super().__init__(f"step {index}: {msg}")
        self.index = index


class DeconstructionError(OpError):
    def __init__(self, residual: DualPolyform):
        super().__init__(f"no removable piece found in {residual!r}")
        self.residual = residual


def replay(seq: OpSequence) -> DualPolyform:
    cur = DualPolyform.circle(seq.tiling, seq.start)
    for i, op in enumerate(seq.steps):
        try:
            cur = apply(cur, op)
        except OpError as e:
            raise ReplayError(i, str(e)) from None
    return cur


def _predecessors(q: DualPolyform, removed: tuple):
    """Candidate pre-states from which adding ``removed`` could give ``q``."""
    t = q.tiling
    rest = q.cells - set(removed)
    if not rest:
        vs = sorted({v for c in removed for v in L.cell_vertices(t, c)})
        return [DualPolyform.circle(t, v) for v in vs if q.coloring.get(v) is BLACK]
    try:
        visits = walk_cells(t, rest)
    except BoundaryError:
        return []
    out = []
    for col in _alternating(visits):
        changed = [v for v, c in col.items() if v in q.coloring and q.coloring[v] != c]
        if not changed or (t is L.TRIANGULAR and len(changed) == 1
                           and q.coloring[changed[0]] is BLACK):
            out.append(DualPolyform(t, rest, col))
    return out


def _undo(q: DualPolyform, removed: tuple):
    removed = tuple(sorted(removed))
    for p in _predecessors(q, removed):
        m = classify(p, removed)
        if m is None:
            continue
        if not validate(p).valid or not check_simple(build_tangle(p, check=False)).simple:
            continue
        if _outcome(p, removed, m[2]) == q:
            return p, TangleOp(m[0], removed, m[1])
    return None


def _spanning_leaves(q: DualPolyform) -> list[CellId]:
    """Leaves of a BFS spanning tree of the cell graph in which two cells are
    adjacent when they share a black boundary vertex or an interior vertex."""
    t = q.tiling
    cells = sorted(q.cells)
    link_vertices = {v for v in q.vertices if q.coloring.get(v, BLACK) is BLACK}
    by_vertex: dict = {}
    for c in cells:
        for v in L.cell_vertices(t, c):
            if v in link_vertices:
                by_vertex.setdefault(v, []).append(c)
    root = cells[0]
    parent = {root: None}
    order = [root]
    for c in order:
        for v in L.cell_vertices(t, c):
            for d in by_vertex.get(v, ()):
                if d not in parent:
                    parent[d] = c
                    order.append(d)
    has_child = {p for p in parent.values() if p is not None}
    leaves = [c for c in order if c not in has_child]
    return sorted(leaves)


def _bulb_pairs(q: DualPolyform) -> list[tuple]:
    """Triangle pairs that would undo a 4-, 3- or 2-bulb, largest bulbs first,
    scanning bulbs in link order."""
    t = q.tiling
    tangle = build_tangle(q, check=False)
    links = tangle.links
    n = len(links)
    if all(l.convex for l in links):
        return []
    first = next(i for i, l in enumerate(links) if not l.convex)
    runs = []
    i = 0
    while i < n:
        l = links[(first + i) % n]
        if l.convex:
            j = i
            while j < n and links[(first + j) % n].convex:
                j += 1
            runs.append((j - i, l.center))
            i = j
        else:
            i += 1
    out = []
    for size in (4, 3, 2):
        for k, v in runs:
            if k != size:
                continue
            around = [c for c in L.incident_cells(t, v) if c in q.cells]
            if len(around) != 6 - size:
                continue
            # order the wedge counter-clockwise; the pair is its two ends
            start = {c: _sector(t, c, v)[0] for c in around}
            ordered = _ccw_wedge(around, start)
            out.append((ordered[0], ordered[-1]))
    return out


def _ccw_wedge(cells, start):
    """Sort a contiguous wedge of cells around a vertex counter-clockwise."""
    starts = set(start.values())
    # the first cell is the one whose clockwise neighbour slot is empty
    for c in cells:
        if (start[c] - 2) % 12 not in starts:
            s0 = start[c]
            return sorted(cells, key=lambda x: (start[x] - s0) % 12)
    return sorted(cells, key=lambda x: start[x])


def _removal_candidates(q: DualPolyform) -> list[tuple]:
    t = q.tiling
    cells = sorted(q.cells)
    if t is not L.TRIANGULAR:
        leaves = _spanning_leaves(q)
        return [(c,) for c in leaves] + [(c,) for c in cells if c not in leaves]
    seen = set()
    out = []
    for pair in _bulb_pairs(q):
        pair = tuple(sorted(pair))
        if pair not in seen:
            seen.add(pair)
            out.append(pair)
    verts = {c: set(L.cell_vertices(t, c)) for c in cells}
    for i, a in enumerate(cells):
        for b in cells[i + 1:]:
            if (a, b) not in seen and verts[a] & verts[b]:
                seen.add((a, b))
                out.append((a, b))
    return out


def undo_step(q: DualPolyform):
    """One deconstruction step: ``(pre_state, op)`` with ``apply(pre_state, op) == q``."""
    for removed in _removal_candidates(q):
        found = _undo(q, removed)
        if found is not None:
            return found
    return None


def deconstruct(p: DualPolyform) -> OpSequence:
    """Peel ``p`` back to a circle; the reversed peel is a construction."""
    if not validate(p).valid:
        raise OpError("cannot deconstruct an invalid polyform")
    steps = []
    cur = p
    while not cur.is_circle:
        found = undo_step(cur)
        if found is None:
            raise DeconstructionError(cur)
        cur, op = found
        steps.append(op)
    return OpSequence(p.tiling, cur.circle_vertex, tuple(reversed(steps)))


# ------------------------------------------------------------------ square reflection

def square_reflection(p: DualPolyform, first: CellId, second: CellId) -> tuple[list[TangleOp], DualPolyform]:
    """Turn an inverted 2-bulb into a 2-bulb by attaching a domino: a shear
    insertion on ``first`` followed by a shear reduction on ``second``.  Not a
    primitive; returns the two expanded operations and the result."""
    if p.tiling is not L.SQUARE:
        raise OpError("reflection macro is defined for square Tangles")
    m1 = classify(p, (first,))
    if m1 is None or m1[0] != "SqInsert":
        raise OpError("first square must be a shear insertion")
    op1 = TangleOp(m1[0], (first,), m1[1])
    mid = apply(p, op1)
    m2 = classify(mid, (second,))
    if m2 is None or m2[0] != "SqReduce":
        raise OpError("second square must be a shear reduction")
    op2 = TangleOp(m2[0], (second,), m2[1])
    return [op1, op2], apply(mid, op2)
