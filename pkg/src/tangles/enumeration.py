"""Exhaustive enumeration of Tangles up to symmetry.

Two unrelated generators are provided.  ``enumerate_by_ops`` grows the
operation closure of the circle breadth first, deduplicating canonical forms
at every level.  ``enumerate_oracle`` knows nothing about operations: it grows
fixed cell sets, two-colours their boundary edges, and keeps what passes the
validity and simplicity checks.  The two must agree.
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import lattice as L
from .lattice import Tiling
from .ops import deconstruct, expand, replay
from .polyform import BLACK, DualPolyform, canonicalize, validate
from .tangle import (
    build_tangle, check_gauss_bonnet, check_simple, enclosed_area, formula_area, metrics,
)

ORIGIN = (0, 0, 0, 0)
HEX_ORIGIN = (2, 0, 0, 0)


class BudgetExceeded(RuntimeError):
    pass


def start_vertex(t: Tiling) -> tuple:
    return HEX_ORIGIN if t is L.HEXAGONAL else ORIGIN


def size_step(t: Tiling) -> int:
    return 2 if t is L.TRIANGULAR else 1


@dataclass
class EnumerationTable:
    tiling: Tiling
    provenance: str
    levels: dict = field(default_factory=dict)  # size -> sorted list of (key, polyform)
    incomplete: bool = False
    deltas: dict = field(default_factory=dict)  # kind -> Counter(delta -> count)

    @property
    def counts(self) -> dict:
        return {m: len(v) for m, v in sorted(self.levels.items())}

    def keys(self, size: int) -> list[bytes]:
        return [k for k, _ in self.levels.get(size, [])]

    def instances(self):
        for m in sorted(self.levels):
            for _, p in self.levels[m]:
                yield p

    def summary(self) -> dict:
        out = {"tiling": self.tiling.tag, "provenance": self.provenance,
               "counts": {str(m): c for m, c in self.counts.items()},
               "total": sum(self.counts.values()), "incomplete": self.incomplete}
        if self.deltas:
            out["op_deltas"] = {k: {str(d): n for d, n in sorted(c.items())}
                                for k, c in sorted(self.deltas.items())}
        return out

    def jsonl_lines(self):
        for p in self.instances():
            tg = build_tangle(p, check=False)
            m = metrics(tg, p)
            rec = {"tiling": self.tiling.tag, "size": p.size, "length": m.length}
            if m.cls is not None:
                rec["class"] = m.cls
            rec.update({"j": m.j, "k": m.k, "area": enclosed_area(tg).to_json(),
                        "polyform": p.to_json()})
            yield json.dumps(rec, sort_keys=True, ensure_ascii=False)


# ------------------------------------------------------------------ op closure

def _link_count(p: DualPolyform) -> int:
    return len(build_tangle(p, check=False).links)


def _expand_one(p: DualPolyform):
    """Canonical children of one frontier entry, with observed length deltas."""
    base = _link_count(p)
    kids, deltas = [], []
    for op, q in expand(p):
        key, cq = canonicalize(q, check=False)
        kids.append((key, cq))
        deltas.append((op.kind, _link_count(q) - base))
    return kids, deltas


def _map(fn, items, threads: int):
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (threads * 4))
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def enumerate_by_ops(t, max_size: int, threads: int = 1, budget: int | None = None) -> EnumerationTable:
    """Breadth-first closure of the circle under the fundamental operations."""
    t = L.get_tiling(t)
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    table = EnumerationTable(t, "op-closure")
    circle_key, circle = canonicalize(DualPolyform.circle(t, start_vertex(t)))
    table.levels[0] = [(circle_key, circle)]
    step = size_step(t)
    frontier = [circle]
    total = 1
    m = 0
    while frontier and m + step <= max_size:
        found: dict = {}
        for kids, deltas in _map(_expand_one, frontier, threads):
            for key, q in kids:
                found.setdefault(key, q)
            for kind, d in deltas:
                table.deltas.setdefault(kind, Counter())[d] += 1
        m += step
        level = sorted(found.items())
        total += len(level)
        if budget is not None and total > budget:
            table.levels[m] = level[: max(0, budget - (total - len(level)))]
            table.incomplete = True
            break
        table.levels[m] = level
        frontier = [q for _, q in level]
    for s in range(max_size + 1):
        table.levels.setdefault(s, [])
    table.levels = dict(sorted(table.levels.items()))
    return table


# ------------------------------------------------------------------ independent oracle

def _contact_neighbors(t: Tiling, c) -> set:
    if t is L.HEXAGONAL:
        return set(L.edge_neighbors(t, c))
    out = set()
    for v in L.cell_vertices(t, c):
        out.update(L.incident_cells(t, v))
    out.discard(c)
    return out


def _normalize(t: Tiling, cells) -> tuple:
    """Translate a fixed cell set so its least cell has zero offset."""
    lo = min(cells)
    di, dj = lo[0], lo[1]
    return tuple(sorted((c[0] - di, c[1] - dj) + tuple(c[2:]) for c in cells))


def fixed_shapes(t, size: int, budget: int | None = None) -> list[tuple]:
    """All connected cell sets of ``size`` cells up to translation."""
    t = L.get_tiling(t)
    if size <= 0:
        return []
    seeds = [(0, 0)] if t is not L.TRIANGULAR else [(0, 0, L.UP), (0, 0, L.DOWN)]
    level = {_normalize(t, [s]) for s in seeds}
    for _ in range(size - 1):
        nxt = set()
        for shape in level:
            cur = set(shape)
            for c in shape:
                for d in _contact_neighbors(t, c):
                    if d not in cur:
                        nxt.add(_normalize(t, cur | {d}))
            if budget is not None and len(nxt) > budget:
                raise BudgetExceeded(f"more than {budget} fixed shapes of size {size}")
        level = nxt
    return sorted(level)


def _boundary_colorings(t: Tiling, cells: frozenset):
    """Colourings of the boundary vertices in which the two ends of every
    boundary edge differ (a smooth curve cannot join two links of equal
    curvature at a kiss point).  Enumerated by backtracking."""
    count: Counter = Counter()
    for c in cells:
        for u, v in L.cell_edges(t, c):
            count[(min(u, v), max(u, v))] += 1
    bedges = [e for e, n in count.items() if n == 1]
    adj: dict = {}
    for u, v in bedges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    verts = sorted(adj)
    results = []
    col: dict = {}

    def rec(i):
        if i == len(verts):
            results.append(dict(col))
            return
        v = verts[i]
        for c in (BLACK, not BLACK):
            if all(col.get(w) != c for w in adj[v]):
                col[v] = c
                rec(i + 1)
                del col[v]

    rec(0)
    return results


def _oracle_shape(args):
    t, shape = args
    t = L.get_tiling(t)
    cells = frozenset(shape)
    out = []
    for col in _boundary_colorings(t, cells):
        p = DualPolyform(t, cells, col)
        if not validate(p).valid:
            continue
        if not check_simple(build_tangle(p, check=False)).simple:
            continue
        out.append(canonicalize(p, check=False))
    return out


def enumerate_oracle(t, size: int, threads: int = 1, budget: int | None = 200000) -> EnumerationTable:
    """Brute-force canonical set of Tangles of exactly ``size`` cells."""
    t = L.get_tiling(t)
    table = EnumerationTable(t, "oracle")
    if size == 0:
        vs = [start_vertex(t)] if t is not L.HEXAGONAL else [(2, 0, 0, 0), (-2, 0, 0, 0)]
        found = dict(canonicalize(DualPolyform.circle(t, v)) for v in vs)
        table.levels[0] = sorted(found.items())
        return table
    shapes = fixed_shapes(t, size, budget)
    found: dict = {}
    for res in _map(_oracle_shape, [(t.tag, s) for s in shapes], threads):
        for key, q in res:
            found.setdefault(key, q)
    table.levels[size] = sorted(found.items())
    return table


# ------------------------------------------------------------------ corollary battery

CHECK_NAMES = ("valid", "gauss_bonnet", "length_congruence", "area_formula", "simple", "round_trip")


def length_ok(t: Tiling, length: int) -> bool:
    if t is L.SQUARE:
        return length % 4 == 0
    if t is L.HEXAGONAL:
        return length % 6 == 3
    return length % 2 == 0


def check_instance(p: DualPolyform) -> dict:
    t = p.tiling
    res = dict.fromkeys(CHECK_NAMES, False)
    res["valid"] = validate(p).valid
    if not res["valid"]:
        return res
    tg = build_tangle(p, check=False)
    m = metrics(tg, p)
    res["gauss_bonnet"] = check_gauss_bonnet(tg)
    res["length_congruence"] = length_ok(t, m.length)
    res["area_formula"] = enclosed_area(tg) == formula_area(t, p.size)
    res["simple"] = check_simple(tg).simple
    try:
        q = replay(deconstruct(p))
        res["round_trip"] = canonicalize(q, check=False)[0] == canonicalize(p, check=False)[0]
    except Exception:
        res["round_trip"] = False
    return res


@dataclass
class VerificationReport:
    tiling: Tiling
    max_size: int
    results: list = field(default_factory=list)  # (size, key, {check: bool})

    @property
    def counters(self) -> dict:
        out = {name: {"pass": 0, "fail": 0} for name in CHECK_NAMES}
        for _, _, r in self.results:
            for name in CHECK_NAMES:
                out[name]["pass" if r[name] else "fail"] += 1
        return out

    @property
    def all_pass(self) -> bool:
        return all(all(r.values()) for _, _, r in self.results)

    def failures(self) -> list:
        return [(m, k, [n for n in CHECK_NAMES if not r[n]]) for m, k, r in self.results
                if not all(r.values())]

    def to_json(self) -> dict:
        return {"tiling": self.tiling.tag, "max_size": self.max_size,
                "instances": len(self.results), "all_pass": self.all_pass,
                "counters": self.counters,
                "failures": [{"size": m, "key": k.decode(), "checks": c}
                             for m, k, c in self.failures()]}


def _check_entry(entry):
    m, key, p = entry
    return m, key, check_instance(p)


def verify_corollaries(t, max_size: int, table: EnumerationTable | None = None,
                       threads: int = 1) -> VerificationReport:
    t = L.get_tiling(t)
    if table is None:
        table = enumerate_by_ops(t, max_size, threads=threads)
    entries = [(m, k, p) for m, lvl in sorted(table.levels.items()) if m <= max_size for k, p in lvl]
    rep = VerificationReport(t, max_size)
    rep.results = _map(_check_entry, entries, threads)
    return rep
