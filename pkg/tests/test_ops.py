from collections import Counter
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from tangles import fixtures as F, lattice as L
from tangles.enumeration import enumerate_by_ops
from tangles.ops import (
    KINDS, LENGTH_DELTA, OpError, OpSequence, ReplayError, TangleOp, applicable_ops, apply,
    deconstruct, expand, replay, square_reflection,
)
from tangles.polyform import DualPolyform, canonical_key, validate
from tangles.tangle import build_tangle, check_simple, metrics

from conftest import all_small


def length(p):
    return len(build_tangle(p).links)


def test_square_circle_ops():
    ops = applicable_ops(F.circle(L.SQUARE))
    assert [op.kind for op in ops] == ["SqInsert"] * 4
    assert sorted(op.cells[0] for op in ops) == sorted(L.incident_cells(L.SQUARE, (0, 0, 0, 0)))


def test_hex_circle_ops():
    ops = applicable_ops(F.circle(L.HEXAGONAL))
    assert [op.kind for op in ops] == ["HexInsert"] * 3


def test_triangular_circle_ops():
    # one diamond per triangular edge leaving the circle's vertex
    ops = applicable_ops(F.circle(L.TRIANGULAR))
    assert Counter(op.kind for op in ops) == {"Tri4Insert": 6}
    assert all(length(apply(F.circle(L.TRIANGULAR), op)) == 10 for op in ops)


def test_sq_insert_on_circle():
    c = F.circle(L.SQUARE)
    q = apply(c, applicable_ops(c)[0])
    assert (length(c), length(q)) == (4, 8)
    assert q.size == 1


def test_hex_reflection_flips_inverted_bulb():
    p = F.hex_reflect_prestate()
    ops = [op for op in applicable_ops(p) if op.kind == "HexReflect"]
    assert len(ops) == 1
    op = ops[0]
    assert op.cells == ((0, 0),)
    assert set(op.anchor) == {(2, 0, 0, 0), (-1, 0, 0, -1)}
    q = apply(p, op)
    assert length(q) == length(p)
    tp, tq = build_tangle(p), build_tangle(q)
    white = (1, 0, 0, -1)
    # before: two concave links at the shared white vertex; after it is interior
    assert [l.convex for l in tp.links if l.center == white] == [False, False]
    assert white not in q.coloring
    # after: the vertex opposite, at the top of the new hexagon, carries two convex links
    top = (-1, 0, 0, 1)
    assert [l.convex for l in tq.links if l.center == top] == [True, True]


def test_apply_rejects_mismatch():
    c = F.circle(L.SQUARE)
    with pytest.raises(OpError):
        apply(c, TangleOp("SqReduce", ((0, 0),), ((0, 0, 0, 0),)))
    with pytest.raises(OpError):
        apply(c, TangleOp("SqInsert", ((5, 5),), ()))
    with pytest.raises(OpError):
        applicable_ops(F.white_cut_pair())


def test_deconstruct_examples():
    seq = deconstruct(F.single_square())
    assert [op.kind for op in seq.steps] == ["SqInsert"]
    seq = deconstruct(F.square_block())
    assert len(seq.steps) == 4
    assert canonical_key(replay(seq)) == canonical_key(F.square_block())


def test_fan_deconstructs_without_reflection():
    seq = deconstruct(F.triangle_fan())
    assert len(seq.steps) == 2
    assert "TriReflect" not in [op.kind for op in seq.steps]
    assert replay(seq) == F.triangle_fan()


def test_replay_empty_and_errors():
    seq = OpSequence(L.SQUARE, (0, 0, 0, 0), ())
    assert replay(seq) == F.circle(L.SQUARE)
    bad = OpSequence(L.SQUARE, (0, 0, 0, 0), (TangleOp("SqInsert", ((0, 0),), ((0, 0, 0, 0),)),
                                                TangleOp("SqReduce", ((9, 9),), ())))
    with pytest.raises(ReplayError) as e:
        replay(bad)
    assert e.value.index == 1


def test_ops_json_round_trip():
    seq = deconstruct(F.triangle_fan())
    assert OpSequence.from_json(seq.to_json()) == seq
    obj = seq.to_json()
    obj["steps"][0]["kind"] = "Bogus"
    with pytest.raises(ValueError):
        OpSequence.from_json(obj)


def test_square_reflection_macro_matches_replay():
    pre = F.square_reflection_prestate()
    ops, direct = square_reflection(pre, (0, -2), (1, -2))
    assert [op.kind for op in ops] == ["SqInsert", "SqReduce"]
    assert length(direct) == length(pre)
    # build the pre-state from the circle, then the macro's two steps
    head = deconstruct(pre)
    assert [op.kind for op in head.steps] == ["SqInsert", "SqInsert"]
    seq = OpSequence(L.SQUARE, head.start, head.steps + tuple(ops))
    assert replay(seq) == direct
    with pytest.raises(OpError):
        square_reflection(pre, (0, 0), (1, 0))


@lru_cache(maxsize=None)
def big_triangular():
    return enumerate_by_ops(L.TRIANGULAR, 12)


def test_every_kind_occurs_with_its_delta():
    seen = {}
    for t, m in [(L.SQUARE, 5), (L.HEXAGONAL, 5)]:
        seen.update(enumerate_by_ops(t, m).deltas)
    seen.update(big_triangular().deltas)
    assert set(seen) == set(KINDS)
    for kind, deltas in seen.items():
        assert set(deltas) == {LENGTH_DELTA[kind]}, kind


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_small()))
def test_ops_preserve_validity_and_bookkeeping(p):
    step = 2 if p.tiling is L.TRIANGULAR else 1
    base = length(p)
    for op, q in expand(p):
        assert validate(q).valid
        assert check_simple(build_tangle(q)).simple
        assert q.size == p.size + step
        assert length(q) - base == LENGTH_DELTA[op.kind]
        assert apply(p, op) == q
        assert set(op.cells).isdisjoint(p.cells)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_small()))
def test_deconstruct_round_trip(p):
    seq = deconstruct(p)
    assert replay(seq) == p
    step = 2 if p.tiling is L.TRIANGULAR else 1
    assert len(seq.steps) * step == p.size
    # every prefix is valid
    cur = DualPolyform.circle(p.tiling, seq.start)
    for op in seq.steps:
        cur = apply(cur, op)
        assert validate(cur).valid


def test_deconstruct_large_triangular():
    table = big_triangular()
    for p in table.levels[12][::15]:
        assert replay(deconstruct(p[1])) == p[1]
