from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.trees import (LEAF, GaugedTree, RibbonTree, arity, canonical_orientation, cell_dimension,
                          enumerate_trees, gauged_boundary, gauged_types, generator, key_of,
                          mu_compose, n_edges, node_of, realise, shape_from_json, shape_to_json,
                          shapes, srt_boundary, status_valid, vertex_paths)

gauged = st.integers(2, 4).flatmap(lambda m: st.sampled_from(enumerate_trees("SCRT", m)))
plain = st.integers(2, 5).flatmap(lambda m: st.sampled_from(shapes(m)))


def test_shape_counts():
    assert [len(shapes(m)) for m in range(1, 7)] == [1, 1, 3, 11, 45, 197]
    assert [len(shapes(m, binary=True)) for m in range(1, 7)] == [1, 1, 2, 5, 14, 42]


def test_gauged_counts():
    # faces of the multiplihedra J_2, J_3 and vertices of J_m
    assert [len(enumerate_trees("SCRT", m)) for m in (1, 2, 3)] == [1, 3, 13]
    assert [len(enumerate_trees("CBRT", m)) for m in range(1, 6)] == [1, 2, 6, 21, 80]


@pytest.mark.parametrize("m", range(2, 6))
def test_top_trees_have_top_dimension(m):
    assert all(cell_dimension(t) == m - 1 for t in enumerate_trees("CBRT", m))


@given(plain)
def test_shape_json_round_trip(t):
    assert shape_from_json(shape_to_json(t)) == t
    assert RibbonTree(t).degree() == -n_edges(t)


@given(gauged)
def test_gauged_json_and_heights(t):
    assert GaugedTree.from_json(t.to_json()) == t
    if t.trivial:
        return
    h = realise(t.shape, t.status)
    for p, s in zip(vertex_paths(t.shape), t.status):
        assert (h[p] > 0) == (s == "a") and (h[p] == 0) == (s == "o")
    assert t.degree() == t.j - 1 - t.e


def test_invalid_statuses():
    t = ((), ())
    assert not status_valid(t, ("x",))
    bad = (((), ()), ())
    assert not status_valid(bad, ("a", "b"))
    assert not status_valid(bad, ("o", "o"))
    with pytest.raises(ValueError):
        GaugedTree(bad, ("a", "o"))
    with pytest.raises(ValueError):
        shape_from_json([[]])


def test_gauged_types_of_a_corolla():
    assert sorted(g.status for g in gauged_types(((), (), ()))) == [("a",), ("b",), ("o",)]


@settings(deadline=None)
@given(gauged)
def test_structural_keys_round_trip(t):
    node, _ = generator((0, 1), t)
    assert key_of(node_of(key_of(node))[0]) == key_of(node)


@given(plain)
def test_plain_boundary_has_two_moves_per_edge(t):
    moves = srt_boundary(t)
    assert len(moves) == 2 * n_edges(t)
    assert len(canonical_orientation(RibbonTree(t))) == n_edges(t)


def test_corolla_boundary():
    # the interval J_2: both 1-cells end on the o-corolla, with opposite signs
    above = gauged_boundary(GaugedTree(((), ()), ("a",)))
    below = gauged_boundary(GaugedTree(((), ()), ("b",)))
    assert sorted(m.kind for m in above) == ["above-break", "gauge-vertex-B"]
    assert sorted(m.kind for m in below) == ["below-break", "gauge-vertex-A"]
    on = [key_of(m.node) for m in above + below if m.kind.startswith("gauge")]
    assert on[0] == on[1]
    assert sum(m.sign for m in above + below if m.kind.startswith("gauge")) == 0
    assert gauged_boundary(GaugedTree(((), ()), ("o",))) == []
    assert gauged_boundary(GaugedTree(LEAF, ())) == []


def test_gauged_boundary_rejects_bad_orders():
    t = GaugedTree((((), ()), ()), ("b", "a"))
    with pytest.raises(ValueError):
        gauged_boundary(t, order=[1])


def test_mu_compose_arity():
    pieces = [GaugedTree(((), ()), ("o",)), GaugedTree(LEAF, ())]
    node = mu_compose(((), ()), pieces)
    assert node is not None
    with pytest.raises(ValueError):
        mu_compose(((), ()), pieces[:1])
    assert arity(((), (), ())) == 3
