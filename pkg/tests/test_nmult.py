from __future__ import annotations

import json

import pytest

from nmorph.nmult import (COARSE, FINE, audit, codim1_coarse, coarse_boundary, coarse_top, export,
                          facet_pullback, forcey_loday_pattern, monotone, monotone_sequences,
                          prop_top_boundary, refinement_check)

SMALL = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 2)]


@pytest.mark.parametrize("n,m", SMALL)
@pytest.mark.parametrize("dec", [COARSE, FINE])
def test_complexes_are_balls(n, m, dec):
    a = audit(n, m, dec)
    assert a["d_squared_zero"] and a["closed"] and a["euler"] == 1
    assert a["top_cells"] >= 1 and len(a["f_vector"]) == n + m


def test_known_f_vectors():
    assert audit(0, 2, COARSE)["f_vector"] == [2, 1]
    assert audit(0, 3, COARSE)["f_vector"] == [6, 6, 1]
    assert audit(2, 2, COARSE)["f_vector"] == [9, 14, 7, 1]
    assert audit(2, 2, FINE)["f_vector"] == [12, 20, 11, 2]


def test_two_j_two_has_seven_facets():
    assert len(codim1_coarse(2, 2)) == 7
    # three simplicial facets refine into two fine cells each
    assert sorted(facet_pullback(2, 2).values()) == [1, 1, 1, 1, 2, 2, 2]


@pytest.mark.parametrize("n,m", [(0, 2), (0, 3), (1, 2), (1, 3), (2, 2)])
def test_top_boundary_formula(n, m):
    assert coarse_boundary(coarse_top(n, m)) == prop_top_boundary(n, m)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_classical_multiplihedron_signs(m):
    assert forcey_loday_pattern(m) == prop_top_boundary(0, m)
    assert all(type(v) is int for v in forcey_loday_pattern(m).values())


@pytest.mark.parametrize("n,m", [(0, 3), (1, 2), (2, 2)])
def test_refinement(n, m):
    r = refinement_check(n, m)
    assert r["ok"] and r["surjective"]


def test_monotone_sequences():
    seqs = list(monotone_sequences(2, 2))
    assert all(monotone(s) for s in seqs)
    assert ((0, 1), (1, 2)) in seqs


def test_export_is_deterministic_and_consistent():
    a = export(1, 2, FINE)
    b = export(1, 2, FINE)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    ids = {c["id"] for c in a["cells"]}
    assert ids == set(range(len(a["cells"])))
    dims = {c["id"]: c["dim"] for c in a["cells"]}
    assert all(dims[i] == dims[j] + 1 for i, j, _ in a["boundary"])
    assert a["euler"] == 1
