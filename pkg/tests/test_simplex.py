from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.koszul import compose, tensor_differential
from nmorph.simplex import (aw_coproduct, aw_point, aw_point_iter, aw_point_matches_label,
                            aw_triple_witness, brute_force_top_count, chain_image_check,
                            check_face, codegeneracy, coface, count_overlapping, coproduct_map,
                            enumerate_overlapping, face_name, faces, iterated_aw, parse_face,
                            retraction_identities, simplex_differential, simplicial_diff,
                            square_noncommutativity_witness, subdivision, top_strata, union)

small_faces = st.integers(min_value=0, max_value=5).flatmap(
    lambda n: st.lists(st.integers(0, 6), min_size=n + 1, max_size=n + 1, unique=True).map(
        lambda xs: tuple(sorted(xs))))


def test_face_helpers():
    assert parse_face("[0<2<3]") == (0, 2, 3)
    assert face_name((1, 4)) == "[1<4]"
    with pytest.raises(ValueError):
        check_face((2, 1))
    assert len(faces(3)) == 15
    assert coface(1, (0, 1)) == (0, 2)
    assert codegeneracy(0, (0, 1)) is None and codegeneracy(0, (1, 2)) == (0, 1)


@given(small_faces)
def test_simplicial_boundary_squares_to_zero(face):
    total: dict = {}
    for J, c in simplicial_diff(face).items():
        for K, d in simplicial_diff(J).items():
            total[K] = total.get(K, 0) + c * d
    assert not any(total.values())


@given(small_faces)
def test_aw_is_coassociative_on_chains(face):
    left: dict = {}
    right: dict = {}
    for (a, b), c in aw_coproduct(face).items():
        for (a1, a2), d in aw_coproduct(a).items():
            left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * d
        for (b1, b2), d in aw_coproduct(b).items():
            right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * d
    assert {k: v for k, v in left.items() if v} == {k: v for k, v in right.items() if v}


@settings(deadline=None)
@given(small_faces, st.integers(1, 4))
def test_overlapping_partitions(face, s):
    parts = enumerate_overlapping(face, s)
    assert len(parts) == count_overlapping(len(face) - 1, s)
    for p in parts:
        assert union(p) == face
        assert all(a[-1] == b[0] for a, b in zip(p, p[1:]))
    assert set(iterated_aw(face, s)) == set(parts)


def test_partition_overlap_counts_add_up():
    face = (0, 1, 2, 3)
    total = sum(len(enumerate_overlapping(face, 3, i)) for i in range(3))
    assert total == len({p for i in range(3) for p in enumerate_overlapping(face, 3, i)})


def test_differential_is_a_coderivation():
    for n in range(4):
        d = simplex_differential(n)
        assert compose(d, d).is_zero()
        D = coproduct_map(n)
        assert compose(D, d) == compose(tensor_differential([d, d]), D)


@pytest.mark.parametrize("n", range(7))
def test_retraction(n):
    assert all(retraction_identities(n).values())


@pytest.mark.parametrize("n,s", [(n, s) for n in range(5) for s in range(1, 4)])
def test_top_strata_counts(n, s):
    assert len(top_strata(n, s)) == math.comb(n + s, s)
    assert brute_force_top_count(n, s) == math.comb(n + s, s)


def test_pictured_counts():
    assert len(top_strata(2, 1)) == 3
    assert len(top_strata(2, 2)) == 6


@pytest.mark.parametrize("n,s", [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)])
def test_strata_match_iterated_aw(n, s):
    assert chain_image_check(n, s)["ok"]
    for st_ in top_strata(n, s):
        assert aw_point_matches_label(st_)


def test_stratum_geometry():
    for st_ in subdivision(2, 2):
        vs = st_.vertices()
        assert len(vs) >= st_.dimension + 1
        p = st_.sample_point()
        for (lo, hi), c in zip(st_.z_intervals(), p):
            assert lo <= c <= hi


def test_aw_witness():
    left, right = aw_triple_witness()
    assert left == (0, 0, Fraction(4, 5))
    assert right == (0, Fraction(3, 5), 1)


coords = st.lists(st.fractions(0, 1, max_denominator=64), min_size=1, max_size=4).map(
    lambda xs: tuple(sorted(xs, reverse=True)))


@given(coords)
def test_aw_point_lands_in_simplex(z):
    a, b = aw_point(z)
    for p in (a, b):
        assert all(0 <= c <= 1 for c in p)
        assert all(x >= y for x, y in zip(p, p[1:]))
    assert len(aw_point_iter(z, 3)) == 3


def test_square_does_not_commute():
    assert square_noncommutativity_witness(3)["difference"]
    assert not square_noncommutativity_witness(0)["difference"]
