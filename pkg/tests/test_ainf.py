from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.ainf import (AInfAlgebra, NMorphism, check_ainf, check_n_morphism, compositions,
                         insertions, random_ainf, truncated_polynomial)
from nmorph.homsimp import from_nmorphism, random_pair, random_simplex, to_nmorphism
from nmorph.koszul import GradedMap, GradedModule, ShapeError, identity

seeds = st.integers(0, 10 ** 6)


def test_combinatorics():
    assert list(compositions(3, 2)) == [(1, 2), (2, 1)]
    assert sorted(insertions(2)) == [(0, 1, 1), (0, 2, 0), (1, 1, 0)]


def test_truncated_polynomial_is_associative():
    A = truncated_polynomial(4, 2)
    assert check_ainf(A)["ok"]
    with pytest.raises(ValueError):
        truncated_polynomial(3, 1)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_algebras_satisfy_the_relations(seed):
    A = random_ainf(random.Random(seed), 3, 4)
    assert check_ainf(A)["ok"]
    for k in range(1, 5):
        assert A.bar_residual(k).is_zero()


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_bar_round_trip(seed):
    A = random_ainf(random.Random(seed), 2, 3)
    B = AInfAlgebra.from_bar(A.module, A.bar, A.cap, A.smodule)
    assert all(B.ops[k] == A.ops[k] for k in range(1, 4))


def test_wrong_degree_is_rejected():
    M = GradedModule.of([("x", 0)])
    with pytest.raises(ShapeError):
        AInfAlgebra(M, {2: GradedMap((M, M), (M,), 1, {(("x",), ("x", "x")): 1})}, 2)


def test_identity_is_a_zero_morphism():
    A = truncated_polynomial(3, 0)
    F = NMorphism(0, A, A, {((0,), 1): identity(A.module)}, A.cap)
    assert check_n_morphism(F)["ok"]
    G = NMorphism(0, A, A, {((0,), 1): identity(A.module).scale(2)}, A.cap)
    assert not check_n_morphism(G)["ok"]


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(0, 2))
def test_bar_simplices_are_n_morphisms(seed, n):
    rng = random.Random(seed)
    pair, base = random_pair(rng, rank=2, cap=3)
    sx = random_simplex(rng, pair, base, n)
    F = to_nmorphism(sx)
    assert check_n_morphism(F)["ok"]
    back = from_nmorphism(F, pair)
    assert all(back.get(I, m) == sx.get(I, m) for (I, m) in sx.maps)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_corrupted_morphism_fails(seed):
    rng = random.Random(seed)
    pair, base = random_pair(rng, rank=2, cap=3)
    F = to_nmorphism(random_simplex(rng, pair, base, 1))
    # the residual on [0<1] in arity 1 moves by exactly the added vertex map
    key = ((0,), 1)
    assert not F.get(*key).is_zero()
    F.maps[key] = F.get(*key).scale(2)
    assert not check_n_morphism(F)["ok"]
