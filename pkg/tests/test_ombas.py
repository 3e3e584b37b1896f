from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.ainf import check_ainf, check_n_morphism, truncated_polynomial
from nmorph.koszul import identity, zero_map
from nmorph.ombas import (check_n_ombas_morphism, check_ombas, degenerate, dga_as_ombas,
                          induce_ainf, push_forward, random_ombas, random_ombas_morphism,
                          strict_morphism)
from nmorph.serial import ombas_morphism_from_json, ombas_morphism_to_json

seeds = st.integers(0, 10 ** 6)


def _dga():
    P = truncated_polynomial(3, 0)
    M = P.module
    return dga_as_ombas(M, zero_map([M], M, 1), P.ops[2], 3)


def test_dga_is_an_ombas_algebra():
    A = _dga()
    assert check_ombas(A)["ok"]
    B = induce_ainf(A)
    assert check_ainf(B)["ok"]
    assert B.ops[2] == A.ops[((), ())] or B.ops[2] == A.ops[((), ())].scale(-1)


def test_identity_is_a_strict_morphism():
    A = _dga()
    F = strict_morphism(A, A, identity(A.module))
    assert check_n_ombas_morphism(F)["ok"]
    assert check_n_morphism(push_forward(F))["ok"]


@settings(max_examples=8)
@given(seeds)
def test_random_algebras(seed):
    A = random_ombas(random.Random(seed), 2, 3)
    assert check_ombas(A)["ok"]
    assert check_ainf(induce_ainf(A))["ok"]


@pytest.mark.parametrize("seed,n", [(0, 0), (1, 0), (2, 1), (3, 1)])
def test_random_morphisms_push_forward(seed, n):
    rng = random.Random(seed)
    A, B = random_ombas(rng, 2, 3, "x"), random_ombas(rng, 2, 3, "y")
    F = random_ombas_morphism(rng, A, B, n)
    assert check_n_ombas_morphism(F)["ok"]
    assert check_n_morphism(push_forward(F))["ok"]


def test_degeneracies_preserve_validity():
    rng = random.Random(5)
    A, B = random_ombas(rng, 2, 3, "x"), random_ombas(rng, 2, 3, "y")
    F = random_ombas_morphism(rng, A, B, 1)
    for j in (0, 1):
        G = degenerate(F, j)
        assert G.n == 2 and check_n_ombas_morphism(G)["ok"]


def test_corruption_is_detected():
    A = _dga()
    F = strict_morphism(A, A, identity(A.module))
    key = next(iter(F.maps))
    F.maps[key] = F.maps[key].scale(3)
    assert not check_n_ombas_morphism(F)["ok"]


def test_json_round_trip():
    rng = random.Random(11)
    A, B = random_ombas(rng, 2, 3, "x"), random_ombas(rng, 2, 3, "y")
    F = random_ombas_morphism(rng, A, B, 1)
    text = json.dumps(ombas_morphism_to_json(F), sort_keys=True)
    G = ombas_morphism_from_json(json.loads(text))
    assert json.dumps(ombas_morphism_to_json(G), sort_keys=True) == text
    assert check_n_ombas_morphism(G)["ok"]
