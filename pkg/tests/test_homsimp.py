from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.ainf import random_map
from nmorph.homsimp import (BarPair, HomSimplex, Horn, InvalidHorn, PiNRep, abelian_target_pair,
                            assemble_prism_homotopy, aw_lift_solver, compose_pi1, compose_pin,
                            fill_inner_horn, homotopic_check, homotopy_13234, homotopy_solve,
                            horn_of, nilpotent_target_pair, pi1_via_filler, pin_rep_check,
                            prism_check, prism_inner, prism_nondegenerate, prism_top, random_base,
                            random_pair, random_pin_rep, random_prism, random_simplex)
from nmorph.koszul import zero_map
from nmorph.simplex import (ansatz_terms, face_name, lower_composite, simplicial_diff, tensor4_diff,
                            upper_composite)

seeds = st.integers(0, 10 ** 6)


def _simplex(seed: int, n: int):
    rng = random.Random(seed)
    pair, base = random_pair(rng, rank=2, cap=3)
    return rng, pair, random_simplex(rng, pair, base, n)


@settings(max_examples=25)
@given(seeds, st.integers(2, 3), st.data())
def test_inner_horns_fill(seed, n, data):
    _, _, sx = _simplex(seed, n)
    assert sx.is_valid()
    k = data.draw(st.integers(1, n - 1))
    filler = fill_inner_horn(horn_of(sx, k))
    assert filler.is_valid()
    # the filler agrees with the horn on every face it was given
    kh = tuple(v for v in range(n + 1) if v != k)
    for (I, m), f in sx.maps.items():
        if I != tuple(range(n + 1)) and not set(kh) <= set(I):
            assert filler.get(I, m) == f


@settings(max_examples=15)
@given(seeds, st.integers(1, 3))
def test_faces_and_degeneracies_are_simplices(seed, n):
    _, _, sx = _simplex(seed, n)
    for j in range(n + 1):
        assert sx.face(j).is_valid()
        assert sx.degeneracy(j).is_valid()


def test_simplicial_identity_on_faces():
    _, _, sx = _simplex(3, 3)
    for i in range(3):
        for j in range(i + 1, 4):
            assert sx.face(j).face(i).maps == sx.face(i).face(j - 1).maps


def test_zero_b_horn_adds_edges():
    rng = random.Random(0)
    pair, _ = random_pair(rng, rank=2, cap=3)
    z = BarPair(pair.sA, pair.sB, {k: zero_map([pair.sA] * k, pair.sA, 1) for k in range(1, 4)},
                {k: zero_map([pair.sB] * k, pair.sB, 1) for k in range(1, 4)}, 3)
    maps = {}
    for m in range(1, 4):
        v = random_map(rng, [z.sA] * m, z.sB, 0)
        for I in [(0,), (1,), (2,)]:
            maps[(I, m)] = v
        for I in [(0, 1), (1, 2)]:
            maps[(I, m)] = random_map(rng, [z.sA] * m, z.sB, 1)
    f = fill_inner_horn(Horn(2, 1, z, maps))
    for m in range(1, 4):
        assert f.get((0, 2), m) == f.get((0, 1), m) + f.get((1, 2), m)


def test_horn_errors():
    _, _, sx = _simplex(1, 2)
    with pytest.raises(ValueError):
        fill_inner_horn(horn_of(sx, 0))
    horn = horn_of(sx, 1)
    key = ((0,), 1)
    assert not horn.maps[key].is_zero()
    horn.maps[key] = horn.maps[key].scale(2)
    with pytest.raises(InvalidHorn):
        fill_inner_horn(horn)


def test_json_round_trips():
    _, pair, sx = _simplex(2, 2)
    data = json.loads(json.dumps(sx.to_json()))
    assert HomSimplex.from_json(data).maps == {k: v for k, v in sx.maps.items() if not v.is_zero()}
    h = horn_of(sx, 1)
    assert Horn.from_json(json.loads(json.dumps(h.to_json()))).k == 1
    assert BarPair.from_json(pair.to_json()).bB == pair.bB


def _reps(seed: int, n: int):
    rng = random.Random(seed)
    if n == 1:
        pair = nilpotent_target_pair(rng)
        base = {m: pair.zero(m, 0) for m in range(1, pair.cap + 1)}
    else:
        pair = abelian_target_pair(rng)
        base = random_base(rng, pair)
    return rng, pair, base, random_pin_rep(rng, pair, base, n), random_pin_rep(rng, pair, base, n)


@settings(max_examples=10)
@given(seeds, st.integers(2, 3))
def test_higher_groups_compose(seed, n):
    _, pair, base, F, G = _reps(seed, n)
    assert pin_rep_check(F)["ok"] and pin_rep_check(G)["ok"]
    H = compose_pin(F, G)
    assert pin_rep_check(H)["ok"]
    assert all(H.get_top(m) == compose_pin(G, F).get_top(m) for m in range(1, 4))


@settings(max_examples=10)
@given(seeds)
def test_fundamental_group_composes(seed):
    _, pair, base, F, G = _reps(seed, 1)
    H = compose_pi1(F, G)
    assert pin_rep_check(H)["ok"]
    alt = pi1_via_filler(F, G)
    assert all(alt.get_top(m) == H.get_top(m) for m in range(1, pair.cap + 1))
    unit = PiNRep(1, pair, dict(base), {m: pair.zero(m, -1) for m in range(1, pair.cap + 1)})
    assert all(compose_pi1(F, unit).get_top(m) == F.get_top(m) for m in range(1, 4))


def test_compose_rejects_mismatched_dimensions():
    _, _, _, F, _ = _reps(4, 2)
    _, _, _, G, _ = _reps(4, 3)
    with pytest.raises(ValueError):
        compose_pin(F, G)
    with pytest.raises(ValueError):
        compose_pi1(F, F)


def test_homotopy_solve():
    rng, pair, base, F, _ = _reps(6, 2)
    end, data = random_prism(rng, F)
    H = homotopy_solve(end, F)
    assert isinstance(H, dict) and homotopic_check(end, F, H)["ok"]


@pytest.mark.parametrize("n", range(1, 5))
def test_prism_counts(n):
    p = prism_nondegenerate(n)
    assert len(p["top"]) == n + 1 and len(p["inner"]) == n
    assert set(p["top"]) == {prism_top(n, k) for k in range(n + 1)}
    assert set(p["inner"]) == {prism_inner(n, k) for k in range(1, n + 1)}


@pytest.mark.parametrize("seed,n", [(0, 1), (0, 2), (3, 1), (4, 2)])
def test_prism_collapse(seed, n):
    rng = random.Random(seed)
    pair = abelian_target_pair(rng)
    F = random_pin_rep(rng, pair, random_base(rng, pair), n)
    end, data = random_prism(rng, F)
    assert prism_check(F, data)
    # the collapse is a homotopy from the far end back to the start
    assert homotopic_check(end, F, data.collapse(pair))["ok"]
    _, ok = assemble_prism_homotopy(end, F, homotopy_solve(end, F))
    assert ok


@pytest.mark.parametrize("n", [0, 1, 2])
def test_13234_solver(n):
    # d h + h d = 1324 - 1234 on the top face, recomputed from the sign table
    r = aw_lift_solver(n)
    assert r["ok"]

    def h(I):
        out = {}
        for P, key in ansatz_terms(I):
            out[key] = out.get(key, 0) + r["signs"]["|".join(face_name(Q) for Q in P)]
        return out

    top = tuple(range(n + 1))
    assert {k: v for k, v in h(top).items() if v} == homotopy_13234(n, r["signs"])
    lhs = {}
    for key, c in h(top).items():
        for k2, v in tensor4_diff(key).items():
            lhs[k2] = lhs.get(k2, 0) + c * v
    for J, c in simplicial_diff(top).items():
        for key, v in h(J).items():
            lhs[key] = lhs.get(key, 0) + c * v
    rhs = dict(upper_composite(top))
    for k, v in lower_composite(top).items():
        rhs[k] = rhs.get(k, 0) - v
    clean = lambda e: {k: v for k, v in e.items() if v}
    assert clean(lhs) == clean(rhs)
