from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nmorph.bimodules import (DEFAULT, Conventions, Sym, action_axioms_check, cosimplicial_check,
                              d2_check, degree_of_key, gen_key, nainf_diff, nainf_generators,
                              nombas_diff, ombas_generators, phi_check, phi_compat_solve,
                              srt_diff, srt_generators, word)
from nmorph.trees import GaugedTree, render

OMBAS = ombas_generators(5, 2)
NAINF = nainf_generators(5, 2)

# the worked example: I = [0<1<2], t = two a-corollas grafted on a b-root
WORKED = {
    "G[1<2]{b!(a(|,|),a(|,|))}": 1,
    "G[0<2]{b!(a(|,|),a(|,|))}": -1,
    "G[0<1]{b!(a(|,|),a(|,|))}": 1,
    "G[0<1<2]{b!(o(|,|),a(|,|))}": -1,
    "G[0<1<2]{b!(a(|,|),o(|,|))}": -1,
    "G[0<1<2]{o!(a(|,|),a(|,|))}": 1,
    "!(G[0]{a!(|,|)},G[0<1<2]{a!(|,|)})": -1,
    "!(G[0<1]{a!(|,|)},G[1<2]{a!(|,|)})": -1,
    "!(G[0<1<2]{a!(|,|)},G[2]{a!(|,|)})": -1,
    "G[0<1<2]{b!(a(|,|),!(|,|))}": 1,
    "G[0<1<2]{b!(!(|,|),a(|,|))}": -1,
}


def test_worked_differential():
    t = GaugedTree((((), ()), ((), ())), ("b", "a", "a"))
    d = nombas_diff({gen_key((0, 1, 2), t): 1})
    assert {render(k): c for k, c in d.items()} == WORKED


@settings(max_examples=60)
@given(st.sampled_from(OMBAS))
def test_nombas_d_squared(g):
    assert not nombas_diff(nombas_diff({g: 1}))


@settings(max_examples=60)
@given(st.sampled_from(OMBAS))
def test_nombas_diff_raises_degree_by_one(g):
    assert all(degree_of_key(k) == degree_of_key(g) + 1 for k in nombas_diff({g: 1}))


@given(st.sampled_from(srt_generators(5)))
def test_srt_d_squared(g):
    assert not srt_diff(srt_diff({g: 1}))


@settings(max_examples=60)
@given(st.sampled_from(NAINF))
def test_nainf_d_squared(w):
    assert not nainf_diff(nainf_diff({w: 1}))


def test_nainf_low_arity():
    # d m_2 = 0 and d f_[0]^1 = 0 in the free model
    assert nainf_diff({word(Sym("m", 2)): 1}) == {}
    assert nainf_diff({word(Sym("f", 1, (0,))): 1}) == {}


@pytest.mark.parametrize("family", ["nombas", "nainf"])
def test_d2_check_report(family):
    r = d2_check(family, 3, 1)
    assert r["ok"] and r["failure_count"] == 0 and r["generators"] > 0
    with pytest.raises(ValueError):
        d2_check("other", 2, 0)


@pytest.mark.parametrize("conv", [Conventions(0, 1), Conventions(1, 1), Conventions(1, -1)])
def test_other_conventions_break_d_squared(conv):
    assert conv != DEFAULT
    assert not d2_check("nombas", 4, 1, conv)["ok"]


def test_action_axioms():
    assert action_axioms_check(3, 1)["ok"]


def test_cosimplicial_identities():
    assert cosimplicial_check(3, 2)["ok"]


def test_phi_is_a_chain_map():
    r = phi_compat_solve(3, 1)
    assert r["ok"]
    assert phi_check(3, 1)["ok"]
