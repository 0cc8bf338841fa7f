from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from duflostar import PBWElement, Poly, adjoint_on_U, catalog, pbw_product, symmetrize, unsymmetrize
from duflostar.errors import AlgebraMismatch
from duflostar.invariants import ad_on_S

from conftest import ALGEBRAS, polys
from oracles import brute_symmetrize, brute_unsymmetrize, naive_product


def gens(L):
    return [PBWElement.generator(L, i) for i in range(L.dim)]


def test_heisenberg_straightening():
    L = catalog("heisenberg3")
    X, Y, Z = gens(L)
    assert (Y * X).terms == {(1, 1, 0): 1, (0, 0, 1): -1}
    assert ((X * Y) * X).terms == {(2, 1, 0): 1, (1, 0, 1): -1}


def test_sl2_fe():
    L = catalog("sl2")
    E, F, H = gens(L)
    assert (F * E).terms == {(1, 1, 0): 1, (0, 0, 1): -1}
    assert (H * E - E * H) == E.scale(2)


def test_sl2_casimir_is_central():
    L = catalog("sl2")
    E, F, H = gens(L)
    cas = H * H + (E * F).scale(2) + (F * E).scale(2)
    for a in range(3):
        assert adjoint_on_U(a, cas).is_zero()


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraMismatch):
        gens(catalog("sl2"))[0] * gens(catalog("so3"))[0]


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=15)
def test_product_matches_word_rewriting(name, data):
    L = catalog(name)
    u = data.draw(polys(L.dim, 3, 3))
    v = data.draw(polys(L.dim, 3, 3))
    got = pbw_product(PBWElement(L, u.terms), PBWElement(L, v.terms))
    assert got.terms == naive_product(L.c, u.terms, v.terms)


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=15)
def test_associativity(name, data):
    L = catalog(name)
    u, v, w = (PBWElement(L, data.draw(polys(L.dim, 2, 3)).terms) for _ in range(3))
    assert (u * v) * w == u * (v * w)


def test_symmetrize_example():
    L = catalog("heisenberg3")
    x, y = Poly.var(3, 0), Poly.var(3, 1)
    assert symmetrize(x * y, L).to_str() == "XY - 1/2*Z"
    assert unsymmetrize(gens(L)[0] * gens(L)[1]).terms == {(1, 1, 0): 1, (0, 0, 1): Fraction(1, 2)}


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=15)
def test_symmetrize_matches_permutation_average(name, data):
    L = catalog(name)
    p = data.draw(polys(L.dim, 4, 3))
    assert symmetrize(p, L).terms == brute_symmetrize(L.c, p.terms)


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=15)
def test_unsymmetrize_matches_oracle(name, data):
    L = catalog(name)
    u = data.draw(polys(L.dim, 4, 3))
    assert unsymmetrize(PBWElement(L, u.terms)).terms == brute_unsymmetrize(L.c, u.terms)


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=20)
def test_roundtrip_and_triangularity(name, data):
    L = catalog(name)
    p = data.draw(polys(L.dim, 4, 4))
    s = symmetrize(p, L)
    assert unsymmetrize(s) == p
    assert s.degree == p.degree
    if not p.is_zero():
        assert s.top().reading() == p.homogeneous(p.degree)


@pytest.mark.parametrize("name", ALGEBRAS)
@given(data=st.data())
@settings(max_examples=15)
def test_symmetrization_intertwines_adjoint_action(name, data):
    L = catalog(name)
    p = data.draw(polys(L.dim, 3, 3))
    for a in range(L.dim):
        assert adjoint_on_U(a, symmetrize(p, L)) == symmetrize(ad_on_S(L, a, p), L)


def test_symmetrize_of_abelian_is_identity():
    L = catalog("abelian_3")
    p = Poly(3, {(2, 1, 0): 3, (0, 0, 4): -1})
    assert symmetrize(p, L).reading() == p
