from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from duflostar import Jet, Poly, catalog, jet_exp, jet_inverse, jet_log, matrix_series_tr_log, pairing
from duflostar.errors import BadConstantTerm, BadLeadingCoefficient, DimensionMismatch
from duflostar.lie import trace_power
from duflostar.poly import as_q, sinh_ratio_coeffs, scalar_log_coeffs

from conftest import ALGEBRAS, polys
from oracles import pairing_terms, q_series_by_determinant, sinh_ratio_log_coeffs

P3 = polys(3)


@given(P3, P3, P3)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(3)


@given(P3, P3)
def test_degree_of_product(a, b):
    if a.is_zero() or b.is_zero():
        assert (a * b).is_zero()
    else:
        assert (a * b).degree == a.degree + b.degree


@given(P3, P3)
def test_leibniz(a, b):
    for i in range(3):
        assert (a * b).diff(i) == a.diff(i) * b + a * b.diff(i)


@given(P3, P3)
def test_pairing_matches_oracle(p, f):
    assert pairing(p, f) == pairing_terms(p.terms, f.terms)


def test_pairing_example():
    x = Poly.var(1, 0)
    # x^2 paired with x^2 is 2!
    assert pairing(x * x, x * x) == 2


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_q(0.5)
    assert as_q("3/4") == Fraction(3, 4)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Poly(2, {(1, 0, 0): 1})
    with pytest.raises(DimensionMismatch):
        Poly.var(2, 0) + Poly.var(3, 0)


def test_jet_exp_univariate():
    t = Jet(Poly.var(1, 0), 5)
    assert [jet_exp(t).poly.coeff((k,)) for k in range(6)] == [
        1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]


def test_jet_log_univariate():
    j = Jet(Poly.one(1) + Poly.var(1, 0), 4)
    assert [jet_log(j).poly.coeff((k,)) for k in range(5)] == [
        0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]


def test_jet_inverse_geometric():
    j = Jet(Poly.one(2) - Poly.var(2, 0) - Poly.var(2, 1), 3)
    inv = jet_inverse(j)
    # 1/(1 - x - y) has binomial coefficients
    assert inv.poly.coeff((2, 1)) == 3
    assert inv.poly.coeff((1, 1)) == 2


def test_jet_errors():
    with pytest.raises(BadConstantTerm):
        jet_exp(Jet(Poly.one(1), 3))
    with pytest.raises(BadConstantTerm):
        jet_log(Jet(Poly.constant(1, 2), 3))
    with pytest.raises(BadConstantTerm):
        jet_inverse(Jet(Poly.zero(1), 3))


@given(polys(2, 3))
def test_exp_log_roundtrip(p):
    x = Jet(p - p.constant_term(), 4)
    assert jet_log(jet_exp(x)) == x


@given(polys(2, 3))
def test_inverse_roundtrip(p):
    u = Jet(p - p.constant_term() + 1, 4)
    assert (u * jet_inverse(u)).poly == Poly.one(2)


def test_jet_product_truncates_to_min():
    a = Jet(Poly.var(1, 0), 5)
    b = Jet(Poly.var(1, 0), 2)
    assert (a * b).trunc == 2
    assert (a * a * a).poly.degree == 3 and (a * b * b).poly.is_zero()


def test_sinh_ratio_and_log_coefficients_match_sympy():
    g = sinh_ratio_coeffs(10)
    assert g[2] == Fraction(1, 24) and g[4] == Fraction(1, 1920)
    assert scalar_log_coeffs(g, 10) == sinh_ratio_log_coeffs(10)


def test_half_trace_log_sl2_degree_two():
    j = matrix_series_tr_log(catalog("sl2"), sinh_ratio_coeffs(2), 2)
    # (1/2)(1/24) tr(ad x)^2 = (8h^2 + 8ef)/48
    assert j.poly.terms == {(0, 0, 2): Fraction(1, 6), (1, 1, 0): Fraction(1, 6)}


@pytest.mark.parametrize("name", ALGEBRAS)
def test_half_trace_log_matches_scalar_log_of_traces(name):
    L = catalog(name)
    n = 6
    logs = sinh_ratio_log_coeffs(n)
    ref = Poly.zero(L.dim)
    for k in range(2, n + 1, 2):
        ref = ref + trace_power(L, k).scale(logs[k] / 2)
    assert matrix_series_tr_log(L, sinh_ratio_coeffs(n), n).poly == ref


@pytest.mark.parametrize("name", ALGEBRAS)
def test_exp_half_trace_log_is_root_determinant(name):
    L = catalog(name)
    got = jet_exp(matrix_series_tr_log(L, sinh_ratio_coeffs(4), 4)).poly
    assert got.terms == q_series_by_determinant(L.c, 4)


def test_bad_leading_coefficient():
    with pytest.raises(BadLeadingCoefficient):
        matrix_series_tr_log(catalog("sl2"), [2, 0, 1], 2)
