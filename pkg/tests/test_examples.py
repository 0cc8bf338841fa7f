"""Small worked instances, each checked against a hand computation."""
from fractions import Fraction

from duflostar import (DiffOp, Poly, StarContext, WheelCoefficients, adjoint_on_U, catalog,
                       centrality_check, eta, kappa, q_jet, symmetrize, tau_jet)
from duflostar.diffops import D_action, T_action, check_decomposition, r_ideal_membership
from duflostar.invariants import adjoint_derivation, invariant_basis
from duflostar.lie import ad_generic
from duflostar.operators import apply_right

e, f, h = (Poly.var(3, i) for i in range(3))
CASIMIR = h * h + (e * f).scale(4)


def test_ad_generic_aff1():
    m = ad_generic(catalog("aff1"))
    x1, x2 = Poly.var(2, 0), Poly.var(2, 1)
    # column j is [x, e_j]
    assert [[m[r][c] for r in range(2)] for c in range(2)] == [[Poly.zero(2), -x2], [Poly.zero(2), x1]]


def test_ad_generic_heisenberg():
    m = ad_generic(catalog("heisenberg3"))
    x, y = Poly.var(3, 0), Poly.var(3, 1)
    nonzero = {(r, c): m[r][c] for r in range(3) for c in range(3) if not m[r][c].is_zero()}
    assert nonzero == {(2, 0): -y, (2, 1): x}


def test_q_and_matching_tau_at_degree_two():
    L = catalog("sl2")
    want = Poly.one(3) + (h * h + e * f).scale(Fraction(1, 6))
    assert q_jet(L, 2).poly == want
    assert tau_jet(L, WheelCoefficients.explicit(["1/48"]), 2).poly == want


def test_kappa_is_symmetrization_when_tau_matches_q():
    ctx = StarContext.build(catalog("sl2"), 2, WheelCoefficients.explicit(["1/48"]))
    for p in (e * f, h * h + e, CASIMIR):
        assert kappa(p, ctx) == symmetrize(p, ctx.algebra)


def test_casimir_eta_and_symmetrization_central():
    L = catalog("sl2")
    ctx = StarContext.build(L, 4)
    assert centrality_check(eta(CASIMIR, ctx), L)
    assert adjoint_on_U(0, symmetrize(CASIMIR, L)).is_zero()


def test_adjoint_field_kills_casimir_as_distribution():
    L = catalog("sl2")
    assert apply_right(CASIMIR, adjoint_derivation(L, 0)).is_zero()


def test_invariant_spans():
    assert invariant_basis(catalog("heisenberg3"), 3).polys[0].terms.keys() == {(0, 0, 3)}
    (c,) = invariant_basis(catalog("sl2"), 2).polys
    assert c == CASIMIR.scale(c.coeff((0, 0, 2)))


def test_right_action_of_euler_term():
    x1 = Poly.var(2, 0)
    assert apply_right(x1, DiffOp.term((1, 0), (1, 0))) == x1


def test_non_invariant_p_gives_witness_on_casimir():
    ctx = StarContext.build(catalog("sl2"), 6)
    # eta(C) is central, so this equals the oracle-confirmed value of D_C(e)
    assert D_action(e, ctx)(CASIMIR) == e.scale(Fraction(-2, 3))


def test_central_p_membership_with_duflo_wheels():
    ctx = StarContext.build(catalog("heisenberg3"), 6, WheelCoefficients.duflo(6))
    z = Poly.var(3, 2)
    action = T_action(z, ctx)
    res = r_ideal_membership(action, ctx.algebra, 3, 2, 2)
    assert res.found and check_decomposition(action, ctx.algebra, res.decomposition, 3)
