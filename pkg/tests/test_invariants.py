import pytest
import sympy
from hypothesis import given, settings, strategies as st

from duflostar import DiffOp, Poly, catalog, centrality_check, invariant_basis, symmetrize
from duflostar.invariants import ad_on_S, adjoint_derivation, invariant_pairs, is_invariant
from duflostar.lie import LieAlgebra, trace_power, validate
from duflostar.operators import apply_right

from conftest import ALGEBRAS

DIMS = {
    "sl2": [1, 0, 1, 0, 1],
    "so3": [1, 0, 1, 0, 1],
    "heisenberg3": [1, 1, 1, 1, 1],
    "ut3": [1, 1, 1, 1, 1],
    "aff1": [1, 0, 0, 0, 0],
    "abelian_3": [1, 3, 6, 10, 15],
}


def change_basis(L: LieAlgebra, M) -> LieAlgebra:
    """Structure constants in the basis f_i = sum_j M[i][j] e_j."""
    n = L.dim
    M = sympy.Matrix(M)
    inv = M.inv()
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            img = [sum(M[i, a] * M[j, b] * L.c[a][b][k] for a in range(n) for b in range(n))
                   for k in range(n)]
            for l in range(n):
                v = sum(img[k] * inv[k, l] for k in range(n))
                c[i][j][l] = f"{sympy.Rational(v)}"
    return validate(n, [f"f{i}" for i in range(n)], c)


def test_aff1_vector_fields():
    L = catalog("aff1")
    assert adjoint_derivation(L, 0) == DiffOp.term((0, 1), (0, 1), -1)
    assert adjoint_derivation(L, 1) == DiffOp.term((1, 0), (0, 1), 1)


def test_sl2_casimir_killed_by_right_action():
    L = catalog("sl2")
    e, f, h = (Poly.var(3, i) for i in range(3))
    cas = h * h + (e * f).scale(4)
    for a in range(3):
        assert apply_right(cas, adjoint_derivation(L, a)).is_zero()
        assert ad_on_S(L, a, cas).is_zero()
    # the Killing form is an invariant function, not an invariant distribution
    kill = trace_power(L, 2)
    assert all(adjoint_derivation(L, a).apply(kill).is_zero() for a in range(3))
    assert not is_invariant(L, kill)


@pytest.mark.parametrize("name", sorted(DIMS))
def test_invariant_dimensions(name):
    L = catalog(name)
    assert [len(invariant_basis(L, d)) for d in range(5)] == DIMS[name]


def test_sl2_degree_four_invariant_is_casimir_squared():
    L = catalog("sl2")
    e, f, h = (Poly.var(3, i) for i in range(3))
    cas = h * h + (e * f).scale(4)
    (b,) = invariant_basis(L, 4).polys
    ratio = b.coeff((0, 0, 4))
    assert b == (cas * cas).scale(ratio)


@pytest.mark.parametrize("name", ALGEBRAS)
def test_products_of_invariants_are_invariant(name):
    L = catalog(name)
    for p1, p2 in invariant_pairs(L, 4):
        assert is_invariant(L, p1 * p2)


@pytest.mark.parametrize("name", ALGEBRAS)
def test_symmetrized_invariants_are_central(name):
    L = catalog(name)
    for d in range(5):
        for p in invariant_basis(L, d):
            assert centrality_check(symmetrize(p, L), L)


def test_non_invariant_not_central():
    L = catalog("sl2")
    assert not centrality_check(symmetrize(Poly.var(3, 2), L), L)


matrices = st.lists(st.integers(-2, 2), min_size=9, max_size=9).map(
    lambda v: [v[0:3], v[3:6], v[6:9]]).filter(lambda m: sympy.Matrix(m).det() != 0)


@pytest.mark.parametrize("name", ["sl2", "heisenberg3", "so3", "ut3"])
@given(M=matrices)
@settings(max_examples=5)
def test_dimensions_independent_of_basis(name, M):
    L2 = change_basis(catalog(name), M)
    assert [len(invariant_basis(L2, d)) for d in range(4)] == DIMS[name][:4]
