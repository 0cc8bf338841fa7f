"""Adjoint vector fields, invariants of S(g), and centrality in U(g).

Two transposed operators appear and are kept apart:

* ``adjoint_derivation(L, a)`` is the vector field adj_a on g,
  adj_a f(x) = d/dt f(exp(-ta).x) = -sum_{j,k} c^k_{aj} x_j d_k f.  It kills
  invariant *functions* such as tr(ad x)^2.
* its right action on point distributions is p . adj_a = -ad_a(p), where
  ``ad_on_S`` is the derivation of S(g) extending the bracket.  It kills
  invariant *distributions* such as the Casimir h^2 + 4ef of sl2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .enveloping import PBWElement, adjoint_on_U
from .lie import LieAlgebra
from .linalg import nullspace
from .operators import DiffOp, apply_right
from .poly import Poly, monomials_of_degree


def adjoint_derivation(algebra: LieAlgebra, a: int) -> DiffOp:
    n = algebra.dim
    terms = {}
    for j in range(n):
        for k, c in algebra.bracket_terms(a, j):
            alpha = [0] * n
            alpha[j] = 1
            beta = [0] * n
            beta[k] = 1
            key = (tuple(alpha), tuple(beta))
            terms[key] = terms.get(key, 0) - c
    return DiffOp(n, terms)


def ad_on_S(algebra: LieAlgebra, a: int, p: Poly) -> Poly:
    """Derivation of S(g) with x_j -> [e_a, e_j]."""
    out = Poly.zero(algebra.dim)
    for j in range(algebra.dim):
        terms = algebra.bracket_terms(a, j)
        if not terms:
            continue
        dj = p.diff(j)
        if dj.is_zero():
            continue
        image = Poly(algebra.dim, {tuple(int(t == k) for t in range(algebra.dim)): c for k, c in terms})
        out = out + dj * image
    return out


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    polys: Tuple[Poly, ...]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def invariant_basis(algebra: LieAlgebra, d: int) -> GradedBasis:
    """Exact kernel of all p -> p . adj_a on homogeneous degree-d polynomials."""
    memo = algebra._memo.setdefault("invariants", {})
    if d in memo:
        return memo[d]
    n = algebra.dim
    monos = monomials_of_degree(n, d)
    fields = [adjoint_derivation(algebra, a) for a in range(n)]
    # one row per (a, output monomial); columns are the input monomials
    rows = {}
    for m in monos:
        src = Poly.monomial(m)
        for a, v in enumerate(fields):
            for e, c in apply_right(src, v).terms.items():
                rows.setdefault((a, e), {})[m] = c
    kernel = nullspace(rows.values(), list(monos))
    polys = tuple(Poly(n, vec) for vec in kernel)
    out = GradedBasis(d, polys)
    memo[d] = out
    return out


def invariant_pairs(algebra: LieAlgebra, max_total: int) -> List[Tuple[Poly, Poly]]:
    out = []
    for d1 in range(max_total + 1):
        for d2 in range(d1, max_total - d1 + 1):
            b1 = invariant_basis(algebra, d1).polys
            b2 = invariant_basis(algebra, d2).polys
            for i, p1 in enumerate(b1):
                for j, p2 in enumerate(b2):
                    if d1 == d2 and j < i:
                        continue
                    out.append((p1, p2))
    return out


def is_invariant(algebra: LieAlgebra, p: Poly) -> bool:
    return all(ad_on_S(algebra, a, p).is_zero() for a in range(algebra.dim))


def centrality_check(u: PBWElement, algebra: LieAlgebra) -> bool:
    if u.algebra != algebra:
        return False
    return all(adjoint_on_U(a, u).is_zero() for a in range(algebra.dim))
