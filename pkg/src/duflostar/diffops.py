"""Right-star operators, the D_p and T_p actions, and bounded R-membership.

Operators are recovered from their action by an exact linear solve over a
bounded ansatz.  A term x^a d^b sends x^g to a multiple of x^(g - a + b), so
the unknowns split into independent blocks indexed by the shift b - a.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .duflo import StarContext, eta, mult_distribution, star
from .enveloping import pbw_product, symmetrize, unsymmetrize
from .errors import AnsatzInfeasible
from .invariants import adjoint_derivation, invariant_basis
from .lie import LieAlgebra
from .linalg import Eliminator
from .operators import DiffOp, apply_right, right_term
from .poly import Exps, Poly, monomials_of_degree, monomials_up_to

PolyMap = Callable[[Poly], Poly]


# ---------------------------------------------------------------------------
# fitting an operator to a linear action


@dataclass
class FitAttempt:
    order: int
    slack: int
    feasible: bool
    unique: bool
    witness: Optional[tuple] = None


@dataclass
class OperatorFit:
    operator: DiffOp
    order: int
    slack: int
    test_degree: int
    unique: bool
    attempts: List[FitAttempt] = field(default_factory=list)

    @property
    def escalated(self) -> bool:
        return len(self.attempts) > 1


def _images(action: PolyMap, dim: int, n: int) -> Dict[Exps, Poly]:
    return {g: action(Poly.monomial(g)) for g in monomials_up_to(dim, n)}


def _fit_once(images: Dict[Exps, Poly], dim: int, n: int, order: int, slack: int):
    shape = [(a, b) for ob in range(order + 1) for b in monomials_of_degree(dim, ob)
             for a in monomials_up_to(dim, min(ob + slack, n))]
    blocks: Dict[Exps, list] = {}
    for a, b in shape:
        blocks.setdefault(tuple(bi - ai for ai, bi in zip(a, b)), []).append((a, b))
    # every (input monomial, output monomial) pair is one equation in block out - in
    targets: Dict[Exps, Dict[Exps, Fraction]] = {}
    for g, img in images.items():
        for m, c in img.terms.items():
            targets.setdefault(tuple(mi - gi for mi, gi in zip(m, g)), {})[g] = c
    for shift, rhs in targets.items():
        if shift not in blocks:
            g, c = next(iter(sorted(rhs.items())))
            return None, False, ("no ansatz term produces", g, shift, c)
    terms = {}
    unique = True
    for shift, unknowns in blocks.items():
        elim = Eliminator(order=unknowns)
        rhs = targets.get(shift, {})
        for g in images:
            row = {}
            for a, b in unknowns:
                if all(gi >= ai for gi, ai in zip(g, a)):
                    v = right_term(Poly.monomial(g), a, b)
                    (coef,) = v.values()
                    row[(a, b)] = coef
            if row or rhs.get(g):
                elim.add(row, rhs.get(g, 0), label=(g, shift))
        sol = elim.solve(unknowns)
        if not sol.consistent:
            return None, False, ("inconsistent", sol.witness)
        unique = unique and sol.unique
        for k, v in sol.values.items():
            if v:
                terms[k] = v
    return DiffOp(dim, terms), unique, None


def fit_right_operator(action: PolyMap, dim: int, n: int, order: int,
                       slack: int = 0, max_slack: int = 2, max_order: int | None = None,
                       images: Dict[Exps, Poly] | None = None) -> OperatorFit:
    """Smallest-ansatz operator D with r.D = action(r) for all deg r <= n.

    Tries coefficient degree |a| <= |b| + slack for slack = slack..max_slack,
    then raises the order up to ``max_order``; every attempt is recorded.
    """
    images = images if images is not None else _images(action, dim, n)
    max_order = order if max_order is None else max_order
    attempts = []
    witness = None
    for o in range(order, max_order + 1):
        for s in range(slack, max_slack + 1):
            op, unique, witness = _fit_once(images, dim, n, o, s)
            attempts.append(FitAttempt(o, s, op is not None, unique, witness))
            if op is not None:
                return OperatorFit(op, o, s, n, unique, attempts)
    raise AnsatzInfeasible(
        f"no operator with order <= {max_order} and |a| <= |b| + {max_slack} reproduces the action "
        f"on degree <= {n}", witness=witness, attempts=attempts)


def extract_right_star_operator(p: Poly, ctx: StarContext, n: int, slack: int = 0,
                                max_slack: int = 2, max_order: int | None = None) -> OperatorFit:
    """The operator d*_p with r * p = r . d*_p on all r of degree <= n."""
    ctx.require(max(p.degree, 0) + n, "extract_right_star_operator")
    order = max(p.degree, 0)
    return fit_right_operator(lambda r: star(r, p, ctx), ctx.algebra.dim, n, order,
                              slack=slack, max_slack=max_slack, max_order=max_order)


def verify_right_operator(action: PolyMap, op: DiffOp, dim: int, n: int):
    """First monomial r of degree <= n with r.op != action(r), or None."""
    for g in monomials_up_to(dim, n):
        r = Poly.monomial(g)
        got, want = apply_right(r, op), action(r)
        if got != want:
            return r, got - want
    return None


# ---------------------------------------------------------------------------
# D_p, T_p and the identity relating them


def D_p_apply(P: Poly, p: Poly, ctx: StarContext) -> Poly:
    """exp^*(eta(P p) - eta(P) eta(p))."""
    ctx.require(P.degree + p.degree, "D_p")
    return unsymmetrize(eta(P * p, ctx) - pbw_product(eta(P, ctx), eta(p, ctx)))


def T_p_apply(r: Poly, p: Poly, ctx: StarContext) -> Poly:
    """(r p) tau - (r tau) * (p tau), products with tau taken as distributions."""
    ctx.require(r.degree + p.degree, "T_p")
    tau = ctx.tau
    return (mult_distribution(r * p, tau)
            - star(mult_distribution(r, tau), mult_distribution(p, tau), ctx))


def lemma1_check(r: Poly, p: Poly, ctx: StarContext) -> bool:
    """kappa of the T-side equals eta(r p) - eta(r) eta(p)."""
    lhs = symmetrize(mult_distribution(T_p_apply(r, p, ctx), ctx.q_over_tau), ctx.algebra)
    rhs = eta(r * p, ctx) - pbw_product(eta(r, ctx), eta(p, ctx))
    return lhs == rhs


def lemma1_operator_form(r: Poly, p: Poly, ctx: StarContext) -> bool:
    """r.D_p == (r.T_p).(tau^-1 q), the same identity read on S."""
    lhs = D_p_apply(r, p, ctx)
    rhs = unsymmetrize(symmetrize(mult_distribution(T_p_apply(r, p, ctx), ctx.q_over_tau),
                                  ctx.algebra))
    return lhs == rhs


# ---------------------------------------------------------------------------
# right actions and invariant tests


@dataclass(frozen=True)
class RightAction:
    kind: str
    rule: PolyMap
    p: Optional[Poly] = None
    ctx: Optional[StarContext] = None

    def __call__(self, r: Poly) -> Poly:
        return self.rule(r)


def star_action(p: Poly, ctx: StarContext) -> RightAction:
    return RightAction("star", lambda r: star(r, p, ctx), p, ctx)


def D_action(p: Poly, ctx: StarContext) -> RightAction:
    return RightAction("D", lambda r: D_p_apply(r, p, ctx), p, ctx)


def T_action(p: Poly, ctx: StarContext) -> RightAction:
    return RightAction("T", lambda r: T_p_apply(r, p, ctx), p, ctx)


def operator_action(op: DiffOp) -> RightAction:
    return RightAction("operator", lambda r: apply_right(r, op))


@dataclass
class AnnihilationResult:
    ok: bool
    checked: int
    witness: Optional[Tuple[Poly, int, Poly]] = None

    def __bool__(self):
        return self.ok


def annihilates_invariants(action: RightAction, algebra: LieAlgebra, d_max: int) -> AnnihilationResult:
    checked = 0
    for d in range(d_max + 1):
        for P in invariant_basis(algebra, d):
            value = action(P)
            checked += 1
            if not value.is_zero():
                return AnnihilationResult(False, checked, (P, d, value))
    return AnnihilationResult(True, checked)


# ---------------------------------------------------------------------------
# bounded membership in the right ideal generated by the adj_a


@dataclass
class Membership:
    found: bool
    bounds: Tuple[int, int, int]
    decomposition: Optional[List[DiffOp]] = None
    rank: int = 0
    unknowns: int = 0

    @property
    def verdict(self) -> str:
        return "decomposition" if self.found else "inconclusive"


def ideal_combination(algebra: LieAlgebra, parts: Sequence[DiffOp]) -> DiffOp:
    """sum_a adj_a o E_a."""
    out = DiffOp.zero(algebra.dim)
    for a, e in enumerate(parts):
        out = out + adjoint_derivation(algebra, a).compose(e)
    return out


def r_ideal_membership(action: PolyMap, algebra: LieAlgebra, n: int, k: int, m: int) -> Membership:
    """Search E_a (order <= k, coefficient degree <= m) with
    action(r) = r . sum_a adj_a o E_a for every r of degree <= n.

    A failed search is reported as inconclusive: it only rules out the bounded
    ansatz, not membership of the germ.
    """
    dim = algebra.dim
    fields = [adjoint_derivation(algebra, a) for a in range(dim)]
    shape = [(alpha, beta) for beta in monomials_up_to(dim, k) for alpha in monomials_up_to(dim, m)]
    unknowns = [(a, alpha, beta) for a in range(dim) for alpha, beta in shape]
    rows: Dict[Tuple[Exps, Exps], Dict] = {}
    rhs: Dict[Tuple[Exps, Exps], Fraction] = {}
    for g in monomials_up_to(dim, n):
        r = Poly.monomial(g)
        for out_e, c in action(r).terms.items():
            rhs[(g, out_e)] = c
        for a in range(dim):
            s = apply_right(r, fields[a])
            if s.is_zero():
                continue
            for alpha, beta in shape:
                for out_e, c in right_term(s, alpha, beta).items():
                    rows.setdefault((g, out_e), {})[(a, alpha, beta)] = c
    elim = Eliminator(order=unknowns)
    for key in sorted(set(rows) | set(rhs)):
        elim.add(rows.get(key, {}), rhs.get(key, 0), label=key)
    sol = elim.solve(unknowns)
    if not sol.consistent:
        return Membership(False, (n, k, m), None, sol.rank, len(unknowns))
    parts = []
    for a in range(dim):
        parts.append(DiffOp(dim, {(alpha, beta): v for (b, alpha, beta), v in sol.values.items()
                                  if b == a and v}))
    return Membership(True, (n, k, m), parts, sol.rank, len(unknowns))


def check_decomposition(action: PolyMap, algebra: LieAlgebra, parts: Sequence[DiffOp], n: int) -> bool:
    op = ideal_combination(algebra, parts)
    return verify_right_operator(action, op, algebra.dim, n) is None
