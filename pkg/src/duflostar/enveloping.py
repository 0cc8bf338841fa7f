"""U(g) in the PBW basis of the algebra's listed basis order.

Products are straightened with e_j e_i = e_i e_j + [e_j, e_i] for j > i.
Monomial-by-generator and monomial-by-monomial products are memoized on the
algebra; the memo never changes results.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Tuple

from .errors import AlgebraMismatch
from .lie import LieAlgebra
from .poly import Exps, Poly, as_q, exps_factorial

Terms = Dict[Exps, Fraction]


def _acc(out: Terms, key: Exps, value):
    v = out.get(key, 0) + value
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _same_algebra(a: LieAlgebra, b: LieAlgebra):
    if a is not b and a != b:
        raise AlgebraMismatch("elements belong to different Lie algebras")


class PBWElement:
    """Sparse combination of ordered monomials e_1^b1 ... e_n^bn."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms: Terms | None = None):
        self.algebra = algebra
        self.terms = {tuple(k): as_q(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, algebra, terms):
        u = cls.__new__(cls)
        u.algebra = algebra
        u.terms = terms
        return u

    @classmethod
    def zero(cls, algebra):
        return cls._raw(algebra, {})

    @classmethod
    def unit(cls, algebra):
        return cls._raw(algebra, {(0,) * algebra.dim: Fraction(1)})

    @classmethod
    def generator(cls, algebra, i):
        e = [0] * algebra.dim
        e[i] = 1
        return cls._raw(algebra, {tuple(e): Fraction(1)})

    @property
    def degree(self) -> int:
        """Filtration degree; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def top(self) -> "PBWElement":
        d = self.degree
        return PBWElement._raw(self.algebra, {e: c for e, c in self.terms.items() if sum(e) == d})

    def reading(self) -> Poly:
        """The commutative polynomial with the same coefficients."""
        return Poly._raw(self.algebra.dim, dict(self.terms))

    def __add__(self, other):
        _same_algebra(self.algebra, other.algebra)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _acc(out, e, c)
        return PBWElement._raw(self.algebra, out)

    def __neg__(self):
        return PBWElement._raw(self.algebra, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_q(c)
        if not c:
            return PBWElement.zero(self.algebra)
        return PBWElement._raw(self.algebra, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return pbw_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    __hash__ = None

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = [n.upper() for n in self.algebra.basis_names]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0])):
            mono = "".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            parts.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PBW({self.to_str()})"


# ---------------------------------------------------------------------------
# straightening kernel


def _mono_times_gen(algebra: LieAlgebra, beta: Exps, i: int) -> Terms:
    memo = algebra._memo.setdefault("pbw_mg", {})
    key = (beta, i)
    hit = memo.get(key)
    if hit is not None:
        return hit
    j = max((t for t, b in enumerate(beta) if b), default=-1)
    if j <= i:
        e = list(beta)
        e[i] += 1
        res = {tuple(e): Fraction(1)}
    else:
        rest = list(beta)
        rest[j] -= 1
        rest = tuple(rest)
        res: Terms = {}
        # rest * e_i * e_j
        for m, c in _mono_times_gen(algebra, rest, i).items():
            for m2, c2 in _mono_times_gen(algebra, m, j).items():
                _acc(res, m2, c * c2)
        # rest * [e_j, e_i]
        for k, ck in algebra.bracket_terms(j, i):
            for m, c in _mono_times_gen(algebra, rest, k).items():
                _acc(res, m, ck * c)
    memo[key] = res
    return res


def _mono_times_mono(algebra: LieAlgebra, beta: Exps, gamma: Exps) -> Terms:
    memo = algebra._memo.setdefault("pbw_mm", {})
    key = (beta, gamma)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not any(gamma):
        res = {beta: Fraction(1)}
    else:
        last = max(t for t, g in enumerate(gamma) if g)
        head = list(gamma)
        head[last] -= 1
        res = {}
        for m, c in _mono_times_mono(algebra, beta, tuple(head)).items():
            for m2, c2 in _mono_times_gen(algebra, m, last).items():
                _acc(res, m2, c * c2)
    memo[key] = res
    return res


def pbw_product(u: PBWElement, v: PBWElement) -> PBWElement:
    _same_algebra(u.algebra, v.algebra)
    alg = u.algebra
    out: Terms = {}
    for b, cb in u.terms.items():
        for g, cg in v.terms.items():
            for m, c in _mono_times_mono(alg, b, g).items():
                _acc(out, m, cb * cg * c)
    return PBWElement._raw(alg, out)


def adjoint_on_U(a: int, u: PBWElement) -> PBWElement:
    """e_a u - u e_a."""
    ea = PBWElement.generator(u.algebra, a)
    return pbw_product(ea, u) - pbw_product(u, ea)


# ---------------------------------------------------------------------------
# symmetrization


def _sym_power(algebra: LieAlgebra, n: int) -> Dict[Exps, Terms]:
    """(sum_i t_i e_i)^n as {t-exponent: PBW terms}."""
    powers = algebra._memo.setdefault("sym_power", {})
    dim = algebra.dim
    if 0 not in powers:
        powers[0] = {(0,) * dim: {(0,) * dim: Fraction(1)}}
    k = max(d for d in powers if d <= n)
    while k < n:
        nxt: Dict[Exps, Terms] = {}
        for t_exp, elem in powers[k].items():
            for i in range(dim):
                t = list(t_exp)
                t[i] += 1
                acc = nxt.setdefault(tuple(t), {})
                for m, c in elem.items():
                    for m2, c2 in _mono_times_gen(algebra, m, i).items():
                        _acc(acc, m2, c * c2)
        k += 1
        powers[k] = nxt
    return powers[n]


def _sym_table(algebra: LieAlgebra, n: int) -> Dict[Exps, Terms]:
    """beta(x^alpha) for every alpha of degree n.

    Read off from (sum_i t_i e_i)^n = sum_alpha t^alpha (n!/alpha!) beta(x^alpha)
    instead of summing n! orderings.
    """
    memo = algebra._memo.setdefault("sym", {})
    hit = memo.get(n)
    if hit is not None:
        return hit
    nf = factorial(n)
    table = {}
    for t_exp, elem in _sym_power(algebra, n).items():
        scale = Fraction(exps_factorial(t_exp), nf)
        table[t_exp] = {m: c * scale for m, c in elem.items()}
    memo[n] = table
    return table


def symmetrize(p: Poly, algebra: LieAlgebra) -> PBWElement:
    if p.dim != algebra.dim:
        raise AlgebraMismatch(f"polynomial in {p.dim} variables, algebra of dimension {algebra.dim}")
    out: Terms = {}
    for e, c in p.terms.items():
        for m, v in _sym_table(algebra, sum(e))[e].items():
            _acc(out, m, c * v)
    return PBWElement._raw(algebra, out)


def unsymmetrize(u: PBWElement) -> Poly:
    """Inverse of symmetrize, peeling off the top filtration degree each step."""
    alg = u.algebra
    rest = u
    out = Poly.zero(alg.dim)
    while not rest.is_zero():
        top = rest.top().reading()
        out = out + top
        rest = rest - symmetrize(top, alg)
    return out
