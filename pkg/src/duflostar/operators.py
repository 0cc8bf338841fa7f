"""Polynomial-coefficient differential operators on g.

A :class:`DiffOp` is sum q_ab x^a d^b with the coefficient written on the
left; it acts on functions by ``apply`` and on point distributions on the
right by :func:`apply_right`, defined by <T.D, phi> = <T, D phi>.  Under the
pairing of :mod:`duflostar.poly` this reads T.(x^a d^b) = x^b (d^a T).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterator, Tuple

from .errors import DimensionMismatch
from .poly import Exps, Poly, add_exps, as_q

Key = Tuple[Exps, Exps]


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _apply_deriv(p: Poly, beta: Exps) -> Dict[Exps, Fraction]:
    out = {}
    for e, c in p.terms.items():
        if all(x >= b for x, b in zip(e, beta)):
            f = 1
            for x, b in zip(e, beta):
                if b:
                    f *= _falling(x, b)
            out[tuple(x - b for x, b in zip(e, beta))] = c * f
    return out


class DiffOp:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Dict[Key, Fraction] | None = None):
        self.dim = dim
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = as_q(c)
            if c:
                if len(a) != dim or len(b) != dim:
                    raise DimensionMismatch(f"multi-index length must be {dim}")
                clean[(tuple(a), tuple(b))] = c
        self.terms = clean

    @classmethod
    def zero(cls, dim: int) -> "DiffOp":
        return cls(dim)

    @classmethod
    def identity(cls, dim: int) -> "DiffOp":
        z = (0,) * dim
        return cls(dim, {(z, z): Fraction(1)})

    @classmethod
    def term(cls, alpha: Exps, beta: Exps, c=1) -> "DiffOp":
        return cls(len(alpha), {(tuple(alpha), tuple(beta)): c})

    @classmethod
    def multiplication(cls, f: Poly) -> "DiffOp":
        z = (0,) * f.dim
        return cls(f.dim, {(e, z): c for e, c in f.terms.items()})

    @classmethod
    def constant_coefficient(cls, p: Poly) -> "DiffOp":
        """p(d/dx)."""
        z = (0,) * p.dim
        return cls(p.dim, {(z, e): c for e, c in p.terms.items()})

    @property
    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=-1)

    @property
    def coeff_degree(self) -> int:
        return max((sum(a) for a, _ in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if other.dim != self.dim:
            raise DimensionMismatch("operator dimensions differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return DiffOp(self.dim, out)

    def __neg__(self):
        return DiffOp(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        c = as_q(c)
        return DiffOp(self.dim, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    __hash__ = None

    def apply(self, f: Poly) -> Poly:
        """Left action on a polynomial function."""
        if f.dim != self.dim:
            raise DimensionMismatch("operator and polynomial dimensions differ")
        out = Poly.zero(self.dim)
        for (a, b), c in self.terms.items():
            d = _apply_deriv(f, b)
            if d:
                out = out + Poly._raw(self.dim, {add_exps(e, a): v * c for e, v in d.items()})
        return out

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self o other, normal ordered (x^a d^b)(x^c d^d) = x^a sum_k C(b,k) d^k(x^c) d^(b-k+d)."""
        if other.dim != self.dim:
            raise DimensionMismatch("operator dimensions differ")
        out: Dict[Key, Fraction] = {}
        for (a, b), c1 in self.terms.items():
            for (cc, dd), c2 in other.terms.items():
                for k in _sub_indices(b, cc):
                    coef = c1 * c2
                    for bi, ki, ci in zip(b, k, cc):
                        coef *= comb(bi, ki) * _falling(ci, ki)
                    key = (tuple(ai + ci - ki for ai, ci, ki in zip(a, cc, k)),
                           tuple(bi - ki + di for bi, ki, di in zip(b, k, dd)))
                    v = out.get(key, 0) + coef
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return DiffOp(self.dim, out)

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return self.compose(other)

    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda t: (sum(t[0][1]), t[0])):
            xs = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, a) if k)
            ds = "*".join(f"d{n}" if k == 1 else f"d{n}^{k}" for n, k in zip(names, b) if k)
            body = "*".join(s for s in (xs, ds) if s)
            parts.append(str(c) if not body else body if c == 1 else f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"DiffOp({self.to_str()})"


def _sub_indices(b: Exps, c: Exps):
    """All k <= b componentwise with k <= c (terms where d^k hits x^c)."""
    ranges = [range(min(bi, ci) + 1) for bi, ci in zip(b, c)]
    out = [()]
    for r in ranges:
        out = [t + (v,) for t in out for v in r]
    return out


def right_term(t: Poly, alpha: Exps, beta: Exps) -> Dict[Exps, Fraction]:
    """Terms of t.(x^alpha d^beta) = x^beta d^alpha t."""
    return {add_exps(e, beta): c for e, c in _apply_deriv(t, alpha).items()}


def apply_right(t: Poly, d: DiffOp) -> Poly:
    """Right action of an operator on a point distribution."""
    if t.dim != d.dim:
        raise DimensionMismatch("distribution and operator dimensions differ")
    out: Dict[Exps, Fraction] = {}
    for (a, b), c in d.terms.items():
        for e, v in right_term(t, a, b).items():
            nv = out.get(e, 0) + c * v
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
    return Poly._raw(t.dim, out)
