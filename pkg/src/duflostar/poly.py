"""Sparse multivariate polynomials and total-degree jets over Q.

A :class:`Poly` is an immutable map from exponent tuples to nonzero
``Fraction`` coefficients.  The same object is read as an element of S(g),
as a polynomial function on g, or as a distribution supported at 0,
depending on the caller.

A :class:`Jet` is a polynomial together with an explicit truncation degree;
coefficients above the truncation are unknown and always discarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial
from typing import Dict, Iterable, Iterator, Sequence, Tuple

from .errors import BadConstantTerm, BadLeadingCoefficient, DimensionMismatch

Exps = Tuple[int, ...]


def as_q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def exps_factorial(a: Exps) -> int:
    out = 1
    for k in a:
        out *= factorial(k)
    return out


@lru_cache(maxsize=None)
def monomials_of_degree(dim: int, d: int) -> Tuple[Exps, ...]:
    """All exponent tuples of total degree ``d``, in a fixed deterministic order."""
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(dim), d):
        e = [0] * dim
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


def monomials_up_to(dim: int, d: int) -> Tuple[Exps, ...]:
    return tuple(m for k in range(d + 1) for m in monomials_of_degree(dim, k))


class Poly:
    __slots__ = ("dim", "terms", "_deg")

    def __init__(self, dim: int, terms: Dict[Exps, Fraction] | None = None):
        self.dim = dim
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != dim:
                        raise DimensionMismatch(f"exponent {e} does not have length {dim}")
                    clean[tuple(e)] = as_q(c)
        self.terms = clean
        self._deg = max((sum(e) for e in clean), default=-1)

    @classmethod
    def _raw(cls, dim: int, terms: Dict[Exps, Fraction]) -> "Poly":
        # trusted constructor: terms already cleaned
        p = cls.__new__(cls)
        p.dim = dim
        p.terms = terms
        p._deg = max((sum(e) for e in terms), default=-1)
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls._raw(dim, {})

    @classmethod
    def one(cls, dim: int) -> "Poly":
        return cls.constant(dim, 1)

    @classmethod
    def constant(cls, dim: int, c) -> "Poly":
        c = as_q(c)
        return cls._raw(dim, {(0,) * dim: c} if c else {})

    @classmethod
    def var(cls, dim: int, i: int) -> "Poly":
        e = [0] * dim
        e[i] = 1
        return cls._raw(dim, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        c = as_q(c)
        return cls._raw(len(exps), {tuple(exps): c} if c else {})

    # basic queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._deg

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, Fraction(0))

    def items(self) -> Iterator[Tuple[Exps, Fraction]]:
        return iter(sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])))

    def homogeneous(self, d: int) -> "Poly":
        return Poly._raw(self.dim, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, n: int) -> "Poly":
        if self._deg <= n:
            return self
        return Poly._raw(self.dim, {e: c for e, c in self.terms.items() if sum(e) <= n})

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_even(self) -> bool:
        return all(sum(e) % 2 == 0 for e in self.terms)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.dim, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = as_q(c)
        if not c:
            return Poly.zero(self.dim)
        return Poly._raw(self.dim, {e: c * v for e, v in self.terms.items()})

    def mul(self, other: "Poly", trunc: int | None = None) -> "Poly":
        self._check(other)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if trunc is not None and d1 + sum(e2) > trunc:
                    continue
                e = add_exps(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly._raw(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.dim, other)
        return NotImplemented

    __hash__ = None

    def diff(self, i: int, k: int = 1) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i] >= k:
                f = 1
                for t in range(k):
                    f *= e[i] - t
                ne = list(e)
                ne[i] -= k
                out[tuple(ne)] = c * f
        return Poly._raw(self.dim, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        pt = [as_q(v) for v in point]
        for e, c in self.terms.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (-sum(t[0]), t[0]), reverse=False):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"


def poly_from_dict(dim: int, terms: Dict[Exps, object]) -> Poly:
    return Poly(dim, {tuple(e): as_q(c) for e, c in terms.items()})


def linear_form(coeffs: Sequence) -> Poly:
    """The degree-1 polynomial sum_i coeffs[i] x_i."""
    dim = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        c = as_q(c)
        if c:
            e = [0] * dim
            e[i] = 1
            out[tuple(e)] = c
    return Poly._raw(dim, out)


def pairing(dist: Poly, func: Poly) -> Fraction:
    """<p, phi> = sum_a p_a a! phi_a: p acts as p(d/dx) at 0."""
    total = Fraction(0)
    for e, c in dist.terms.items():
        v = func.terms.get(e)
        if v:
            total += c * v * exps_factorial(e)
    return total


# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True)
class Jet:
    poly: Poly
    trunc: int
    flags: frozenset = frozenset()

    def __post_init__(self):
        if self.trunc < 0:
            raise ValueError("truncation must be nonnegative")
        if self.poly.degree > self.trunc:
            object.__setattr__(self, "poly", self.poly.truncate(self.trunc))

    @classmethod
    def of(cls, poly: Poly, trunc: int, flags: Iterable[str] = ()) -> "Jet":
        return cls(poly.truncate(trunc), trunc, frozenset(flags))

    @property
    def dim(self) -> int:
        return self.poly.dim

    def constant_term(self) -> Fraction:
        return self.poly.constant_term()

    def _other(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        if isinstance(other, Poly):
            return Jet(other.truncate(self.trunc), self.trunc)
        return Jet(Poly.constant(self.dim, other), self.trunc)

    def __add__(self, other):
        other = self._other(other)
        n = min(self.trunc, other.trunc)
        return Jet((self.poly + other.poly).truncate(n), n, self.flags | other.flags)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.poly, self.trunc, self.flags)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Jet(self.poly.scale(other), self.trunc, self.flags)
        other = self._other(other)
        n = min(self.trunc, other.trunc)
        return Jet(self.poly.mul(other.poly, trunc=n), n, self.flags | other.flags)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.trunc == other.trunc and self.poly == other.poly
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"Jet({self.poly.to_str()} + O({self.trunc + 1}))"


def _lowest_degree(p: Poly) -> int:
    return min((sum(e) for e in p.terms), default=10**9)


def jet_exp(j: Jet) -> Jet:
    if j.constant_term() != 0:
        raise BadConstantTerm("jet_exp needs a zero constant term")
    n = j.trunc
    low = _lowest_degree(j.poly)
    out = Poly.one(j.dim)
    power = Poly.one(j.dim)
    k = 1
    while k * low <= n:
        power = power.mul(j.poly, trunc=n).scale(Fraction(1, k))
        if power.is_zero():
            break
        out = out + power
        k += 1
    return Jet(out, n, j.flags)


def _require_unit(j: Jet, what: str):
    if j.constant_term() != 1:
        raise BadConstantTerm(f"{what} needs constant term 1, got {j.constant_term()}")


def jet_log(j: Jet) -> Jet:
    _require_unit(j, "jet_log")
    n = j.trunc
    x = j.poly - 1
    low = _lowest_degree(x)
    out = Poly.zero(j.dim)
    power = Poly.one(j.dim)
    k = 1
    while k * low <= n:
        power = power.mul(x, trunc=n)
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
        k += 1
    return Jet(out, n, j.flags)


def jet_inverse(j: Jet) -> Jet:
    _require_unit(j, "jet_inverse")
    n = j.trunc
    x = -(j.poly - 1)
    low = _lowest_degree(x)
    out = Poly.one(j.dim)
    power = Poly.one(j.dim)
    k = 1
    while k * low <= n:
        power = power.mul(x, trunc=n)
        if power.is_zero():
            break
        out = out + power
        k += 1
    return Jet(out, n, j.flags)


# ---------------------------------------------------------------------------
# matrix series


def sinh_ratio_coeffs(n: int) -> list:
    """Coefficients g_0..g_n of sinh(t/2)/(t/2) = sum_k t^{2k} / (4^k (2k+1)!)."""
    return [Fraction(1, 4 ** (m // 2) * factorial(m + 1)) if m % 2 == 0 else Fraction(0)
            for m in range(n + 1)]


def scalar_log_coeffs(g: Sequence, n: int) -> list:
    """Coefficients of log(G(t)) up to t^n for a univariate series with g_0 = 1."""
    jet = Jet(Poly(1, {(m,): as_q(c) for m, c in enumerate(g[: n + 1])}), n)
    lg = jet_log(jet)
    return [lg.poly.coeff((m,)) for m in range(n + 1)]


def matmul_trunc(a, b, n: int):
    size = len(a)
    dim = a[0][0].dim
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = Poly.zero(dim)
            for k in range(size):
                if a[i][k].terms and b[k][j].terms:
                    acc = acc + a[i][k].mul(b[k][j], trunc=n)
            row.append(acc)
        out.append(row)
    return out


def matrix_series_tr_log(algebra, g_coeffs: Sequence, n: int) -> Jet:
    """(1/2) tr log G(ad x) as a jet of total degree ``n``.

    Evaluated as log(I + X) with X = G(A) - I, a matrix of jets, and the
    log series summed until X^k drops below the truncation.
    """
    from .lie import ad_generic

    g = [as_q(c) for c in g_coeffs]
    if not g or g[0] != 1:
        raise BadLeadingCoefficient("the series G must have G(0) = 1")
    if n < 0:
        raise ValueError("truncation must be nonnegative")
    a = ad_generic(algebra)
    size = algebra.dim
    dim = algebra.dim
    zero = Poly.zero(dim)

    def scaled_add(acc, m, c):
        return [[acc[i][j] + m[i][j].scale(c) for j in range(size)] for i in range(size)]

    x = [[zero] * size for _ in range(size)]
    power = [[Poly.one(dim) if i == j else zero for j in range(size)] for i in range(size)]
    for m in range(1, n + 1):
        power = matmul_trunc(power, a, n)
        c = g[m] if m < len(g) else Fraction(0)
        if c:
            x = scaled_add(x, power, c)
    log_m = [[zero] * size for _ in range(size)]
    xp = [[Poly.one(dim) if i == j else zero for j in range(size)] for i in range(size)]
    for k in range(1, n + 1):
        xp = matmul_trunc(xp, x, n)
        if all(e.is_zero() for row in xp for e in row):
            break
        log_m = scaled_add(log_m, xp, Fraction((-1) ** (k + 1), k))
    trace = zero
    for i in range(size):
        trace = trace + log_m[i][i]
    return Jet(trace.scale(Fraction(1, 2)), n)
