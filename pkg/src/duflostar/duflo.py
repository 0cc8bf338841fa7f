"""The Duflo jet q, the wheel jet tau, and the maps eta and kappa.

Point distributions are multiplied by analytic germs through the pairing
<p, phi> = sum_a p_a a! phi_a, which makes ``mult_distribution(p, f)`` the
constant-coefficient operator f(d/dx) applied to p.  The star product is
defined by transporting the U(g) product through kappa = beta o (q/tau)(d/dx).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Tuple

from .enveloping import PBWElement, pbw_product, symmetrize, unsymmetrize
from .errors import ConfigError, TruncationTooLow
from .lie import LieAlgebra, trace_power
from .poly import (Jet, Poly, as_q, jet_exp, jet_inverse, matrix_series_tr_log,
                   scalar_log_coeffs, sinh_ratio_coeffs)


@dataclass(frozen=True)
class WheelCoefficients:
    """(c_2, c_4, ..., c_2K); entries past the end count as zero."""

    coeffs: Tuple[Fraction, ...] = ()
    profile: str = "explicit"

    @classmethod
    def zero(cls) -> "WheelCoefficients":
        return cls((), "zero")

    @classmethod
    def duflo(cls, n: int) -> "WheelCoefficients":
        """c_2k read off (1/2) log(sinh(t/2)/(t/2)), so that tau = q."""
        k_max = max(n // 2, 1)
        logs = scalar_log_coeffs(sinh_ratio_coeffs(2 * k_max), 2 * k_max)
        return cls(tuple(logs[2 * k] / 2 for k in range(1, k_max + 1)), "duflo")

    @classmethod
    def explicit(cls, values: Sequence) -> "WheelCoefficients":
        return cls(tuple(as_q(v) for v in values), "explicit")

    @property
    def order_cap(self) -> int:
        return len(self.coeffs)

    def label(self) -> str:
        if self.profile in ("zero", "duflo"):
            return self.profile
        return ",".join(str(c) for c in self.coeffs)


def parse_wheels(text: str, trunc: int) -> WheelCoefficients:
    text = text.strip()
    if text == "zero":
        return WheelCoefficients.zero()
    if text == "duflo":
        return WheelCoefficients.duflo(trunc)
    try:
        return WheelCoefficients.explicit([t for t in text.split(",") if t.strip()])
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad wheel list {text!r}: {exc}") from None


def q_jet(algebra: LieAlgebra, n: int) -> Jet:
    """sqrt(det(sinh(ad x/2)/(ad x/2))) to total degree n."""
    return jet_exp(matrix_series_tr_log(algebra, sinh_ratio_coeffs(n), n))


def tau_jet(algebra: LieAlgebra, wheels: WheelCoefficients, n: int) -> Jet:
    """exp(sum_k c_2k tr(ad x)^2k) to degree n.

    When n exceeds what the wheel list can reach, the missing coefficients are
    taken as zero and the jet carries the flag ``"wheels-truncated"``.
    """
    flags = ()
    if n > 2 * wheels.order_cap + 1 and wheels.profile != "zero":
        flags = ("wheels-truncated",)
    exponent = Poly.zero(algebra.dim)
    for k, c in enumerate(wheels.coeffs, start=1):
        if 2 * k > n:
            break
        if c:
            exponent = exponent + trace_power(algebra, 2 * k).scale(c)
    return Jet.of(jet_exp(Jet.of(exponent, n)).poly, n, flags)


def mult_distribution(p: Poly, f: Jet) -> Poly:
    """The point distribution s with <s, phi> = <p, f phi>.

    Coefficientwise s_g = sum_a p_a (a!/g!) f_{a-g}.
    """
    if f.trunc < p.degree:
        raise TruncationTooLow(f"jet truncated at {f.trunc}, distribution has degree {p.degree}")
    out = {}
    fterms = f.poly.terms
    for a, pa in p.terms.items():
        for d, fd in fterms.items():
            if any(x > y for x, y in zip(d, a)):
                continue
            g = tuple(y - x for x, y in zip(d, a))
            ratio = 1
            for ai, gi in zip(a, g):
                for t in range(gi + 1, ai + 1):
                    ratio *= t
            v = out.get(g, 0) + pa * fd * ratio
            if v:
                out[g] = v
            else:
                out.pop(g, None)
    return Poly._raw(p.dim, out)


@dataclass(frozen=True)
class StarContext:
    algebra: LieAlgebra
    trunc: int
    wheels: WheelCoefficients
    q: Jet
    tau: Jet
    q_over_tau: Jet
    tau_over_q: Jet
    _memo: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def build(cls, algebra: LieAlgebra, trunc: int, wheels: WheelCoefficients | None = None):
        if trunc < 0:
            raise ValueError("truncation must be nonnegative")
        wheels = wheels if wheels is not None else WheelCoefficients.zero()
        q = q_jet(algebra, trunc)
        tau = tau_jet(algebra, wheels, trunc)
        q_over_tau = q * jet_inverse(tau)
        tau_over_q = tau * jet_inverse(q)
        return cls(algebra, trunc, wheels, q, tau, q_over_tau, tau_over_q)

    @property
    def wheels_truncated(self) -> bool:
        return "wheels-truncated" in self.tau.flags

    def require(self, degree: int, what: str):
        if degree > self.trunc:
            raise TruncationTooLow(f"{what} needs degree {degree} > truncation {self.trunc}")


def eta(p: Poly, ctx: StarContext) -> PBWElement:
    ctx.require(p.degree, "eta")
    return symmetrize(mult_distribution(p, ctx.q), ctx.algebra)


def kappa(p: Poly, ctx: StarContext) -> PBWElement:
    ctx.require(p.degree, "kappa")
    return symmetrize(mult_distribution(p, ctx.q_over_tau), ctx.algebra)


def kappa_inv(u: PBWElement, ctx: StarContext) -> Poly:
    ctx.require(u.degree, "kappa_inv")
    return mult_distribution(unsymmetrize(u), ctx.tau_over_q)


def _kappa_monomial(e, ctx: StarContext) -> PBWElement:
    memo = ctx._memo.setdefault("kappa", {})
    hit = memo.get(e)
    if hit is None:
        hit = kappa(Poly.monomial(e), ctx)
        memo[e] = hit
    return hit


def kappa_cached(p: Poly, ctx: StarContext) -> PBWElement:
    ctx.require(p.degree, "kappa")
    out = PBWElement.zero(ctx.algebra)
    for e, c in p.terms.items():
        out = out + _kappa_monomial(e, ctx).scale(c)
    return out


def star(r: Poly, p: Poly, ctx: StarContext) -> Poly:
    """r * p transported from U(g): kappa^-1(kappa(r) kappa(p))."""
    if r.is_zero() or p.is_zero():
        return Poly.zero(ctx.algebra.dim)
    ctx.require(r.degree + p.degree, "star")
    return kappa_inv(pbw_product(kappa_cached(r, ctx), kappa_cached(p, ctx)), ctx)


def poisson_bracket(algebra: LieAlgebra, r: Poly, p: Poly) -> Poly:
    """Linear Poisson bracket {r, p} = sum_ij d_i r d_j p [x_i, x_j]."""
    n = algebra.dim
    out = Poly.zero(n)
    dr = [r.diff(i) for i in range(n)]
    dp = [p.diff(j) for j in range(n)]
    for i in range(n):
        if dr[i].is_zero():
            continue
        for j in range(n):
            if dp[j].is_zero():
                continue
            for k, c in algebra.bracket_terms(i, j):
                out = out + (dr[i] * dp[j] * Poly.var(n, k)).scale(c)
    return out

