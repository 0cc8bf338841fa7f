"""Verification suites over one (algebra, truncation, wheel profile) cell.

Every check produces a :class:`CheckRecord` whose verdict is one of
``pass``, ``fail``, ``inconclusive`` (bounded R-membership only) or
``skipped(truncation)`` (the check needs degrees above the truncation).
"""
from __future__ import annotations

import json
import random
import re
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import lie
from .diffops import (D_action, T_action, annihilates_invariants, check_decomposition,
                      extract_right_star_operator, fit_right_operator, lemma1_check,
                      r_ideal_membership, verify_right_operator)
from .duflo import StarContext, eta, parse_wheels, poisson_bracket, star
from .enveloping import PBWElement, pbw_product, symmetrize, unsymmetrize
from .errors import (AnsatzInfeasible, AntisymmetryViolation, ConfigError, JacobiViolation,
                     ParseError, UnknownName)
from .invariants import adjoint_derivation, centrality_check, invariant_basis
from .lie import LieAlgebra, trace_power
from .operators import DiffOp
from .poly import Poly, monomials_of_degree, monomials_up_to

SUITES = ("axioms", "duflo-iso", "theorem2", "theorem4", "theorem5", "lemma1")

OUT_DIR_ENV = "DUFLOSTAR_OUT_DIR"

OUT_OF_SCOPE = (
    "numerical values of the wheel constants c_2k (taken as inputs)",
    "growth estimate c_n ~ alpha^n for some positive constant alpha",
    "eta on germs of invariant eigendistributions",
    "local solvability of bi-invariant differential operators",
    "germ-level (non-polynomial) distributions and convergence of the series",
)

# ---------------------------------------------------------------------------
# algebra files


_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


@dataclass
class RawAlgebra:
    dim: int
    basis_names: List[str]
    constants: Dict[tuple, List[Fraction]]
    name: str = ""

    def validate(self) -> LieAlgebra:
        return lie.validate(self.dim, self.basis_names, self.constants, name=self.name)


def read_algebra_file(path) -> RawAlgebra:
    """Parse the text format without checking the Lie axioms."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    dim = None
    names = None
    given = {}
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        words = text.split()
        col = raw.find(words[0]) + 1
        if dim is None:
            if words[0] != "dim" or len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'dim N' with N >= 1", lineno, col)
            dim = int(words[1])
            continue
        if names is None:
            if words[0] != "basis" or len(words) != dim + 1:
                raise ParseError(f"expected 'basis' followed by {dim} names", lineno, col)
            names = words[1:]
            if len(set(names)) != dim:
                raise ParseError("basis names must be distinct", lineno, col)
            continue
        if words[0] != "bracket":
            raise ParseError(f"unexpected keyword {words[0]!r}", lineno, col)
        if ":" not in words:
            raise ParseError("bracket line needs ':' before the coordinates", lineno, col)
        sep = words.index(":")
        idx, coords = words[1:sep], words[sep + 1:]
        if len(idx) != 2:
            raise ParseError("bracket needs two indices", lineno, col)
        ij = []
        for w in idx:
            if not w.isdigit() or not 1 <= int(w) <= dim:
                raise ParseError(f"bad index {w!r}, expected 1..{dim}", lineno, raw.find(w) + 1)
            ij.append(int(w) - 1)
        if len(coords) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(coords)}", lineno, col)
        values = []
        for w in coords:
            if not _RATIONAL.match(w):
                raise ParseError(f"malformed rational {w!r}", lineno, raw.find(w) + 1)
            try:
                values.append(Fraction(w))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {w!r}", lineno, raw.find(w) + 1) from None
        key = tuple(ij)
        if key in given:
            raise ParseError(f"duplicate bracket {idx[0]} {idx[1]}", lineno, col)
        given[key] = values
    if dim is None or names is None:
        raise ParseError("file must start with 'dim' and 'basis' lines")
    constants = dict(given)
    for (i, j), values in given.items():
        if (j, i) not in given and i != j:
            constants[(j, i)] = [-v for v in values]
    return RawAlgebra(dim, names, constants, name=path.stem)


def parse_algebra_file(path) -> LieAlgebra:
    return read_algebra_file(path).validate()


def format_algebra(algebra: LieAlgebra) -> str:
    lines = [f"dim {algebra.dim}", "basis " + " ".join(algebra.basis_names)]
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            coords = algebra.c[i][j]
            if any(coords):
                lines.append(f"bracket {i + 1} {j + 1} : " + " ".join(str(v) for v in coords))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# config and report


@dataclass
class SuiteConfig:
    algebra: str
    trunc: int
    wheels: str = "zero"
    suite: str = "all"
    order_bound: int = 2
    coeff_bound: int = 2
    membership_degree: int = 3
    seed: int = 0
    samples: int = 20
    sample_degree: int = 3
    fmt: str = "text"
    out: Optional[str] = None
    timing: bool = False

    def check(self):
        if self.trunc < 1:
            raise ConfigError("truncation must be >= 1")
        if self.suite not in SUITES + ("all",):
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES + ('all',))}")
        if self.fmt not in ("text", "json"):
            raise ConfigError("format must be text or json")
        for name in ("order_bound", "coeff_bound", "membership_degree", "samples", "sample_degree"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")


@dataclass
class CheckRecord:
    suite: str
    check: str
    algebra: str
    params: dict
    verdict: str
    witness: Optional[dict] = None
    seconds: float = 0.0

    def sort_key(self):
        return (SUITES.index(self.suite) if self.suite in SUITES else 99, self.algebra,
                self.params.get("degree", -1), self.check, json.dumps(self.params, sort_keys=True))


@dataclass
class Report:
    config: dict
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "inconclusive": 0, "skipped": 0}
        for c in self.checks:
            out["skipped" if c.verdict.startswith("skipped") else c.verdict] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 1 if self.summary["fail"] else 0

    def to_json(self, timing: bool = False) -> str:
        checks = []
        for c in sorted(self.checks, key=CheckRecord.sort_key):
            d = asdict(c)
            if not timing:
                d.pop("seconds")
            checks.append(d)
        doc = {
            "config": self.config,
            "checks": checks,
            "summary": self.summary,
            "coverage": {"suites": list(SUITES), "out_of_scope": list(OUT_OF_SCOPE)},
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_text(self, timing: bool = True) -> str:
        lines = [f"suite={self.config['suite']} algebra={self.config['algebra']} "
                 f"trunc={self.config['trunc']} wheels={self.config['wheels']} seed={self.config['seed']}"]
        for c in sorted(self.checks, key=CheckRecord.sort_key):
            params = " ".join(f"{k}={v}" for k, v in sorted(c.params.items()))
            line = f"[{c.verdict.upper():>12}] {c.suite:<9} {c.check:<26} {params}"
            if timing:
                line += f"  ({c.seconds:.2f}s)"
            lines.append(line)
            if c.witness and c.verdict != "pass":
                lines.append(f"               witness: {json.dumps(c.witness, sort_keys=True)}")
        s = self.summary
        lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive, "
                     f"{s['skipped']} skipped")
        lines.append("out of scope: " + "; ".join(OUT_OF_SCOPE))
        return "\n".join(lines) + "\n"


def poly_json(p: Poly, names: Sequence[str]) -> dict:
    return {"poly": p.to_str(names),
            "terms": [[list(e), str(c)] for e, c in p.items()]}


def op_json(d: DiffOp, names: Sequence[str]) -> dict:
    return {"op": d.to_str(names),
            "terms": [[list(a), list(b), str(c)] for (a, b), c in d.items()]}


def random_poly(rng: random.Random, dim: int, max_deg: int, nterms: int = 3,
                min_deg: int = 0) -> Poly:
    monos = [m for m in monomials_up_to(dim, max_deg) if sum(m) >= min_deg]
    terms = {}
    for _ in range(nterms):
        m = rng.choice(monos)
        num = rng.choice([v for v in range(-5, 6) if v])
        terms[m] = terms.get(m, 0) + Fraction(num, rng.randint(1, 4))
    return Poly(dim, terms)


# ---------------------------------------------------------------------------
# suites


class _Runner:
    def __init__(self, cfg: SuiteConfig, algebra: LieAlgebra):
        self.cfg = cfg
        self.L = algebra
        self.names = algebra.basis_names
        self.rng = random.Random(cfg.seed)
        self.records: List[CheckRecord] = []
        self.ctx = StarContext.build(algebra, cfg.trunc, parse_wheels(cfg.wheels, cfg.trunc))

    def record(self, suite, check, params, fn: Callable[[], tuple]):
        t0 = time.perf_counter()
        verdict, witness = fn()
        self.records.append(CheckRecord(suite, check, self.L.label, params, verdict, witness,
                                        round(time.perf_counter() - t0, 4)))

    def skip(self, suite, check, params, need):
        self.records.append(CheckRecord(suite, check, self.L.label, params, "skipped(truncation)",
                                        {"needs_degree": need, "trunc": self.cfg.trunc}))

    def fits(self, degree):
        return degree <= self.cfg.trunc

    def pj(self, p):
        return poly_json(p, self.names)

    # -- axioms / structural properties
    def axioms(self):
        L, N, rng = self.L, self.cfg.trunc, self.rng
        for k in (2, 4, 6):
            def trace_inv(k=k):
                tp = trace_power(L, k)
                for a in range(L.dim):
                    v = adjoint_derivation(L, a).apply(tp)
                    if not v.is_zero():
                        return "fail", {"a": a, "value": self.pj(v)}
                return "pass", None
            self.record("axioms", "trace-power-invariance", {"degree": k}, trace_inv)

        d = min(4, N)

        def pbw_assoc():
            for _ in range(self.cfg.samples):
                u, v, w = (symmetrize(random_poly(rng, L.dim, d), L) for _ in range(3))
                lhs = pbw_product(pbw_product(u, v), w)
                rhs = pbw_product(u, pbw_product(v, w))
                if lhs != rhs:
                    return "fail", {"lhs": lhs.to_str(), "rhs": rhs.to_str()}
            return "pass", None
        self.record("axioms", "pbw-associativity", {"degree": d}, pbw_assoc)

        def roundtrip():
            for _ in range(self.cfg.samples):
                p = random_poly(rng, L.dim, d)
                u = symmetrize(p, L)
                back = unsymmetrize(u)
                if back != p:
                    return "fail", {"p": self.pj(p), "back": self.pj(back)}
                low = u - PBWElement(L, p.homogeneous(p.degree).terms)
                if p.degree > 0 and low.degree >= p.degree:
                    return "fail", {"p": self.pj(p), "triangularity": low.to_str()}
            return "pass", None
        self.record("axioms", "symmetrize-roundtrip", {"degree": d}, roundtrip)

        ds = min(4, N // 3)
        if ds < 1:
            self.skip("axioms", "star-associativity", {"degree": 1}, 3)
        else:
            def star_assoc():
                for _ in range(self.cfg.samples):
                    r, p, s = (random_poly(rng, L.dim, ds) for _ in range(3))
                    lhs = star(star(r, p, self.ctx), s, self.ctx)
                    rhs = star(r, star(p, s, self.ctx), self.ctx)
                    if lhs != rhs:
                        return "fail", {"r": self.pj(r), "p": self.pj(p), "s": self.pj(s),
                                        "difference": self.pj(lhs - rhs)}
                return "pass", None
            self.record("axioms", "star-associativity", {"degree": ds}, star_assoc)

        dp = min(4, N // 2)

        def poisson():
            for _ in range(self.cfg.samples):
                r, p = random_poly(rng, L.dim, dp), random_poly(rng, L.dim, dp)
                if r.is_zero() or p.is_zero():
                    continue
                diff = star(r, p, self.ctx) - star(p, r, self.ctx) - poisson_bracket(L, r, p)
                if diff.degree > r.degree + p.degree - 2:
                    return "fail", {"r": self.pj(r), "p": self.pj(p), "difference": self.pj(diff)}
            return "pass", None
        self.record("axioms", "poisson-first-order", {"degree": dp}, poisson)

        def jets():
            for label, jet in (("q", self.ctx.q), ("tau", self.ctx.tau)):
                if jet.constant_term() != 1 or not jet.poly.is_even():
                    return "fail", {"jet": label, "value": self.pj(jet.poly)}
                for a in range(L.dim):
                    v = adjoint_derivation(L, a).apply(jet.poly)
                    if not v.is_zero():
                        return "fail", {"jet": label, "a": a, "value": self.pj(v)}
            return "pass", None
        self.record("axioms", "q-tau-even-invariant", {"degree": N}, jets)

    # -- Duflo isomorphism on invariants
    def duflo_iso(self):
        L, ctx = self.L, self.ctx
        top = 6
        for d in range(top + 1):
            basis = invariant_basis(L, d)
            if not basis.polys:
                continue
            if not self.fits(d):
                self.skip("duflo-iso", "eta-central", {"degree": d}, d)
                continue

            def central(basis=basis):
                for p in basis:
                    if not centrality_check(eta(p, ctx), L):
                        return "fail", {"p": self.pj(p)}
                return "pass", None
            self.record("duflo-iso", "eta-central", {"degree": d}, central)
        for d1 in range(top + 1):
            for d2 in range(d1, top + 1 - d1):
                b1, b2 = invariant_basis(L, d1).polys, invariant_basis(L, d2).polys
                if not b1 or not b2:
                    continue
                params = {"degree": d1 + d2, "d1": d1, "d2": d2}
                if not self.fits(d1 + d2):
                    self.skip("duflo-iso", "eta-multiplicative", params, d1 + d2)
                    continue

                def mult(b1=b1, b2=b2):
                    for p1 in b1:
                        for p2 in b2:
                            lhs = eta(p1 * p2, ctx)
                            rhs = pbw_product(eta(p1, ctx), eta(p2, ctx))
                            if lhs != rhs:
                                return "fail", {"p1": self.pj(p1), "p2": self.pj(p2),
                                                "difference": (lhs - rhs).to_str()}
                    return "pass", None
                self.record("duflo-iso", "eta-multiplicative", params, mult)

    def _annihilation(self, suite, kind, factory):
        L = self.L
        for dp in range(0, 5):
            for idx, p in enumerate(invariant_basis(L, dp).polys):
                for dP in range(0, 5):
                    if not invariant_basis(L, dP).polys:
                        continue
                    params = {"degree": dP, "p_degree": dp, "p_index": idx}
                    if not self.fits(dp + dP):
                        self.skip(suite, f"{kind}-annihilates", params, dp + dP)
                        continue

                    def run(p=p, dP=dP):
                        action = factory(p, self.ctx)
                        for P in invariant_basis(L, dP):
                            v = action(P)
                            if not v.is_zero():
                                return "fail", {"p": self.pj(p), "P": self.pj(P), "value": self.pj(v)}
                        return "pass", None
                    self.record(suite, f"{kind}-annihilates", params, run)

    def theorem2(self):
        self._annihilation("theorem2", "D_p", D_action)

    def theorem4(self):
        L, N = self.L, self.cfg.trunc
        test_degree = 5
        for d in range(4):
            for g in monomials_of_degree(L.dim, d):
                p = Poly.monomial(g)
                params = {"degree": d, "p": p.to_str(self.names), "test_degree": test_degree}
                if not self.fits(d + test_degree):
                    self.skip("theorem4", "right-star-operator", params, d + test_degree)
                    continue

                def run(p=p, d=d):
                    try:
                        fit = extract_right_star_operator(p, self.ctx, test_degree, max_slack=2)
                    except AnsatzInfeasible as exc:
                        # report how far the coefficient degree had to go
                        try:
                            wide = extract_right_star_operator(p, self.ctx, test_degree,
                                                               max_slack=test_degree)
                            needed = wide.slack
                        except AnsatzInfeasible:
                            needed = None
                        return "fail", {"reason": "ansatz infeasible at |a| <= |b| + 2",
                                        "witness": repr(exc.witness),
                                        "slack_needed": needed,
                                        "attempts": [[a.order, a.slack] for a in exc.attempts]}
                    bad = verify_right_operator(lambda r: star(r, p, self.ctx), fit.operator,
                                                L.dim, test_degree)
                    if bad is not None or not fit.unique or fit.order > max(d, 0):
                        return "fail", {"unique": fit.unique, "order": fit.order,
                                        "operator": op_json(fit.operator, self.names)}
                    return "pass", {"order": fit.order, "slack": fit.slack,
                                    "escalations": len(fit.attempts) - 1, "unique": fit.unique}
                self.record("theorem4", "right-star-operator", params, run)

    def theorem5(self):
        self._annihilation("theorem5", "T_p", T_action)
        L, cfg = self.L, self.cfg
        n, k, m = cfg.membership_degree, cfg.order_bound, cfg.coeff_bound
        for dp in range(0, 3):
            for idx, p in enumerate(invariant_basis(L, dp).polys):
                params = {"degree": dp, "p_index": idx, "N": n, "K": k, "M": m}
                if not self.fits(n + dp):
                    self.skip("theorem5", "T_p-in-R", params, n + dp)
                    continue

                def run(p=p):
                    action = T_action(p, self.ctx)
                    res = r_ideal_membership(action, L, n, k, m)
                    if not res.found:
                        return "inconclusive", {"rank": res.rank, "unknowns": res.unknowns}
                    if not check_decomposition(action, L, res.decomposition, n):
                        return "fail", {"reason": "decomposition does not reproduce the action"}
                    return "pass", {"decomposition": [op_json(e, self.names) for e in res.decomposition]}
                self.record("theorem5", "T_p-in-R", params, run)

    def lemma1(self):
        L, cfg = self.L, self.cfg
        d = cfg.sample_degree
        params = {"degree": d, "samples": cfg.samples}
        if not self.fits(2 * d):
            self.skip("lemma1", "D_p=T_p.q/tau", params, 2 * d)
            return

        def run():
            for _ in range(cfg.samples):
                r, p = random_poly(self.rng, L.dim, d), random_poly(self.rng, L.dim, d)
                if not lemma1_check(r, p, self.ctx):
                    return "fail", {"r": self.pj(r), "p": self.pj(p)}
            return "pass", None
        self.record("lemma1", "D_p=T_p.q/tau", params, run)


def resolve_algebra(source: str):
    """Catalog name or file path -> RawAlgebra-like object with .validate()."""
    try:
        alg = lie.catalog(source)
        return RawAlgebra(alg.dim, list(alg.basis_names),
                          {(i, j): list(alg.c[i][j]) for i in range(alg.dim) for j in range(alg.dim)},
                          name=source)
    except UnknownName:
        pass
    if Path(source).exists():
        return read_algebra_file(source)
    raise ConfigError(f"{source!r} is neither a catalog name nor a readable file")


def run_suite(cfg: SuiteConfig) -> Report:
    cfg.check()
    raw = resolve_algebra(cfg.algebra)
    config = {k: v for k, v in asdict(cfg).items() if k not in ("out", "fmt", "timing")}
    report = Report(config)
    try:
        algebra = raw.validate()
    except (AntisymmetryViolation, JacobiViolation) as exc:
        witness = {"error": type(exc).__name__, "message": str(exc), "residue": str(exc.residue)}
        report.checks.append(CheckRecord("axioms", "lie-axioms", raw.name or cfg.algebra,
                                         {"degree": 0}, "fail", witness))
        return report
    runner = _Runner(cfg, algebra)
    runner.record("axioms", "lie-axioms", {"degree": 0}, lambda: ("pass", None))
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    for name in suites:
        getattr(runner, name.replace("-", "_"))()
    report.checks.extend(runner.records)
    return report
