"""Lie algebras given by exact structure constants.

Convention: ``c[i][j][k]`` is c^k_{ij}, so that [e_i, e_j] = sum_k c^k_{ij} e_k.
Indices are 0-based in code; the algebra-file format uses 1-based indices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .errors import AntisymmetryViolation, JacobiViolation, OddPower, UnknownName
from .poly import Poly, as_q, matmul_trunc

Constants = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_names: Tuple[str, ...]
    c: Constants
    name: str = field(default="", compare=False)
    # per-algebra memo tables (PBW straightening, symmetrization); never part of equality
    _memo: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def bracket_coords(self, i: int, j: int) -> Tuple[Fraction, ...]:
        return self.c[i][j]

    def bracket_terms(self, i: int, j: int):
        """Nonzero (k, c^k_ij) pairs."""
        key = ("bt", i, j)
        hit = self._memo.get(key)
        if hit is None:
            hit = tuple((k, v) for k, v in enumerate(self.c[i][j]) if v)
            self._memo[key] = hit
        return hit

    def bracket(self, u: Sequence, v: Sequence) -> Tuple[Fraction, ...]:
        """Bracket of two coordinate vectors."""
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, ck in self.bracket_terms(i, j):
                    out[k] += as_q(a) * as_q(b) * ck
        return tuple(out)

    def is_abelian(self) -> bool:
        return all(v == 0 for row in self.c for col in row for v in col)

    @property
    def label(self) -> str:
        return self.name or f"dim{self.dim}"


def _normalize(dim: int, raw) -> Constants:
    if isinstance(raw, dict):
        table = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coords in raw.items():
            table[i][j] = [as_q(v) for v in coords]
    else:
        table = [[[as_q(v) for v in raw[i][j]] for j in range(dim)] for i in range(dim)]
    return tuple(tuple(tuple(col) for col in row) for row in table)


def jacobi_residue(c: Constants, i: int, j: int, k: int, l: int) -> Fraction:
    n = len(c)
    return sum((c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                for m in range(n)), Fraction(0))


def validate(dim: int, basis_names: Sequence[str], raw_constants, name: str = "") -> LieAlgebra:
    """Check antisymmetry and Jacobi exhaustively and build the algebra."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if len(basis_names) != dim:
        raise ValueError(f"expected {dim} basis names, got {len(basis_names)}")
    c = _normalize(dim, raw_constants)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                s = c[i][j][k] + c[j][i][k]
                if s:
                    raise AntisymmetryViolation(i, j, k, s)
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                for l in range(dim):
                    r = jacobi_residue(c, i, j, k, l)
                    if r:
                        raise JacobiViolation(i, j, k, l, r)
    return LieAlgebra(dim, tuple(basis_names), c, name=name)


def from_brackets(basis_names: Sequence[str], brackets: Dict[Tuple[str, str], Dict[str, object]],
                  name: str = "") -> LieAlgebra:
    """Build from named brackets {(a, b): {c: coeff}}, filling [b, a] by antisymmetry."""
    idx = {n: i for i, n in enumerate(basis_names)}
    dim = len(basis_names)
    raw = {}
    for (a, b), image in brackets.items():
        coords = [Fraction(0)] * dim
        for target, coeff in image.items():
            coords[idx[target]] = as_q(coeff)
        raw[(idx[a], idx[b])] = coords
        raw.setdefault((idx[b], idx[a]), [-v for v in coords])
    return validate(dim, basis_names, raw, name=name)


_ABELIAN = re.compile(r"abelian_(\d+)$")

CATALOG_NAMES = ("abelian_n", "heisenberg3", "sl2", "so3", "aff1", "ut3")


def catalog(name: str) -> LieAlgebra:
    m = _ABELIAN.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownName(name)
        return from_brackets([f"x{i + 1}" for i in range(n)], {}, name=name)
    if name == "heisenberg3":
        return from_brackets(["x", "y", "z"], {("x", "y"): {"z": 1}}, name=name)
    if name == "sl2":
        # PBW order e < f < h
        return from_brackets(["e", "f", "h"], {
            ("h", "e"): {"e": 2},
            ("h", "f"): {"f": -2},
            ("e", "f"): {"h": 1},
        }, name=name)
    if name == "so3":
        return from_brackets(["e1", "e2", "e3"], {
            ("e1", "e2"): {"e3": 1},
            ("e2", "e3"): {"e1": 1},
            ("e3", "e1"): {"e2": 1},
        }, name=name)
    if name == "aff1":
        return from_brackets(["e1", "e2"], {("e1", "e2"): {"e2": 1}}, name=name)
    if name == "ut3":
        # strictly upper triangular 3x3, basis E12, E13, E23: only [E12, E23] = E13
        return from_brackets(["E12", "E13", "E23"], {("E12", "E23"): {"E13": 1}}, name=name)
    raise UnknownName(name)


def ad_generic(algebra: LieAlgebra):
    """Matrix of ad(x) with linear entries: entry (j, k) = sum_i c^j_{ik} x_i."""
    n = algebra.dim
    key = "ad_generic"
    hit = algebra._memo.get(key)
    if hit is not None:
        return hit
    rows = []
    for j in range(n):
        row = []
        for k in range(n):
            terms = {}
            for i in range(n):
                v = algebra.c[i][k][j]
                if v:
                    e = [0] * n
                    e[i] = 1
                    terms[tuple(e)] = v
            row.append(Poly(n, terms))
        rows.append(tuple(row))
    hit = tuple(rows)
    algebra._memo[key] = hit
    return hit


def specialize(matrix, point: Sequence):
    return [[entry.evaluate(point) for entry in row] for row in matrix]


def trace_power(algebra: LieAlgebra, k: int) -> Poly:
    """tr((ad x)^k) for even k >= 2; homogeneous of degree k."""
    if k < 2 or k % 2:
        raise OddPower(f"trace_power needs an even power >= 2, got {k}")
    a = [list(r) for r in ad_generic(algebra)]
    power = a
    for _ in range(k - 1):
        power = matmul_trunc(power, a, k)
    out = Poly.zero(algebra.dim)
    for i in range(algebra.dim):
        out = out + power[i][i]
    return out
