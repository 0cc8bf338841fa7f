"""Exact sparse Gauss-Jordan elimination over Q.

Rows are dicts {column: Fraction}.  Columns can be any hashable keys; the
pivot order follows the order in which columns are first seen unless an
explicit ``order`` is supplied.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Row = Dict[Hashable, Fraction]


@dataclass
class Solution:
    values: Optional[Dict[Hashable, Fraction]]  # None when inconsistent
    rank: int
    nvars: int
    witness: Optional[Tuple[Hashable, Fraction]] = None  # (equation label, residual)

    @property
    def consistent(self) -> bool:
        return self.values is not None

    @property
    def unique(self) -> bool:
        return self.consistent and self.rank == self.nvars


class Eliminator:
    """Incremental echelon form; feed equations one at a time."""

    def __init__(self, order: Sequence[Hashable] | None = None):
        self._rank_of = {c: i for i, c in enumerate(order)} if order is not None else {}
        self.pivots: Dict[Hashable, Tuple[Row, Fraction]] = {}
        self.columns: Dict[Hashable, None] = {}
        self.inconsistent: Optional[Tuple[Hashable, Fraction]] = None

    def _key(self, col):
        r = self._rank_of.get(col)
        if r is None:
            r = len(self._rank_of)
            self._rank_of[col] = r
        return r

    def add(self, row: Row, rhs=0, label: Hashable = None) -> bool:
        """Reduce and insert; returns False if the row became 0 = nonzero."""
        row = {c: Fraction(v) for c, v in row.items() if v}
        rhs = Fraction(rhs)
        for c in row:
            self.columns.setdefault(c, None)
            self._key(c)
        changed = True
        while changed:
            changed = False
            for c in list(row):
                piv = self.pivots.get(c)
                if piv is None or c not in row:
                    continue
                f = row[c]
                prow, prhs = piv
                for pc, pv in prow.items():
                    v = row.get(pc, 0) - f * pv
                    if v:
                        row[pc] = v
                    else:
                        row.pop(pc, None)
                rhs -= f * prhs
                changed = True
        if not row:
            if rhs and self.inconsistent is None:
                self.inconsistent = (label, rhs)
            return not rhs
        col = min(row, key=self._key)
        inv = 1 / row[col]
        row = {c: v * inv for c, v in row.items()}
        rhs *= inv
        # keep existing pivot rows reduced w.r.t. the new pivot
        for pc, (prow, prhs) in list(self.pivots.items()):
            f = prow.get(col)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
                self.pivots[pc] = (prow, prhs - f * rhs)
        self.pivots[col] = (row, rhs)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, variables: Iterable[Hashable] | None = None) -> Solution:
        variables = list(variables) if variables is not None else list(self.columns)
        if self.inconsistent is not None:
            return Solution(None, self.rank, len(variables), self.inconsistent)
        values = {v: Fraction(0) for v in variables}
        for col, (row, rhs) in self.pivots.items():
            # free variables are zero; the rows are fully reduced
            values[col] = rhs
        return Solution(values, self.rank, len(variables))

    def nullspace(self, variables: Sequence[Hashable]) -> List[Dict[Hashable, Fraction]]:
        """Basis of the kernel, one vector per free variable."""
        free = [v for v in variables if v not in self.pivots]
        basis = []
        for f in free:
            vec = {f: Fraction(1)}
            for col, (row, _) in self.pivots.items():
                c = row.get(f)
                if c:
                    vec[col] = -c
            basis.append(vec)
        return basis


def nullspace(rows: Iterable[Row], variables: Sequence[Hashable]) -> List[Dict[Hashable, Fraction]]:
    elim = Eliminator(order=variables)
    for row in rows:
        elim.add(row)
    return elim.nullspace(variables)


def solve(equations: Iterable[Tuple[Row, object, Hashable]], variables: Sequence[Hashable]) -> Solution:
    elim = Eliminator(order=variables)
    for row, rhs, label in equations:
        elim.add(row, rhs, label)
    return elim.solve(variables)
