"""Exact rational linear programming (two-phase simplex, Bland's rule).

Problems are in standard equality form: minimise ``c @ x`` subject to
``A @ x == b`` and ``x >= 0``. Arithmetic is done in ``fractions.Fraction``
so results are exact; the problem sizes in this package are tiny.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_lp", "is_feasible", "in_cone", "in_convex_hull"]


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(rows: list[list[Fraction]], obj: list[Fraction], r: int, c: int) -> None:
    prow = rows[r]
    p = prow[c]
    if p != 1:
        prow[:] = [x / p for x in prow]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                row[:] = [x - f * y for x, y in zip(row, prow)]
    f = obj[c]
    if f:
        obj[:] = [x - f * y for x, y in zip(obj, prow)]


def _iterate(rows, obj, basis, allowed: int) -> bool:
    """Run simplex pivots on columns ``< allowed``. Returns False if unbounded."""
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        leave = best[1]
        _pivot(rows, obj, leave, enter)
        basis[leave] = enter


def solve_lp(A: Sequence[Sequence], b: Sequence, c: Sequence | None = None) -> LPResult:
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    cost = [Fraction(0)] * n if c is None else [Fraction(x) for x in c]
    if m == 0:
        if any(x < 0 for x in cost):
            return LPResult("unbounded")
        return LPResult("optimal", tuple(Fraction(0) for _ in range(n)), Fraction(0))

    rows: list[list[Fraction]] = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if len(row) != n:
            raise ValueError("ragged constraint matrix")
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(m)]

    # phase 1: minimise the sum of artificials
    obj = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    _iterate(rows, obj, basis, n)
    if obj[-1] != 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            j = next((j for j in range(n) if rows[i][j] != 0), None)
            if j is None:
                del rows[i]
                del basis[i]
                continue
            _pivot(rows, obj, i, j)
            basis[i] = j
        i += 1
    rows = [row[:n] + [row[-1]] for row in rows]

    obj = cost + [Fraction(0)]
    for i, j in enumerate(basis):
        f = obj[j]
        if f:
            obj = [x - f * y for x, y in zip(obj, rows[i])]
    if not _iterate(rows, obj, basis, n):
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    value = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult("optimal", tuple(x), value)


def is_feasible(A, b) -> bool:
    return solve_lp(A, b).feasible


def in_cone(generators: Sequence[Sequence[int]], v: Sequence) -> bool:
    """True iff ``v`` is a nonnegative rational combination of ``generators``."""
    if not generators:
        return all(x == 0 for x in v)
    d = len(v)
    A = [[g[i] for g in generators] for i in range(d)]
    return is_feasible(A, list(v))


def in_convex_hull(points: Sequence[Sequence[int]], v: Sequence) -> bool:
    if not points:
        return False
    return in_cone([(1, *p) for p in points], (1, *v))
