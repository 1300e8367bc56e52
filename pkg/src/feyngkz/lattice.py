"""Integer lattices: row Hermite normal form, membership and integer kernels.

Everything is plain Python ``int``; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["hermite_normal_form", "LatticeBasis", "integer_kernel", "rank"]

Vector = tuple[int, ...]


def _echelon(rows: list[list[int]], width: int, track: list[list[int]] | None = None):
    """Unimodular row reduction of ``rows`` on their first ``width`` columns.

    Returns the pivot columns. ``track`` rows, if given, receive the same
    operations (used to record the transformation matrix).
    """
    pivots = []
    r = 0
    n = len(rows)
    for col in range(width):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if rows[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(rows[i][col]))
            if i_min != r:
                rows[r], rows[i_min] = rows[i_min], rows[r]
                if track is not None:
                    track[r], track[i_min] = track[i_min], track[r]
            done = True
            p = rows[r][col]
            for i in range(r + 1, n):
                q = rows[i][col] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if track is not None:
                        track[i] = [a - q * b for a, b in zip(track[i], track[r])]
                if rows[i][col] != 0:
                    done = False
            if done:
                break
        if all(rows[i][col] == 0 for i in range(r, n)):
            continue
        if rows[r][col] < 0:
            rows[r] = [-a for a in rows[r]]
            if track is not None:
                track[r] = [-a for a in track[r]]
        p = rows[r][col]
        for i in range(r):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                if track is not None:
                    track[i] = [a - q * b for a, b in zip(track[i], track[r])]
        pivots.append(col)
        r += 1
    return pivots


def hermite_normal_form(generators: Iterable[Sequence[int]]) -> list[Vector]:
    """Canonical row HNF basis of the lattice spanned by ``generators``.

    Rows are upper echelon with positive pivots; entries above a pivot lie in
    ``[0, pivot)``. Zero rows are dropped.
    """
    rows = [list(map(int, g)) for g in generators]
    if not rows:
        return []
    width = len(rows[0])
    pivots = _echelon(rows, width)
    return [tuple(rows[i]) for i in range(len(pivots))]


def rank(generators: Iterable[Sequence[int]]) -> int:
    return len(hermite_normal_form(generators))


@dataclass(frozen=True)
class LatticeBasis:
    basis: tuple[Vector, ...]
    dim: int

    @classmethod
    def of(cls, generators: Sequence[Sequence[int]], dim: int | None = None) -> LatticeBasis:
        gens = [tuple(g) for g in generators]
        if dim is None:
            dim = len(gens[0]) if gens else 0
        return cls(tuple(hermite_normal_form(gens)), dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    @property
    def is_full(self) -> bool:
        """True iff the lattice is all of Z^dim."""
        return self.rank == self.dim and all(row[p] == 1 for row, p in zip(self.basis, self.pivots))

    @property
    def index(self) -> int | None:
        """Index in Z^dim when of full rank (product of pivots), else None."""
        if self.rank != self.dim:
            return None
        out = 1
        for row, p in zip(self.basis, self.pivots):
            out *= row[p]
        return out

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients on ``basis`` expressing ``v``, or None."""
        rest = list(map(int, v))
        if len(rest) != self.dim:
            raise ValueError("vector has the wrong dimension")
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            if any(rest[j] for j in range(p)):
                return None
            q, r = divmod(rest[p], row[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None


def integer_kernel(columns: Sequence[Sequence[int]]) -> list[Vector]:
    """Basis (in HNF) of {x in Z^n : sum x_i * columns[i] = 0}."""
    n = len(columns)
    if n == 0:
        return []
    width = len(columns[0])
    rows = [list(map(int, c)) for c in columns]
    track = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots = _echelon(rows, width, track)
    kernel = [track[i] for i in range(len(pivots), n)]
    return hermite_normal_form(kernel)
