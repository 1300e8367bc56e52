"""Lattice points of dilated lattice polytopes, IDP and Minkowski-sum checks.

Candidates are enumerated coordinate by coordinate inside the bounding box
and pruned with the support-function inequalities ``d.x <= k * max_p d.p``
for all directions ``d`` in {-1, 0, 1}^m. Survivors whose membership is not
already known are decided by an exact LP. numpy is only used for integer
arithmetic in the pruning step.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Collection, Iterable, Sequence

import numpy as np

from .lp import in_cone

__all__ = [
    "candidate_points",
    "lattice_points",
    "idp_check",
    "idp_failures",
    "minkowski_lattice_check",
    "minkowski_sum",
]

Point = tuple[int, ...]

# above this dimension only directions with small support are used for pruning
_FULL_DIRECTIONS_MAX_DIM = 8


@lru_cache(maxsize=32)
def _directions(m: int) -> np.ndarray:
    if m <= _FULL_DIRECTIONS_MAX_DIM:
        dirs = [d for d in product((-1, 0, 1), repeat=m) if any(d)]
    else:
        dirs = []
        for i in range(m):
            for s in (-1, 1):
                d = [0] * m
                d[i] = s
                dirs.append(tuple(d))
        for i in range(m):
            for j in range(i + 1, m):
                for s, t in product((-1, 1), repeat=2):
                    d = [0] * m
                    d[i], d[j] = s, t
                    dirs.append(tuple(d))
        dirs += [(1,) * m, (-1,) * m]
    return np.array(dirs, dtype=np.int64).reshape(-1, m)


def candidate_points(points: Sequence[Sequence[int]], k: int = 1) -> list[Point]:
    """Integer points passing every {-1,0,1} support inequality of k*conv(points).

    A superset of the lattice points of k*conv(points); exact whenever all
    facet normals of the polytope have entries in {-1, 0, 1}.
    """
    pts = np.array(points, dtype=np.int64)
    if pts.size == 0:
        return []
    m = pts.shape[1]
    if m == 0:
        return [()]
    dirs = _directions(m)
    bound = k * (dirs @ pts.T).max(axis=1)
    last = np.array([np.flatnonzero(d).max() for d in dirs])
    lo, hi = k * pts.min(axis=0), k * pts.max(axis=0)
    cur = np.zeros((1, 0), dtype=np.int64)
    for j in range(m):
        vals = np.arange(lo[j], hi[j] + 1, dtype=np.int64)
        cur = np.hstack([np.repeat(cur, len(vals), axis=0), np.tile(vals, len(cur)).reshape(-1, 1)])
        sel = last == j
        if sel.any():
            ok = (cur @ dirs[sel][:, : j + 1].T <= bound[sel]).all(axis=1)
            cur = cur[ok]
        if len(cur) == 0:
            return []
    return [tuple(int(x) for x in row) for row in cur]


def lattice_points(
    points: Sequence[Sequence[int]], k: int = 1, known: Collection[Point] = ()
) -> set[Point]:
    """All integer points of ``k * conv(points)``.

    ``known`` may list points the caller already knows to lie inside; they
    skip the LP test.
    """
    pts = [tuple(p) for p in points]
    if not pts:
        return set()
    known = set(known)
    vertex_set = set(pts) if k == 1 else set()
    lifts = [(1, *p) for p in pts]
    out = set()
    for x in candidate_points(pts, k):
        if x in known or x in vertex_set or in_cone(lifts, (k, *x)):
            out.add(x)
    return out


def minkowski_sum(p: Iterable[Point], q: Iterable[Point]) -> set[Point]:
    q = list(q)
    return {tuple(a + b for a, b in zip(x, y)) for x in p for y in q}


def idp_failures(points: Sequence[Sequence[int]], k_max: int = 3) -> dict[int, set[Point]]:
    """Lattice points of kP missing from (k-1)P∩Z + P∩Z, per k in 2..k_max."""
    pts = [tuple(p) for p in points]
    base = lattice_points(pts, 1)
    prev = base
    out: dict[int, set[Point]] = {}
    for k in range(2, k_max + 1):
        sums = minkowski_sum(prev, base)
        full = lattice_points(pts, k, known=sums)
        missing = full - sums
        if missing:
            out[k] = missing
        prev = full
    return out


def idp_check(points: Sequence[Sequence[int]], k_max: int = 3) -> bool:
    """Integer decomposition property of conv(points), up to dilation k_max."""
    return not idp_failures(points, k_max)


def minkowski_lattice_check(p: Sequence[Sequence[int]], q: Sequence[Sequence[int]]) -> bool:
    """(P∩Z) + (Q∩Z) == (P+Q)∩Z for P = conv(p), Q = conv(q)."""
    lp_ = lattice_points(p)
    lq = lattice_points(q)
    lhs = minkowski_sum(lp_, lq)
    rhs = lattice_points(sorted(minkowski_sum(map(tuple, p), map(tuple, q))), 1, known=lhs)
    return lhs == rhs
