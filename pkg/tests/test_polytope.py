from itertools import product

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from feyngkz.graph import cycle
from feyngkz.matroids import cographic_matroid
from feyngkz.polytope import (
    candidate_points,
    idp_check,
    idp_failures,
    lattice_points,
    minkowski_lattice_check,
    minkowski_sum,
)


def _brute_lattice_points(points, k):
    pts = np.array(points)
    lo, hi = k * pts.min(axis=0), k * pts.max(axis=0)
    out = set()
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        a_eq = np.vstack([pts.T, np.ones(len(pts))])
        b_eq = np.array([*x, k])
        res = linprog(np.zeros(len(pts)), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * len(pts), method="highs")
        if res.status == 0:
            out.add(tuple(int(v) for v in x))
    return out


@st.composite
def point_sets(draw):
    d = draw(st.integers(1, 3))
    n = draw(st.integers(1, 5))
    return [tuple(draw(st.integers(-2, 2)) for _ in range(d)) for _ in range(n)]


def test_unit_simplex_is_idp():
    assert idp_check([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 4)


def test_non_idp_tetrahedron():
    # lattice points of P are its vertices, all of even coordinate sum; (1,1,1) lies in 2P
    tet = [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
    fails = idp_failures(tet, 3)
    assert (1, 1, 1) in fails[2]
    assert not idp_check(tet, 2)


def test_dilated_square():
    sq = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert len(lattice_points(sq, 3)) == 16


def test_minkowski_examples():
    seg = [(0,), (1,)]
    assert minkowski_lattice_check(seg, seg)
    assert not minkowski_lattice_check([(0, 0), (1, 2)], [(0, 0), (1, 0)])
    assert minkowski_sum({(0, 0)}, {(1, 2), (3, 4)}) == {(1, 2), (3, 4)}


def test_cographic_square_idp():
    m = cographic_matroid(cycle(4))
    pts = [tuple((b >> k) & 1 for k in range(m.size)) for b in m.base_masks]
    assert idp_check(pts, 3)


def test_candidates_superset():
    pts = [(0, 0), (2, 1), (1, 3)]
    cands = set(candidate_points(pts, 2))
    assert lattice_points(pts, 2) <= cands


@settings(max_examples=60, deadline=None)
@given(point_sets(), st.integers(1, 2))
def test_lattice_points_match_scipy(points, k):
    assert lattice_points(points, k) == _brute_lattice_points(points, k)
