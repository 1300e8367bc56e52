from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from feyngkz.lp import in_cone, in_convex_hull, is_feasible, solve_lp

small = st.integers(-3, 3)


@st.composite
def lps(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 6))
    A = [[draw(small) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(-5, 5)) for _ in range(m)]
    c = [draw(st.integers(0, 4)) for _ in range(n)]
    return A, b, c


def test_simple_optimum():
    res = solve_lp([[1, 1, 1]], [4], [3, 1, 2])
    assert res.status == "optimal"
    assert res.value == 4
    assert res.x == (0, 4, 0)


def test_infeasible_and_unbounded():
    assert solve_lp([[1, 1]], [-1]).status == "infeasible"
    assert solve_lp([[1, -1]], [0], [-1, 0]).status == "unbounded"
    assert is_feasible([[1, -1]], [0])


def test_redundant_rows():
    res = solve_lp([[1, 1], [2, 2], [1, 1]], [1, 2, 1], [1, 2])
    assert res.status == "optimal" and res.value == 1


def test_exact_fractions():
    res = solve_lp([[3, 0], [0, 7]], [1, 2])
    assert res.x == (Fraction(1, 3), Fraction(2, 7))


def test_cone_and_hull():
    assert in_cone([(1, 0), (0, 1)], (3, 5))
    assert not in_cone([(1, 0), (1, 1)], (0, 1))
    assert in_cone([], (0, 0)) and not in_cone([], (1, 0))
    assert in_convex_hull([(0, 0), (2, 0), (0, 2)], (1, 1))
    assert not in_convex_hull([(0, 0), (2, 0), (0, 2)], (Fraction(3, 2), 1))


@settings(max_examples=150, deadline=None)
@given(lps())
def test_matches_scipy(problem):
    A, b, c = problem
    ours = solve_lp(A, b, c)
    ref = linprog(c, A_eq=np.array(A), b_eq=np.array(b), bounds=[(0, None)] * len(c), method="highs")
    if ref.status == 2:
        assert ours.status == "infeasible"
    else:
        assert ref.status == 0
        assert ours.status == "optimal"
        assert abs(float(ours.value) - ref.fun) < 1e-7
        x = ours.x
        assert all(xi >= 0 for xi in x)
        assert all(sum(a * xi for a, xi in zip(row, x)) == bi for row, bi in zip(A, b))
