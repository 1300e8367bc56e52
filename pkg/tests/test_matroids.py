from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from feyngkz.errors import HypothesisError, MatroidError
from feyngkz.graph import FeynmanGraph, banana, cycle, massive_path_exists, validate_s1i
from feyngkz.matroids import (
    Matroid,
    check_exchange_axiom,
    circuits,
    cographic_matroid,
    feynman_matroid,
    graphic_matroid,
    is_quotient,
    massive_truncation_matroid,
    matroid_polytope_edge_directions,
    momentous_matroid,
    quotient_by_subset,
    rank_of,
    span_of,
    two_forest_matroid,
)

from strategies import multigraphs


def uniform(r, n):
    ground = [str(i) for i in range(1, n + 1)]
    return Matroid.from_bases(ground, combinations(ground, r))


def _brute_rank(m, s):
    return max(len(set(b) & set(s)) for b in m.bases)


def _brute_circuits(m):
    ground = list(m.ground)
    indep = lambda s: any(set(s) <= b for b in m.bases)  # noqa: E731
    out = set()
    for r in range(1, len(ground) + 1):
        for s in combinations(ground, r):
            if not indep(s) and all(indep(set(s) - {x}) for x in s):
                out.add(frozenset(s))
    return out


def _brute_quotient(mp, m):
    """Rank characterisation: r(Y) - r(X) >= r'(Y) - r'(X) for all X within Y."""
    ground = list(m.ground)
    subsets = [frozenset(s) for r in range(len(ground) + 1) for s in combinations(ground, r)]
    rk = {s: _brute_rank(m, s) for s in subsets}
    rkp = {s: _brute_rank(mp, s) for s in subsets}
    for y in subsets:
        for x in subsets:
            if x <= y and rk[y] - rk[x] < rkp[y] - rkp[x]:
                return False
    return True


def test_uniform_basics():
    m = uniform(2, 4)
    assert m.rank == 2
    assert len(m.bases) == 6
    assert circuits(m) == {frozenset(c) for c in combinations("1234", 3)}
    assert rank_of(m, {"1", "2", "3"}) == 2
    assert span_of(m, {"1"}) == {"1"}
    assert m.dual().bases == uniform(2, 4).bases
    assert check_exchange_axiom(m).ok


def test_exchange_counterexample():
    rep = check_exchange_axiom([{"1", "2"}, {"3", "4"}])
    assert not rep.weak_ok and not rep.strong_ok
    assert rep.weak_counterexample is not None
    with pytest.raises(MatroidError):
        check_exchange_axiom([{"1", "2"}, {"3"}])


def test_uniform_matroids_satisfy_strong_exchange():
    for r in range(4):
        assert check_exchange_axiom(uniform(r, 4)).strong_ok


def test_triangle_circuit(triangle):
    assert circuits(graphic_matroid(triangle)) == {frozenset({"e1", "e2", "e3"})}
    assert cographic_matroid(triangle).rank == 1


def test_invalid_matroids():
    with pytest.raises(MatroidError):
        Matroid.from_bases(["a", "b"], [])
    with pytest.raises(MatroidError):
        Matroid.from_bases(["a", "b"], [{"a"}, {"a", "b"}])
    with pytest.raises(MatroidError):
        quotient_by_subset(uniform(0, 3), {"1"})


def test_quotient_examples():
    assert is_quotient(uniform(1, 4), uniform(2, 4)).holds
    w = is_quotient(uniform(2, 4), uniform(1, 4))
    assert not w.holds and w.failures
    with pytest.raises(MatroidError):
        is_quotient(uniform(1, 3), uniform(1, 4))


def test_subset_quotient_gives_massive_truncation():
    g = cycle(4, massive=[True, False, True, False])
    m1 = graphic_matroid(g)
    mt = massive_truncation_matroid(g)
    assert quotient_by_subset(m1, g.edge_set(g.massive_mask)).bases == mt.bases
    assert is_quotient(mt, m1).holds


def test_hypothesis_errors():
    g = banana(2, external=["a"])
    with pytest.raises(HypothesisError):
        momentous_matroid(g)
    with pytest.raises(HypothesisError):
        massive_truncation_matroid(g)
    with pytest.raises(HypothesisError):
        feynman_matroid(g)


def test_polytope_edges():
    rep = matroid_polytope_edge_directions(graphic_matroid(cycle(4)))
    assert rep.ok
    assert len(rep.edges) == 6  # the 4 trees of C4 are pairwise adjacent
    bad = matroid_polytope_edge_directions(Matroid.from_bases("1234", [{"1", "2"}, {"3", "4"}]))
    assert not bad.ok and bad.bad_edges


def test_diamond_bases_equal_without_massive_paths(diamond):
    # Only v1v2 is massive, externals v3, v4: every 2-forest contributes, yet
    # v1 has no massive path to an external vertex.
    g = diamond.with_masses([True, False, False, False, False]).with_external(["v3", "v4"])
    assert feynman_matroid(g).bases == two_forest_matroid(g).bases
    assert not massive_path_exists(g, "v1")


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=6))
def test_family_style_properties(g):
    assume(validate_s1i(g).ok)
    m1 = graphic_matroid(g)
    assert circuits(m1) == _brute_circuits(m1)
    mats = []
    if len(g.external) >= 2:
        mats.append(momentous_matroid(g))
    if g.massive_mask:
        mats.append(massive_truncation_matroid(g))
    if mats:
        mats.append(feynman_matroid(g))
    for m in mats:
        assert check_exchange_axiom(m).ok
        assert matroid_polytope_edge_directions(m).ok
    for m in mats[:-1]:
        assert is_quotient(m, m1).holds == _brute_quotient(m, m1) is True


@settings(max_examples=25, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=5), st.data())
def test_subset_quotients_brute_force(g, data):
    assume(validate_s1i(g).ok)
    m1 = graphic_matroid(g)
    ep = data.draw(st.sets(st.sampled_from(g.edge_ids), min_size=1))
    q = quotient_by_subset(m1, ep)
    assert check_exchange_axiom(q).ok
    assert is_quotient(q, m1).holds
    assert _brute_quotient(q, m1)
