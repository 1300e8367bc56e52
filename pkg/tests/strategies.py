"""Hypothesis strategies shared by the property tests."""

from itertools import combinations

from hypothesis import strategies as st

from feyngkz.graph import FeynmanGraph


@st.composite
def multigraphs(draw, min_vertices=2, max_vertices=5, max_edges=7, loops=False):
    n = draw(st.integers(min_vertices, max_vertices))
    vs = [f"v{i + 1}" for i in range(n)]
    pairs = list(combinations(range(n), 2))
    if loops:
        pairs += [(i, i) for i in range(n)]
    chosen = draw(st.lists(st.sampled_from(pairs), min_size=1, max_size=max_edges))
    massive = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
    ext = draw(st.sets(st.sampled_from(vs), min_size=0, max_size=n))
    return FeynmanGraph.from_edges(
        [(vs[a], vs[b]) for a, b in chosen], massive=massive, external=ext, vertices=vs
    )
