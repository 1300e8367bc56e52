import json

import pytest

from feyngkz.graph import FeynmanGraph, banana, cycle
from feyngkz.symanzik import Degeneracy

SUNSET_DEGENERATE_MATRIX = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 0, 2, 2, 1, 0, 0, 1],
    [1, 0, 1, 1, 0, 2, 2, 1, 0],
    [0, 1, 1, 0, 1, 0, 1, 2, 2],
]


@pytest.fixture
def bubble():
    return banana(2, massive=True)


@pytest.fixture
def bubble_degeneracy():
    return Degeneracy(frozenset({(1, 1)}))


@pytest.fixture
def sunset():
    return banana(3, massive=True)


@pytest.fixture
def triangle():
    return cycle(3)


@pytest.fixture
def diamond():
    # K4 minus the edge v3v4
    ends = [("v1", "v2"), ("v1", "v3"), ("v1", "v4"), ("v2", "v3"), ("v2", "v4")]
    return FeynmanGraph.from_edges(ends, vertices=["v1", "v2", "v3", "v4"])


def write_graph(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture
def graph_file(tmp_path):
    def make(doc, name="g.json"):
        return write_graph(tmp_path, name, doc)

    return make


BUBBLE_DOC = {
    "vertices": ["a", "b"],
    "edges": [
        {"id": "e1", "ends": ["a", "b"], "massive": True},
        {"id": "e2", "ends": ["a", "b"], "massive": True},
    ],
    "external": ["a", "b"],
    "deleted_monomials": [[1, 1]],
}

SUNSET_DOC = {
    "vertices": ["a", "b"],
    "edges": [{"id": f"e{i}", "ends": ["a", "b"], "massive": True} for i in (1, 2, 3)],
    "external": ["a", "b"],
}

TRIANGLE_DOC = {
    "vertices": ["v1", "v2", "v3"],
    "edges": [
        {"id": "e1", "ends": ["v1", "v2"]},
        {"id": "e2", "ends": ["v2", "v3"]},
        {"id": "e3", "ends": ["v1", "v3"]},
    ],
    "external": ["v1", "v2", "v3"],
}

PATH_DOC = {
    "vertices": ["v1", "v2", "v3"],
    "edges": [{"id": "e1", "ends": ["v1", "v2"]}, {"id": "e2", "ends": ["v2", "v3"]}],
    "external": ["v1", "v3"],
}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
