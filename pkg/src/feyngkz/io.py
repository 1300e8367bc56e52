"""Reading graph documents (JSON) and the JSON schemas of emitted files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import jsonschema

from .errors import FeynGKZError
from .graph import Edge, FeynmanGraph
from .symanzik import Degeneracy

__all__ = [
    "GRAPH_SCHEMA",
    "GKZ_SCHEMA",
    "SATURATION_SCHEMA",
    "DocumentError",
    "GraphDocument",
    "parse_graph_document",
    "load_graph_document",
    "graph_to_document",
]

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "ends"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string"},
                    "ends": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
                    "massive": {"type": "boolean"},
                },
            },
        },
        "external": {"type": "array", "items": {"type": "string"}},
        "deleted_monomials": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
    },
}

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

GKZ_SCHEMA = {
    "type": "object",
    "required": ["matrix", "euler_operators", "binomials", "beta"],
    "properties": {
        "matrix": _INT_MATRIX,
        "euler_operators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["row", "coeffs"],
                "properties": {"row": {"type": "integer"}, "coeffs": _INT_VECTOR},
            },
        },
        "binomials": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v"],
                "properties": {"u": _INT_VECTOR, "v": _INT_VECTOR},
            },
        },
        "beta": {"const": "symbolic"},
    },
}

SATURATION_SCHEMA = {
    "type": "object",
    "required": ["k_max", "verdict", "lattice", "holes", "qa_generators", "theorems", "consistent"],
    "properties": {
        "k_max": {"type": "integer", "minimum": 1},
        "verdict": {"type": "string"},
        "lattice": {
            "type": "object",
            "required": ["full", "index", "rank"],
            "properties": {
                "full": {"type": "boolean"},
                "index": {"type": ["integer", "null"]},
                "rank": {"type": "integer"},
            },
        },
        "holes": {"type": "object", "additionalProperties": _INT_MATRIX},
        "qa_generators": _INT_MATRIX,
        "deleted_lifts": _INT_MATRIX,
        "theorems": {"type": ["object", "null"]},
        "consistent": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


class DocumentError(FeynGKZError, ValueError):
    """Unreadable or schema-invalid graph document."""


@dataclass(frozen=True)
class GraphDocument:
    graph: FeynmanGraph
    degeneracy: Degeneracy


def parse_graph_document(text: str, source: str = "<string>") -> GraphDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    try:
        jsonschema.validate(data, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{source}: at {where}: {exc.message}") from None
    edges = tuple(Edge(e["id"], tuple(e["ends"]), bool(e.get("massive", False))) for e in data["edges"])
    graph = FeynmanGraph(tuple(data["vertices"]), edges, frozenset(data.get("external", [])))
    deleted = frozenset(tuple(a) for a in data.get("deleted_monomials", []))
    return GraphDocument(graph, Degeneracy(deleted))


def load_graph_document(path: str | Path) -> GraphDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: cannot read: {exc.strerror}") from None
    return parse_graph_document(text, str(path))


def graph_to_document(g: FeynmanGraph, d: Degeneracy | None = None) -> dict:
    doc = {
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends), "massive": e.massive} for e in g.edges],
        "external": [v for v in g.vertices if v in g.external],
    }
    if d:
        doc["deleted_monomials"] = [list(a) for a in sorted(d.deleted_monomials)]
    return doc
