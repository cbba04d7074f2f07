"""JSON readers and writers for graphs, labeled balls and group specs."""

from __future__ import annotations

import json

from .errors import GraphFormatError
from .graph import Graph, build_graph
from .groups import GroupSpec, LabeledBall, parse_group_spec

GRAPH_KEYS = {"vertices", "edges"}
BALL_KEYS = GRAPH_KEYS | {"labels", "radius", "identity"}


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.names), "edges": [list(e) for e in g.edge_names()]}


def graph_from_json(data) -> Graph:
    """Strict parse of the graph format; labeled-ball files are accepted too.

    Unknown keys are rejected and every edge must name declared vertices.
    """
    if not isinstance(data, dict):
        raise GraphFormatError("graph file must hold a JSON object")
    keys = set(data)
    allowed = BALL_KEYS if "labels" in keys else GRAPH_KEYS
    if keys - allowed:
        raise GraphFormatError(f"unknown keys {sorted(keys - allowed)}")
    if not GRAPH_KEYS <= keys:
        raise GraphFormatError(f"missing keys {sorted(GRAPH_KEYS - keys)}")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphFormatError('"vertices" must be an array of strings')
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("duplicate vertex identifiers")
    declared = set(vertices)
    edges = data["edges"]
    if not isinstance(edges, list):
        raise GraphFormatError('"edges" must be an array')
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, str) for v in e)):
            raise GraphFormatError(f"edge must be a 2-element string array: {e!r}")
        for v in e:
            if v not in declared:
                raise GraphFormatError(f"edge {e} references undeclared vertex {v!r}")
    return build_graph([tuple(e) for e in edges], vertices=vertices)


def ball_to_json(ball: LabeledBall) -> dict:
    return ball.to_json()


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"{path}: invalid JSON ({exc})") from None


def load_graph(path) -> Graph:
    return graph_from_json(load_json(path))


def load_group_spec(path) -> GroupSpec:
    return parse_group_spec(load_json(path))


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
