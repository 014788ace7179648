"""
Graph JSON codec.

Format: {"n_nodes": N, "labels": [...] or null, "edges": [[u, v], ...]}
with u < v and edges sorted lexicographically.
"""

import json
from typing import TextIO

from app.adapters.base import Codec, GraphFormatError
from app.services.graphcore import SimpleGraph


class JsonGraphCodec(Codec[SimpleGraph]):
    """Reads and writes SimpleGraph as JSON."""

    def dump(self, graph: SimpleGraph, stream: TextIO) -> None:
        payload = {
            "n_nodes": graph.n_nodes,
            "labels": list(graph.labels) if graph.labels is not None else None,
            "edges": graph.edge_array().tolist(),
        }
        stream.write(json.dumps(payload, ensure_ascii=False, separators=(',', ':')))
        stream.write("\n")

    def load(self, stream: TextIO) -> SimpleGraph:
        try:
            payload = json.load(stream)
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"invalid graph JSON: {str(e)}")

        if not isinstance(payload, dict) or 'n_nodes' not in payload or 'edges' not in payload:
            raise GraphFormatError("graph JSON needs n_nodes and edges")

        n_nodes = payload['n_nodes']
        labels = payload.get('labels')
        edges = payload['edges']

        if not isinstance(n_nodes, int) or n_nodes < 0:
            raise GraphFormatError(f"bad n_nodes: {n_nodes!r}")
        if labels is not None and len(labels) != n_nodes:
            raise GraphFormatError(f"{len(labels)} labels for {n_nodes} nodes")

        for edge in edges:
            if (not isinstance(edge, list) or len(edge) != 2
                    or not all(isinstance(x, int) and 0 <= x < n_nodes for x in edge)):
                raise GraphFormatError(f"bad edge: {edge!r}")
            if edge[0] == edge[1]:
                raise GraphFormatError(f"self-loop in simple graph: {edge!r}")

        return SimpleGraph.from_edges(n_nodes, edges, labels=labels)
