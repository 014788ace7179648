"""
Graph representations, simplification, components and induced subgraphs.

MultiDigraph is the raw compound network: directed, with multiplicities and
self-loops. SimpleGraph is the analysis substrate: undirected, unweighted,
loop-free, stored as CSR arrays with sorted neighbor lists. Both are
immutable once built.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from app.errors import EmptyGraphError, GraphFormatError, UnknownComponentError
from app.services.corpus import CharSet, Compound
from app.utils.logger import get_logger, log_with_context

logger = get_logger(__name__)


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    multiplicity: int = 1


@dataclass(frozen=True)
class MultiDigraph:
    """
    Directed multigraph over character nodes.

    Node ids are dense 0..N-1 in first-appearance order; one Arc per
    distinct (upper, lower) pair carries that pair's multiplicity.
    """

    labels: Tuple[str, ...]
    arcs: Tuple[Arc, ...]

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    @property
    def index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def total_multiplicity(self) -> int:
        return sum(arc.multiplicity for arc in self.arcs)

    @property
    def self_loops(self) -> int:
        return sum(1 for arc in self.arcs if arc.source == arc.target)

    def summary(self) -> Dict:
        return {
            "nodes": self.n_nodes,
            "arcs": len(self.arcs),
            "total_multiplicity": self.total_multiplicity,
            "self_loop_arcs": self.self_loops,
        }


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """
    Undirected simple graph in CSR form.

    `indices[indptr[i]:indptr[i+1]]` are the sorted neighbor ids of node i.
    Adjacency is symmetric and loop-free. `labels` maps id -> character
    when present; `node_data` holds per-node arrays such as fitness.
    """

    n_nodes: int
    indptr: np.ndarray
    indices: np.ndarray
    labels: Optional[Tuple[str, ...]] = None
    node_data: Mapping[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def from_edges(
        cls,
        n_nodes: int,
        edges,
        labels: Optional[Sequence[str]] = None,
        node_data: Optional[Mapping[str, np.ndarray]] = None
    ) -> 'SimpleGraph':
        """
        Build from any (u, v) pair collection.

        Direction, duplicates and self-loops are dropped.

        Args:
            n_nodes: Node count; every endpoint must be < n_nodes
            edges: Iterable of pairs or an (E, 2) integer array
            labels: Optional per-node characters
            node_data: Optional per-node arrays
        """
        pairs = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        pairs = pairs.reshape(-1, 2)

        if pairs.size and (pairs.min() < 0 or pairs.max() >= n_nodes):
            raise ValueError(f"edge endpoint out of range for {n_nodes} nodes")
        if labels is not None and len(labels) != n_nodes:
            raise ValueError(f"{len(labels)} labels for {n_nodes} nodes")

        pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        low = np.minimum(pairs[:, 0], pairs[:, 1])
        high = np.maximum(pairs[:, 0], pairs[:, 1])
        keys = np.unique(low * max(n_nodes, 1) + high)
        low = keys // max(n_nodes, 1)
        high = keys % max(n_nodes, 1)

        src = np.concatenate([low, high])
        dst = np.concatenate([high, low])
        order = np.lexsort((dst, src))
        indices = dst[order]
        counts = np.bincount(src, minlength=n_nodes)
        indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

        return cls(
            n_nodes=int(n_nodes),
            indptr=indptr,
            indices=indices.astype(np.int64),
            labels=tuple(labels) if labels is not None else None,
            node_data=dict(node_data or {})
        )

    @classmethod
    def empty(cls) -> 'SimpleGraph':
        return cls.from_edges(0, [], labels=())

    @property
    def n_edges(self) -> int:
        return int(self.indices.size // 2)

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, node: int) -> np.ndarray:
        return self.indices[self.indptr[node]:self.indptr[node + 1]]

    def edge_array(self) -> np.ndarray:
        """(M, 2) array of edges with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n_nodes, dtype=np.int64), self.degrees())
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def adjacency_matrix(self) -> sparse.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.int32)
        return sparse.csr_matrix(
            (data, self.indices, self.indptr),
            shape=(self.n_nodes, self.n_nodes)
        )

    def label(self, node: int) -> str:
        """Character of a node, or its id when the graph is unlabeled."""
        if self.labels is None:
            return str(node)
        return self.labels[node]

    def label_index(self) -> Dict[str, int]:
        if self.labels is None:
            return {}
        return {label: i for i, label in enumerate(self.labels)}

    def subgraph(self, nodes) -> Tuple['SimpleGraph', np.ndarray]:
        """
        Induced subgraph on `nodes`.

        New ids follow ascending original id; labels and node data are
        carried over.

        Returns:
            (subgraph, original ids indexed by new id)
        """
        keep = np.unique(np.asarray(nodes, dtype=np.int64))
        remap = np.full(self.n_nodes, -1, dtype=np.int64)
        remap[keep] = np.arange(keep.size)

        edges = self.edge_array()
        inside = (remap[edges[:, 0]] >= 0) & (remap[edges[:, 1]] >= 0) if edges.size else np.zeros(0, bool)
        new_edges = remap[edges[inside]] if edges.size else np.zeros((0, 2), np.int64)

        labels = tuple(self.labels[i] for i in keep) if self.labels is not None else None
        node_data = {key: np.asarray(values)[keep] for key, values in self.node_data.items()}

        return SimpleGraph.from_edges(keep.size, new_edges, labels, node_data), keep

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and self.labels == other.labels
        )

    __hash__ = None


@dataclass(frozen=True)
class ComponentPartition:
    """
    Connected components of a SimpleGraph.

    Component ids are ordered by their smallest node id, so component 0
    always contains node 0. `maximal_id` is the largest component; ties go
    to the one with the smallest minimum node id.
    """

    assignment: np.ndarray
    sizes: Tuple[int, ...]
    maximal_id: int

    @property
    def n_components(self) -> int:
        return len(self.sizes)

    @property
    def maximal_size(self) -> int:
        return self.sizes[self.maximal_id] if self.sizes else 0

    def members(self, component_id: int) -> np.ndarray:
        if not 0 <= component_id < self.n_components:
            raise UnknownComponentError(
                f"component {component_id} not in partition of {self.n_components}"
            )
        return np.flatnonzero(self.assignment == component_id)

    def summary(self) -> Dict:
        n_nodes = int(self.assignment.size)
        return {
            "clusters": self.n_components,
            "maximal_size": self.maximal_size,
            "maximal_fraction": self.maximal_size / n_nodes if n_nodes else 0.0,
        }


def build_multigraph(compounds: Iterable[Compound]) -> MultiDigraph:
    """
    One node per distinct character, one arc per distinct (upper, lower).

    Node ids follow first appearance (upper before lower within a compound).
    """
    index: Dict[str, int] = {}
    arcs: Dict[Tuple[int, int], int] = {}

    for compound in compounds:
        for char in (compound.upper, compound.lower):
            if char not in index:
                index[char] = len(index)
        key = (index[compound.upper], index[compound.lower])
        arcs[key] = arcs.get(key, 0) + compound.multiplicity

    labels = tuple(index)
    graph = MultiDigraph(
        labels=labels,
        arcs=tuple(Arc(source, target, count) for (source, target), count in arcs.items())
    )

    log_with_context(logger, "INFO", "Built multigraph", **graph.summary())
    return graph


def multigraph_from_simple(g: SimpleGraph) -> MultiDigraph:
    """Multigraph with one u -> v arc per edge (u < v) of a labeled graph."""
    labels = g.labels if g.labels is not None else tuple(str(i) for i in range(g.n_nodes))
    return MultiDigraph(
        labels=tuple(labels),
        arcs=tuple(Arc(int(u), int(v), 1) for u, v in g.edge_array())
    )


def simplify(g: MultiDigraph) -> SimpleGraph:
    """
    Drop direction, multiplicity and self-loops.

    Nodes whose only arcs are self-loops stay as degree-0 nodes.
    """
    edges = [(arc.source, arc.target) for arc in g.arcs]
    return SimpleGraph.from_edges(g.n_nodes, edges, labels=g.labels)


def connected_components(g: SimpleGraph) -> ComponentPartition:
    """Undirected connected components with the deterministic tie-break."""
    if g.n_nodes == 0:
        return ComponentPartition(np.zeros(0, dtype=np.int64), (), -1)

    _, raw = csgraph.connected_components(g.adjacency_matrix(), directed=False)

    # Renumber so components are ordered by their smallest node id
    _, first = np.unique(raw, return_index=True)
    order = np.argsort(first)
    renumber = np.empty_like(order)
    renumber[order] = np.arange(order.size)
    assignment = renumber[raw].astype(np.int64)

    sizes = np.bincount(assignment)
    # argmax returns the first maximum, i.e. the smallest minimum node id
    maximal_id = int(np.argmax(sizes))

    return ComponentPartition(assignment, tuple(int(s) for s in sizes), maximal_id)


def extract_component(
    g: SimpleGraph,
    partition: ComponentPartition,
    component_id: int
) -> Tuple[SimpleGraph, np.ndarray]:
    """
    Induced subgraph of one component.

    Returns:
        (component graph with dense ids, original ids indexed by new id)

    Raises:
        UnknownComponentError: component_id not in partition
    """
    return g.subgraph(partition.members(component_id))


def maximal_component(g: SimpleGraph) -> Tuple[SimpleGraph, np.ndarray]:
    """Shortcut for extract_component on the largest component."""
    if g.n_nodes == 0:
        raise EmptyGraphError("graph has no nodes")
    partition = connected_components(g)
    return extract_component(g, partition, partition.maximal_id)


@dataclass
class Restriction:
    """Outcome of restricting a graph to a character whitelist."""

    graph: SimpleGraph
    original_ids: np.ndarray
    missing: List[str]


def restrict_to_charset(g: SimpleGraph, keep: CharSet) -> Restriction:
    """
    Induced subgraph on nodes whose label is in `keep`.

    Whitelist characters absent from the graph are ignored and reported.
    An empty intersection gives an empty graph and a warning.
    """
    if g.labels is None:
        raise GraphFormatError("graph carries no node labels")

    present = set(g.labels)
    kept_ids = [i for i, label in enumerate(g.labels) if label in keep.members]
    missing = sorted(keep.members - present)

    if missing:
        log_with_context(
            logger, "WARNING",
            "Whitelist characters absent from graph",
            label=keep.label,
            missing_count=len(missing),
            sample=''.join(missing[:20])
        )

    if not kept_ids:
        log_with_context(
            logger, "WARNING",
            "Whitelist does not intersect graph labels",
            label=keep.label
        )
        return Restriction(SimpleGraph.empty(), np.zeros(0, dtype=np.int64), missing)

    sub, original = g.subgraph(kept_ids)
    log_with_context(
        logger, "INFO",
        "Restricted graph to whitelist",
        label=keep.label,
        nodes=sub.n_nodes,
        edges=sub.n_edges
    )
    return Restriction(sub, original, missing)


def induced_subgraph(g: SimpleGraph, keep: CharSet) -> SimpleGraph:
    """Graph restricted to the whitelist (see restrict_to_charset)."""
    return restrict_to_charset(g, keep).graph
