"""
Small-world and degree-distribution statistics of a SimpleGraph.

Path statistics use exact breadth-first search from every node (sources are
processed in blocks, possibly on several threads) unless a sampled mode is
requested, in which case results are flagged approximate. Clustering is the
Watts-Strogatz average of local coefficients; nodes of degree < 2 count as 0
unless excluded explicitly.
"""

import math
from dataclasses import dataclass, asdict
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import stats
from scipy.sparse import csgraph

from app.errors import (
    DisconnectedGraphError,
    EmptyGraphError,
    InfeasibleEdgeCountError,
    InsufficientBinsError,
    InvalidParameterError,
)
from app.services.generators import gnm_random
from app.services.graphcore import SimpleGraph, connected_components
from app.utils.logger import get_logger, log_with_context
from app.utils.parallel import ordered_map
from app.utils.seeding import derive_seeds, make_rng
from app.utils.validators import require_choice, require_int_at_least

logger = get_logger(__name__)

# Rows per BFS / triangle block; bounds the dense distance block to 512 x N.
_ROW_BLOCK = 512


@dataclass(frozen=True)
class CRandBaseline:
    mean: float
    std: float
    samples: int
    seed: int


@dataclass(frozen=True)
class PathStatistics:
    mean_path_length: float
    diameter: int
    sources: int
    approximate: bool = False


@dataclass
class NetworkMetrics:
    """Table of size, path and clustering statistics for one graph."""

    n_nodes: int
    n_edges: int
    avg_degree: float
    mean_path_length: Optional[float]
    diameter: Optional[int]
    clustering: float
    c_rand: Optional[CRandBaseline] = None
    approximate: bool = False

    def to_dict(self) -> Dict:
        data = {
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "avg_degree": self.avg_degree,
            "mean_path_length": self.mean_path_length,
            "diameter": self.diameter,
            "clustering": self.clustering,
            "c_rand": asdict(self.c_rand) if self.c_rand is not None else None,
        }
        if self.approximate:
            data["approximate"] = True
        return data


@dataclass(frozen=True)
class DegreeDistribution:
    """Exact degree histogram: degree k -> node count."""

    counts: Dict[int, int]
    n_nodes: int

    def fraction(self, k: int) -> float:
        return self.counts.get(k, 0) / self.n_nodes

    def mean_degree(self) -> float:
        return sum(k * count for k, count in self.counts.items()) / self.n_nodes

    def rows(self) -> List[Tuple[int, int, float]]:
        """(k, count, fraction) rows ascending in k."""
        return [(k, self.counts[k], self.counts[k] / self.n_nodes) for k in sorted(self.counts)]

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> 'DegreeDistribution':
        cleaned = {int(k): int(c) for k, c in sorted(counts.items()) if c > 0}
        return cls(cleaned, sum(cleaned.values()))


@dataclass(frozen=True)
class Binning:
    """Fit binning: raw degrees or logarithmic bins of a given base."""

    kind: str = 'log'
    base: float = 2.0

    def __post_init__(self):
        require_choice('binning', self.kind, ('raw', 'log'))
        if self.kind == 'log' and self.base <= 1.0:
            raise InvalidParameterError(f"log-binning base must be > 1, got {self.base}")

    def to_dict(self) -> Dict:
        if self.kind == 'raw':
            return {"kind": "raw"}
        return {"kind": "log", "base": self.base}


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    stderr: float
    k_min: int
    k_max: int
    binning: Binning
    r_squared: float
    points: int

    def to_dict(self) -> Dict:
        return {
            "gamma": self.gamma,
            "stderr": self.stderr,
            "r_squared": self.r_squared,
            "k_min": self.k_min,
            "k_max": self.k_max,
            "binning": self.binning.to_dict(),
        }


def average_degree(g: SimpleGraph) -> float:
    """2M / N."""
    if g.n_nodes < 1:
        raise EmptyGraphError("average degree of an empty graph")
    return 2.0 * g.n_edges / g.n_nodes


def _require_connected(g: SimpleGraph) -> None:
    if g.n_nodes < 2:
        raise EmptyGraphError(f"path statistics need at least 2 nodes, got {g.n_nodes}")
    partition = connected_components(g)
    if partition.n_components > 1:
        other = int(np.flatnonzero(partition.assignment != partition.assignment[0])[0])
        raise DisconnectedGraphError(g.label(0), g.label(other))


def _bfs_block(adjacency, sources: np.ndarray) -> Tuple[int, int]:
    """Sum and maximum of hop distances from a block of sources."""
    dist = csgraph.shortest_path(adjacency, directed=False, unweighted=True, indices=sources)
    hops = dist.astype(np.int64)
    return int(hops.sum()), int(hops.max())


def path_statistics(
    g: SimpleGraph,
    sample_sources: Optional[int] = None,
    seed: int = 0,
    workers: int = 1
) -> PathStatistics:
    """
    Mean shortest-path length and diameter of a connected graph.

    Exact mode averages over all unordered distinct pairs. Sampled mode runs
    BFS from `sample_sources` random sources only; its diameter is the
    largest eccentricity among them (a lower bound).

    Raises:
        EmptyGraphError: Fewer than two nodes
        DisconnectedGraphError: Names a node unreachable from node 0
    """
    _require_connected(g)
    n = g.n_nodes
    adjacency = g.adjacency_matrix()

    approximate = sample_sources is not None and sample_sources < n
    if approximate:
        require_int_at_least('sample_sources', sample_sources, 1)
        sources = np.sort(make_rng(seed).choice(n, size=sample_sources, replace=False))
    else:
        sources = np.arange(n)

    blocks = [sources[i:i + _ROW_BLOCK] for i in range(0, sources.size, _ROW_BLOCK)]
    results = ordered_map(lambda block: _bfs_block(adjacency, block), blocks, workers)

    total = sum(block_sum for block_sum, _ in results)
    diameter = max(block_max for _, block_max in results)
    # Each source contributes n - 1 ordered pairs; ordered and unordered means coincide
    mean = total / (sources.size * (n - 1))

    log_with_context(
        logger, "DEBUG",
        "Computed path statistics",
        nodes=n,
        sources=int(sources.size),
        approximate=approximate
    )
    return PathStatistics(mean, diameter, int(sources.size), approximate)


def mean_path_length(g: SimpleGraph, workers: int = 1) -> float:
    """Exact average shortest-path length over unordered node pairs."""
    return path_statistics(g, workers=workers).mean_path_length


def diameter(g: SimpleGraph, workers: int = 1) -> int:
    """Exact largest shortest-path length."""
    return path_statistics(g, workers=workers).diameter


def triangle_counts(g: SimpleGraph, workers: int = 1) -> np.ndarray:
    """Number of triangles through each node (edges among its neighbors)."""
    if g.n_nodes == 0:
        return np.zeros(0, dtype=np.int64)
    adjacency = g.adjacency_matrix()

    def block_triangles(start: int) -> np.ndarray:
        rows = adjacency[start:start + _ROW_BLOCK]
        closed = (rows @ adjacency).multiply(rows)
        return np.asarray(closed.sum(axis=1), dtype=np.int64).ravel() // 2

    starts = list(range(0, g.n_nodes, _ROW_BLOCK))
    return np.concatenate(ordered_map(block_triangles, starts, workers))


def local_clustering(g: SimpleGraph, workers: int = 1) -> np.ndarray:
    """C_i = 2 t_i / (k_i (k_i - 1)); 0 where k_i < 2."""
    k = g.degrees().astype(np.float64)
    t = triangle_counts(g, workers).astype(np.float64)
    pairs = k * (k - 1.0)
    coefficients = np.zeros(g.n_nodes, dtype=np.float64)
    np.divide(2.0 * t, pairs, out=coefficients, where=pairs > 0)
    return coefficients


def clustering_coefficient(
    g: SimpleGraph,
    exclude_low_degree: bool = False,
    workers: int = 1
) -> float:
    """
    Watts-Strogatz clustering coefficient.

    Args:
        g: Graph with at least one node
        exclude_low_degree: Average only over nodes with degree >= 2
        workers: Threads for triangle counting

    Raises:
        EmptyGraphError: Graph has no nodes
    """
    if g.n_nodes < 1:
        raise EmptyGraphError("clustering of an empty graph")
    coefficients = local_clustering(g, workers)
    if exclude_low_degree:
        mask = g.degrees() >= 2
        return float(coefficients[mask].mean()) if mask.any() else 0.0
    return float(coefficients.mean())


def c_rand_baseline(n: int, m: int, samples: int, seed: int, workers: int = 1) -> CRandBaseline:
    """
    Mean and sample standard deviation of clustering over G(n, m) graphs.

    Sample i is generated from the i-th derived seed, so results do not
    depend on the worker count.

    Raises:
        InfeasibleEdgeCountError: m > n(n-1)/2
    """
    require_int_at_least('samples', samples, 1)
    if m > n * (n - 1) // 2 or m < 0:
        raise InfeasibleEdgeCountError(n, m)

    seeds = derive_seeds(seed, samples)
    values = np.array(
        ordered_map(lambda s: clustering_coefficient(gnm_random(n, m, s)), seeds, workers)
    )
    std = float(values.std(ddof=1)) if samples > 1 else 0.0

    log_with_context(
        logger, "INFO",
        "Computed random-graph clustering baseline",
        n=n, m=m, samples=samples, mean=float(values.mean()), std=std
    )
    return CRandBaseline(float(values.mean()), std, samples, seed)


def degree_distribution(g: SimpleGraph) -> DegreeDistribution:
    """Exact degree histogram."""
    degrees, counts = np.unique(g.degrees(), return_counts=True)
    return DegreeDistribution(
        {int(k): int(c) for k, c in zip(degrees, counts)},
        g.n_nodes
    )


def _fit_points(d: DegreeDistribution, k_min: int, k_max: int, binning: Binning):
    """(log k, log p) points of the fit window; empty bins are left out."""
    xs, ys = [], []
    # Counts reduced by their gcd: a histogram and any multiple of it give identical points
    scale = math.gcd(d.n_nodes, *d.counts.values())
    counts = {k: c // scale for k, c in d.counts.items()}
    n_nodes = d.n_nodes // scale

    if binning.kind == 'raw':
        for k in range(k_min, k_max + 1):
            count = counts.get(k, 0)
            if count > 0:
                xs.append(math.log(k))
                ys.append(math.log(count) - math.log(n_nodes))
        return np.array(xs), np.array(ys)

    j = 0
    while True:
        lo = math.ceil(k_min * binning.base ** j)
        hi = min(math.ceil(k_min * binning.base ** (j + 1)) - 1, k_max)
        j += 1
        if lo > k_max:
            break
        if hi < lo:
            continue
        degrees = np.arange(lo, hi + 1)
        count = sum(counts.get(int(k), 0) for k in degrees)
        if count == 0:
            continue
        width = degrees.size
        # Bin position: geometric mean of the integer degrees it holds
        xs.append(float(np.log(degrees).mean()))
        ys.append(math.log(count) - math.log(n_nodes * width))
    return np.array(xs), np.array(ys)


def fit_power_law(
    d: DegreeDistribution,
    k_min: int,
    k_max: int,
    binning: Binning = Binning()
) -> PowerLawFit:
    """
    Least-squares fit of log p(k) against log k over [k_min, k_max].

    With log binning, bin fractions are divided by the number of integer
    degrees in the bin before fitting. gamma is minus the slope.

    Raises:
        InvalidParameterError: Bad window
        InsufficientBinsError: Fewer than three nonempty bins in the window
    """
    require_int_at_least('k_min', k_min, 1)
    if not k_min < k_max:
        raise InvalidParameterError(f"k_min must be < k_max, got {k_min} >= {k_max}")
    if d.n_nodes == 0:
        raise InsufficientBinsError("degree distribution is empty")

    x, y = _fit_points(d, k_min, k_max, binning)
    if x.size < 3:
        raise InsufficientBinsError(
            f"{x.size} nonempty bins in [{k_min}, {k_max}], need at least 3"
        )

    line = stats.linregress(x, y)
    slope = float(line.slope)
    stderr = float(line.stderr)
    # linregress reports r = 0 for a flat line; every point lies on it
    r_squared = float(line.rvalue) ** 2 if np.ptp(y) > 0 else 1.0

    return PowerLawFit(
        gamma=-slope + 0.0,
        stderr=stderr,
        k_min=k_min,
        k_max=k_max,
        binning=binning,
        r_squared=r_squared,
        points=int(x.size)
    )


def compute_network_metrics(
    g: SimpleGraph,
    with_paths: bool = True,
    sample_sources: Optional[int] = None,
    exclude_low_degree: bool = False,
    crand_samples: int = 0,
    seed: int = 0,
    workers: int = 1
) -> NetworkMetrics:
    """
    Full metrics bundle for one graph.

    Args:
        g: Graph (connected when with_paths is set)
        with_paths: Compute mean path length and diameter
        sample_sources: Sampled BFS source count (None for exact)
        exclude_low_degree: Clustering variant ignoring degree < 2 nodes
        crand_samples: G(n, m) samples for C_rand (0 to skip)
        seed: Master seed for sampling and C_rand
        workers: Thread count
    """
    paths = path_statistics(g, sample_sources, seed, workers) if with_paths else None
    c_rand = (
        c_rand_baseline(g.n_nodes, g.n_edges, crand_samples, seed, workers)
        if crand_samples > 0 else None
    )
    return NetworkMetrics(
        n_nodes=g.n_nodes,
        n_edges=g.n_edges,
        avg_degree=average_degree(g),
        mean_path_length=paths.mean_path_length if paths else None,
        diameter=paths.diameter if paths else None,
        clustering=clustering_coefficient(g, exclude_low_degree, workers),
        c_rand=c_rand,
        approximate=bool(paths and paths.approximate)
    )
