"""
Random and fitness-model graph generators.

gnm_random supplies the C_rand baseline; fitness_network supplies synthetic
scale-free hosts standing in for dictionary networks; graph_to_corpus turns
any graph back into a compound corpus so synthetic data can go through the
whole pipeline.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from app.errors import InfeasibleEdgeCountError, InvalidParameterError, LabelingError
from app.services.corpus import Compound
from app.services.graphcore import SimpleGraph
from app.utils.logger import get_logger, log_with_context
from app.utils.seeding import make_rng
from app.utils.validators import require_choice, require_finite, require_int_at_least

logger = get_logger(__name__)

# Labels for synthetic corpora come from the CJK Unified Ideographs block.
CJK_BLOCK_START = 0x4E00
CJK_BLOCK_END = 0x9FFF

# Above this share of all pairs, gnm_random samples the missing edges instead.
_DENSE_FRACTION = 0.25

LINK_RULES = ('threshold', 'product')


def _sample_distinct_pairs(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    """
    Rejection-sample `count` distinct unordered pairs, keyed u * n + v (u < v).

    Ordered pairs are drawn uniformly, self-pairs and repeats rejected; the
    first `count` distinct keys in draw order form a uniform subset.
    """
    chosen = np.zeros(0, dtype=np.int64)
    while chosen.size < count:
        need = count - chosen.size
        draws = rng.integers(0, n, size=(2 * need + 16, 2))
        draws = draws[draws[:, 0] != draws[:, 1]]
        keys = np.minimum(draws[:, 0], draws[:, 1]) * n + np.maximum(draws[:, 0], draws[:, 1])
        merged = np.concatenate([chosen, keys])
        _, first = np.unique(merged, return_index=True)
        chosen = merged[np.sort(first)][:count]
    return chosen


def gnm_random(n: int, m: int, seed: int) -> SimpleGraph:
    """
    Uniform simple graph with exactly n nodes and m edges.

    Uses rejection sampling of edges for m <= 0.25 n(n-1)/2 and samples the
    complement above that. Bit-exact per seed.

    Raises:
        InfeasibleEdgeCountError: m outside [0, n(n-1)/2]
    """
    require_int_at_least('n', n, 0)
    total = n * (n - 1) // 2
    if m < 0 or m > total:
        raise InfeasibleEdgeCountError(n, m)

    rng = make_rng(seed)
    if m <= _DENSE_FRACTION * total:
        keys = _sample_distinct_pairs(rng, n, m)
    else:
        excluded = _sample_distinct_pairs(rng, n, total - m)
        upper, lower = np.triu_indices(n, k=1)
        every = upper.astype(np.int64) * n + lower
        keys = every[~np.isin(every, excluded)]

    edges = np.column_stack([keys // max(n, 1), keys % max(n, 1)])
    return SimpleGraph.from_edges(n, edges)


@dataclass(frozen=True)
class FitnessConfig:
    """
    Fitness-model parameters.

    Fitness is exponential with the given rate. The threshold rule links
    i and j when x_i + x_j >= z (z may instead be tuned to `target_edges`);
    the product rule links them with probability min(1, c x_i x_j).
    """

    n: int
    rate: float = 1.0
    link_rule: str = 'threshold'
    threshold: Optional[float] = None
    target_edges: Optional[int] = None
    product_c: float = 1.0
    seed: int = 0
    fitness_law: str = 'exponential'

    def __post_init__(self):
        require_int_at_least('n', self.n, 2)
        require_choice('fitness_law', self.fitness_law, ('exponential',))
        require_choice('link_rule', self.link_rule, LINK_RULES)
        if require_finite('rate', self.rate) <= 0:
            raise InvalidParameterError(f"rate must be > 0, got {self.rate}")
        if self.link_rule == 'threshold' and (self.threshold is None) == (self.target_edges is None):
            raise InvalidParameterError("threshold rule needs exactly one of threshold or target_edges")
        if self.target_edges is not None:
            require_int_at_least('target_edges', self.target_edges, 0)
            if self.target_edges > self.n * (self.n - 1) // 2:
                raise InfeasibleEdgeCountError(self.n, self.target_edges)
        if self.link_rule == 'product':
            require_finite('product_c', self.product_c, 0.0)


def _pairs_at_or_above(sorted_fitness: np.ndarray, z: float) -> int:
    """Number of unordered pairs with x_i + x_j >= z."""
    n = sorted_fitness.size
    starts = np.searchsorted(sorted_fitness, z - sorted_fitness, side='left')
    starts = np.maximum(starts, np.arange(n) + 1)
    return int(np.clip(n - starts, 0, None).sum())


def threshold_for_edges(fitness: np.ndarray, target_edges: int) -> float:
    """
    Threshold z giving approximately `target_edges` pairs with x_i + x_j >= z.

    Bisection on z; the returned z never yields more than target_edges pairs
    by more than float resolution allows.
    """
    xs = np.sort(np.asarray(fitness, dtype=np.float64))
    lo, hi = 0.0, 2.0 * float(xs[-1]) + 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _pairs_at_or_above(xs, mid) > target_edges:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    return hi


def _threshold_edges(fitness: np.ndarray, z: float) -> np.ndarray:
    order = np.argsort(fitness, kind='stable')
    xs = fitness[order]
    n = xs.size
    blocks = []
    for i in range(n):
        start = int(np.searchsorted(xs, z - fitness[i], side='left'))
        # searchsorted on z - x_i may disagree with x_i + x_j >= z by one ulp
        while start > 0 and fitness[i] + xs[start - 1] >= z:
            start -= 1
        while start < n and fitness[i] + xs[start] < z:
            start += 1
        partners = order[start:]
        partners = partners[partners > i]
        if partners.size:
            blocks.append(np.column_stack([np.full(partners.size, i), partners]))
    return np.concatenate(blocks) if blocks else np.zeros((0, 2), dtype=np.int64)


def _product_edges(fitness: np.ndarray, c: float, rng: np.random.Generator) -> np.ndarray:
    n = fitness.size
    blocks = []
    for i in range(n - 1):
        partners = np.arange(i + 1, n)
        probability = np.minimum(1.0, c * fitness[i] * fitness[partners])
        linked = partners[rng.random(partners.size) < probability]
        if linked.size:
            blocks.append(np.column_stack([np.full(linked.size, i), linked]))
    return np.concatenate(blocks) if blocks else np.zeros((0, 2), dtype=np.int64)


def fitness_network(cfg: FitnessConfig, fitness: Optional[np.ndarray] = None) -> SimpleGraph:
    """
    Fitness-model graph.

    Args:
        cfg: Model parameters
        fitness: Explicit fitness values (skips drawing; length must be cfg.n)

    Returns:
        Graph with node_data['fitness'] holding each node's fitness
    """
    rng = make_rng(cfg.seed)
    if fitness is None:
        fitness = rng.exponential(1.0 / cfg.rate, size=cfg.n)
    fitness = np.asarray(fitness, dtype=np.float64)
    if fitness.size != cfg.n:
        raise InvalidParameterError(f"{fitness.size} fitness values for n={cfg.n}")

    if cfg.link_rule == 'threshold':
        z = cfg.threshold if cfg.threshold is not None else threshold_for_edges(fitness, cfg.target_edges)
        edges = _threshold_edges(fitness, z)
    else:
        z = None
        edges = _product_edges(fitness, cfg.product_c, rng)

    graph = SimpleGraph.from_edges(cfg.n, edges, node_data={'fitness': fitness})
    log_with_context(
        logger, "INFO",
        "Generated fitness network",
        n=cfg.n,
        rule=cfg.link_rule,
        threshold=z,
        edges=graph.n_edges,
        seed=cfg.seed
    )
    return graph


def cjk_labels(n: int) -> List[str]:
    """First n characters of the CJK Unified Ideographs block (U+4E00..U+9FFF)."""
    capacity = CJK_BLOCK_END - CJK_BLOCK_START + 1
    if n > capacity:
        raise LabelingError(f"{n} nodes exceed the {capacity} CJK labels available")
    return [chr(CJK_BLOCK_START + i) for i in range(n)]


def graph_to_corpus(g: SimpleGraph, labeling: Optional[Sequence[str]] = None) -> List[Compound]:
    """
    One compound per edge, oriented lower id -> higher id, multiplicity 1.

    Args:
        g: Graph
        labeling: Character per node; defaults to the graph's labels, then
                  to the CJK block

    Raises:
        LabelingError: Wrong length, non-single characters or collisions
    """
    if labeling is None:
        labeling = g.labels if g.labels is not None else cjk_labels(g.n_nodes)
    labeling = list(labeling)

    if len(labeling) != g.n_nodes:
        raise LabelingError(f"{len(labeling)} labels for {g.n_nodes} nodes")
    if any(len(label) != 1 for label in labeling):
        raise LabelingError("every label must be a single character")
    if len(set(labeling)) != len(labeling):
        raise LabelingError("labels collide")

    return [Compound(labeling[u], labeling[v], 1) for u, v in g.edge_array()]
