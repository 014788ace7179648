"""
Degree-biased invasion on a host graph and calibration of its exponent.

One uniformly chosen node starts invaded. At every step one uninvaded node
adjacent to the invaded cluster (the frontier) is invaded with probability

    p_i = k_i^alpha / sum_j k_j^alpha

where k is the node's degree in the host graph, fixed for the whole run.
alpha = 0 is random growth; alpha > 0 favours well-connected nodes. The
process stops at the requested cluster size.

Ensembles derive one seed per run from the master seed by run index, and
calibration evaluates every alpha with the same seed set (common random
numbers) so the curve <k>(alpha) is smooth enough to bisect.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.errors import (
    CalibrationBracketError,
    DisconnectedGraphError,
    InvalidParameterError,
)
from app.services.graphcore import SimpleGraph, connected_components
from app.services.metrics import (
    DegreeDistribution,
    NetworkMetrics,
    compute_network_metrics,
    degree_distribution,
)
from app.utils.logger import get_logger, log_with_context
from app.utils.parallel import ordered_map
from app.utils.seeding import derive_seeds, make_rng
from app.utils.validators import require_finite, require_int_at_least

logger = get_logger(__name__)

# Bisection stops once the alpha bracket is narrower than this.
MIN_ALPHA_INTERVAL = 0.01


class InvasionState:
    """
    Mutable state of one invasion run.

    The frontier is kept as a boolean mask over host nodes, so iterating it
    yields node ids in ascending order; sampling walks the cumulative weights
    in that order.
    """

    def __init__(
        self,
        host: SimpleGraph,
        alpha: float,
        rng: np.random.Generator,
        start_node: Optional[int] = None
    ):
        self.host = host
        self.alpha = float(alpha)
        self.rng = rng

        degrees = host.degrees()
        # exp(alpha ln k); frontier nodes of a connected host always have k >= 1
        with np.errstate(divide='ignore', invalid='ignore'):
            self.weights = np.exp(self.alpha * np.log(degrees.astype(np.float64)))
        self.invaded_mask = np.zeros(host.n_nodes, dtype=bool)
        self.frontier_mask = np.zeros(host.n_nodes, dtype=bool)
        self.invaded: List[int] = []

        if start_node is None:
            start_node = int(rng.integers(host.n_nodes))
        elif not 0 <= start_node < host.n_nodes:
            raise InvalidParameterError(f"start node {start_node} not in host")
        self._invade(int(start_node))

    def _invade(self, node: int) -> None:
        self.invaded.append(node)
        self.invaded_mask[node] = True
        self.frontier_mask[node] = False
        neighbors = self.host.neighbors(node)
        self.frontier_mask[neighbors[~self.invaded_mask[neighbors]]] = True

    def frontier(self) -> np.ndarray:
        """Uninvaded nodes adjacent to the cluster, ascending id."""
        return np.flatnonzero(self.frontier_mask)

    def probabilities(self) -> Tuple[np.ndarray, np.ndarray]:
        """(frontier ids, invasion probabilities) for the next step."""
        ids = self.frontier()
        w = self.weights[ids]
        return ids, w / w.sum()

    def choose(self) -> int:
        """Draw the next node to invade without invading it."""
        ids = self.frontier()
        if ids.size == 0:
            raise InvalidParameterError("frontier is empty; host component exhausted")
        cumulative = np.cumsum(self.weights[ids])
        u = self.rng.random() * cumulative[-1]
        position = int(np.searchsorted(cumulative, u, side='right'))
        return int(ids[min(position, ids.size - 1)])

    def step(self) -> int:
        """Invade one frontier node; returns its id."""
        node = self.choose()
        self._invade(node)
        return node

    @property
    def size(self) -> int:
        return len(self.invaded)


@dataclass
class InvasionRun:
    """One finished invasion: node order, induced subgraph and its metrics."""

    invaded_nodes: List[int]
    induced: SimpleGraph
    metrics: NetworkMetrics
    seed: int
    alpha: float

    def to_dict(self, host: Optional[SimpleGraph] = None) -> Dict:
        data = {"seed": self.seed, "alpha": self.alpha, "metrics": self.metrics.to_dict()}
        if host is not None and host.labels is not None:
            data["invaded"] = ''.join(host.labels[i] for i in self.invaded_nodes)
        else:
            data["invaded"] = list(self.invaded_nodes)
        return data


@dataclass(frozen=True)
class Stat:
    mean: float
    std: float

    @classmethod
    def of(cls, values: Sequence[float]) -> 'Stat':
        arr = np.asarray(values, dtype=np.float64)
        std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
        return cls(float(arr.mean()), std)

    def to_dict(self) -> Dict:
        return {"mean": self.mean, "std": self.std}


@dataclass
class EnsembleResult:
    """Aggregated metrics of an invasion ensemble."""

    alpha: float
    target_size: int
    seed: int
    avg_degree: Stat
    mean_path_length: Optional[Stat]
    clustering: Stat
    runs: List[InvasionRun] = field(default_factory=list)

    def pooled_degree_distribution(self) -> DegreeDistribution:
        """Degree histogram pooled over every run's induced subgraph."""
        pooled: Dict[int, int] = {}
        for run in self.runs:
            for k, count in degree_distribution(run.induced).counts.items():
                pooled[k] = pooled.get(k, 0) + count
        return DegreeDistribution.from_counts(pooled)

    def to_dict(self, host: Optional[SimpleGraph] = None) -> Dict:
        return {
            "alpha": self.alpha,
            "target_size": self.target_size,
            "runs": len(self.runs),
            "seed": self.seed,
            "avg_degree": self.avg_degree.to_dict(),
            "mean_path_length": self.mean_path_length.to_dict() if self.mean_path_length else None,
            "clustering": self.clustering.to_dict(),
            "records": [run.to_dict(host) for run in self.runs],
        }


@dataclass(frozen=True)
class AlphaEvaluation:
    alpha: float
    mean_k: float
    std_k: float


@dataclass
class CalibrationResult:
    """Outcome of calibrate_alpha, with every evaluated point for plotting."""

    alpha_star: float
    target_k: float
    achieved_k: Stat
    runs: int
    evaluations: List[AlphaEvaluation]
    seed: int
    tolerance: float
    converged: bool

    def to_dict(self) -> Dict:
        return {
            "alpha_star": self.alpha_star,
            "target_k": self.target_k,
            "achieved_k": self.achieved_k.to_dict(),
            "runs": self.runs,
            "tolerance": self.tolerance,
            "converged": self.converged,
            "seed": self.seed,
            "evaluations": [
                {"alpha": e.alpha, "mean_k": e.mean_k, "std_k": e.std_k}
                for e in sorted(self.evaluations, key=lambda e: e.alpha)
            ],
        }


def _check_host(host: SimpleGraph, target_size: int, alpha: float) -> None:
    require_int_at_least('target_size', target_size, 1)
    if target_size > host.n_nodes:
        raise InvalidParameterError(
            f"target size {target_size} exceeds host size {host.n_nodes}"
        )
    require_finite('alpha', alpha, 0.0)
    partition = connected_components(host)
    if partition.n_components > 1:
        other = int(np.flatnonzero(partition.assignment != partition.assignment[0])[0])
        raise DisconnectedGraphError(host.label(0), host.label(other))


def grow(
    host: SimpleGraph,
    target_size: int,
    alpha: float,
    seed: int,
    start_node: Optional[int] = None
) -> List[int]:
    """Invaded node ids in invasion order (host assumed connected)."""
    state = InvasionState(host, alpha, make_rng(seed), start_node)
    while state.size < target_size:
        state.step()
    return state.invaded


def invade(
    host: SimpleGraph,
    target_size: int,
    alpha: float,
    seed: int,
    start_node: Optional[int] = None,
    with_paths: bool = True
) -> InvasionRun:
    """
    Run one invasion and measure the invaded subgraph.

    Args:
        host: Connected host graph
        target_size: Number of nodes to invade (1..host.n_nodes)
        alpha: Degree-bias exponent (>= 0)
        seed: Run seed
        start_node: Fixed first node instead of a uniform draw
        with_paths: Also compute mean path length and diameter

    Raises:
        InvalidParameterError: target_size or alpha out of range
        DisconnectedGraphError: Host is not connected
    """
    _check_host(host, target_size, alpha)
    return _invade_checked(host, target_size, alpha, seed, start_node, with_paths)


def _invade_checked(host, target_size, alpha, seed, start_node, with_paths) -> InvasionRun:
    invaded = grow(host, target_size, alpha, seed, start_node)
    induced, _ = host.subgraph(invaded)
    metrics = compute_network_metrics(induced, with_paths=with_paths and induced.n_nodes >= 2)
    return InvasionRun(invaded, induced, metrics, seed, alpha)


def invade_ensemble(
    host: SimpleGraph,
    target_size: int,
    alpha: float,
    runs: int,
    seed: int,
    start_node: Optional[int] = None,
    with_paths: bool = True,
    workers: int = 1
) -> EnsembleResult:
    """
    Independent invasions with run seeds derived from the master seed.

    Aggregation follows run index, so results do not depend on `workers`.
    """
    _check_host(host, target_size, alpha)
    require_int_at_least('runs', runs, 1)

    seeds = derive_seeds(seed, runs)
    records = ordered_map(
        lambda s: _invade_checked(host, target_size, alpha, s, start_node, with_paths),
        seeds,
        workers
    )

    paths = with_paths and target_size >= 2
    result = EnsembleResult(
        alpha=alpha,
        target_size=target_size,
        seed=seed,
        avg_degree=Stat.of([r.metrics.avg_degree for r in records]),
        mean_path_length=Stat.of([r.metrics.mean_path_length for r in records]) if paths else None,
        clustering=Stat.of([r.metrics.clustering for r in records]),
        runs=records
    )

    log_with_context(
        logger, "INFO",
        "Invasion ensemble finished",
        alpha=alpha,
        target_size=target_size,
        runs=runs,
        mean_k=result.avg_degree.mean,
        std_k=result.avg_degree.std
    )
    return result


def _mean_induced_degree(
    host: SimpleGraph,
    target_size: int,
    alpha: float,
    seeds: Sequence[int],
    start_node: Optional[int],
    workers: int
) -> AlphaEvaluation:
    """<k> of the invaded subgraph over a fixed seed set."""
    def induced_k(run_seed: int) -> float:
        invaded = grow(host, target_size, alpha, run_seed, start_node)
        induced, _ = host.subgraph(invaded)
        return 2.0 * induced.n_edges / induced.n_nodes

    stat = Stat.of(ordered_map(induced_k, seeds, workers))
    return AlphaEvaluation(alpha, stat.mean, stat.std)


def sweep_alpha(
    host: SimpleGraph,
    target_size: int,
    alphas: Sequence[float],
    runs: int,
    seed: int,
    start_node: Optional[int] = None,
    workers: int = 1
) -> List[AlphaEvaluation]:
    """Mean and std of <k> over a fixed alpha grid, common random numbers throughout."""
    for alpha in alphas:
        _check_host(host, target_size, alpha)
    require_int_at_least('runs', runs, 1)
    seeds = derive_seeds(seed, runs)
    return [
        _mean_induced_degree(host, target_size, float(alpha), seeds, start_node, workers)
        for alpha in alphas
    ]


def calibrate_alpha(
    host: SimpleGraph,
    target_size: int,
    target_k: float,
    alpha_range: Tuple[float, float],
    runs: int,
    tol: float,
    seed: int,
    start_node: Optional[int] = None,
    workers: int = 1
) -> CalibrationResult:
    """
    Find alpha whose ensemble-mean <k> matches target_k.

    Both ends of the range are evaluated first; then the bracket is bisected
    until |mean <k> - target_k| <= tol or the bracket is narrower than 0.01.
    Every evaluation uses the same derived seed set.

    Raises:
        CalibrationBracketError: target_k not between <k>(lo) and <k>(hi),
            or the two ends give the same <k>
    """
    lo, hi = float(alpha_range[0]), float(alpha_range[1])
    if not lo < hi:
        raise InvalidParameterError(f"alpha range must satisfy lo < hi, got [{lo}, {hi}]")
    require_finite('tol', tol, 0.0)
    _check_host(host, target_size, lo)
    require_int_at_least('runs', runs, 1)

    seeds = derive_seeds(seed, runs)

    def evaluate(alpha: float) -> AlphaEvaluation:
        point = _mean_induced_degree(host, target_size, alpha, seeds, start_node, workers)
        evaluations.append(point)
        log_with_context(
            logger, "INFO",
            "Calibration evaluation",
            alpha=alpha,
            mean_k=point.mean_k,
            std_k=point.std_k,
            target_k=target_k
        )
        return point

    evaluations: List[AlphaEvaluation] = []
    at_lo = evaluate(lo)
    at_hi = evaluate(hi)

    if at_lo.mean_k == at_hi.mean_k:
        raise CalibrationBracketError(at_lo.mean_k, at_hi.mean_k, target_k, "degenerate bracket")
    if not min(at_lo.mean_k, at_hi.mean_k) <= target_k <= max(at_lo.mean_k, at_hi.mean_k):
        raise CalibrationBracketError(at_lo.mean_k, at_hi.mean_k, target_k)

    increasing = at_hi.mean_k > at_lo.mean_k
    converged = False
    for point in (at_lo, at_hi):
        if abs(point.mean_k - target_k) <= tol:
            converged = True

    while not converged and hi - lo >= MIN_ALPHA_INTERVAL:
        mid = 0.5 * (lo + hi)
        point = evaluate(mid)
        if abs(point.mean_k - target_k) <= tol:
            converged = True
            break
        if (point.mean_k < target_k) == increasing:
            lo = mid
        else:
            hi = mid

    best = min(evaluations, key=lambda e: (abs(e.mean_k - target_k), e.alpha))
    result = CalibrationResult(
        alpha_star=best.alpha,
        target_k=target_k,
        achieved_k=Stat(best.mean_k, best.std_k),
        runs=runs,
        evaluations=evaluations,
        seed=seed,
        tolerance=tol,
        converged=converged
    )

    log_with_context(
        logger, "INFO",
        "Calibration finished",
        alpha_star=result.alpha_star,
        achieved_k=best.mean_k,
        target_k=target_k,
        evaluations=len(evaluations),
        converged=converged
    )
    return result
