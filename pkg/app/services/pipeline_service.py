"""
Pipeline orchestration used by the command-line interface.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from app.errors import EmptyCorpusError, EmptyGraphError
from app.services.corpus import CharSet, Compound, ParseReport, parse_compounds
from app.services.graphcore import (
    MultiDigraph,
    SimpleGraph,
    build_multigraph,
    connected_components,
    extract_component,
    maximal_component,
    restrict_to_charset,
    simplify,
)
from app.services.metrics import NetworkMetrics, compute_network_metrics
from app.utils.logger import get_logger, log_with_context

logger = get_logger(__name__)


@dataclass
class BuildResult:
    """Everything the build pipeline produced."""

    compounds: List[Compound]
    report: ParseReport
    multigraph: MultiDigraph
    network: SimpleGraph
    maximal: SimpleGraph
    summary: Dict


@dataclass
class RestrictResult:
    graph: SimpleGraph
    missing: List[str]
    summary: Dict


class NetworkPipelineService:
    """
    Compound network pipeline service.

    Orchestrates:
    1. Corpus parsing and network construction (maximal cluster)
    2. Restriction to a character whitelist
    3. Metric bundles with the configured sampling defaults
    """

    def __init__(self, workers: int = 1, crand_samples: int = 50, parse_policy: str = 'strict'):
        """
        Initialize service with defaults.

        Args:
            workers: Thread count for parallel metric work
            crand_samples: Default G(n, m) sample count for C_rand
            parse_policy: Default corpus parse policy
        """
        self.workers = workers
        self.crand_samples = crand_samples
        self.parse_policy = parse_policy

    def build_network(self, lines: Iterable[str], policy: Optional[str] = None) -> BuildResult:
        """
        Parse a corpus and reduce it to the maximal cluster.

        Steps: parse -> multigraph -> simplify -> components -> maximal cluster.

        Raises:
            CorpusParseError: Malformed line under the strict policy
            EmptyCorpusError: No compounds accepted
        """
        policy = policy or self.parse_policy
        compounds, report = parse_compounds(lines, policy)
        return self.build_from_compounds(compounds, report)

    def build_from_compounds(self, compounds: List[Compound], report: Optional[ParseReport] = None) -> BuildResult:
        """
        Reduce an already parsed compound list (e.g. a TSV edge list) to the maximal cluster.

        Raises:
            EmptyCorpusError: No compounds
        """
        if not compounds:
            raise EmptyCorpusError("corpus contains no two-character compounds")
        if report is None:
            report = ParseReport(accepted=sum(c.multiplicity for c in compounds))

        multigraph = build_multigraph(compounds)
        network = simplify(multigraph)
        partition = connected_components(network)
        maximal, _ = extract_component(network, partition, partition.maximal_id)

        summary = {
            "parse": report.to_dict(),
            "multigraph": multigraph.summary(),
            "simple": {"nodes": network.n_nodes, "edges": network.n_edges},
            "components": partition.summary(),
            "maximal": {"nodes": maximal.n_nodes, "edges": maximal.n_edges},
        }

        log_with_context(
            logger, "INFO",
            "Network built",
            nodes=network.n_nodes,
            edges=network.n_edges,
            clusters=partition.n_components,
            maximal_nodes=maximal.n_nodes
        )

        return BuildResult(compounds, report, multigraph, network, maximal, summary)

    def restrict(self, graph: SimpleGraph, whitelist: CharSet, take_maximal: bool = True) -> RestrictResult:
        """
        Induce the graph on a whitelist, then (by default) keep its maximal component.

        An empty intersection yields an empty graph with a warning.
        """
        restriction = restrict_to_charset(graph, whitelist)
        result_graph = restriction.graph

        induced_nodes = result_graph.n_nodes
        if take_maximal and result_graph.n_nodes > 0:
            result_graph, _ = maximal_component(result_graph)

        summary = {
            "label": whitelist.label,
            "whitelist_size": len(whitelist),
            "missing": len(restriction.missing),
            "induced_nodes": induced_nodes,
            "nodes": result_graph.n_nodes,
            "edges": result_graph.n_edges,
            "maximal": take_maximal,
        }
        return RestrictResult(result_graph, restriction.missing, summary)

    def ensure_connected(self, graph: SimpleGraph, take_maximal: bool) -> SimpleGraph:
        """Return the graph itself, or its maximal component when asked to."""
        if graph.n_nodes == 0:
            raise EmptyGraphError("graph has no nodes")
        if take_maximal:
            component, _ = maximal_component(graph)
            if component.n_nodes != graph.n_nodes:
                log_with_context(
                    logger, "INFO",
                    "Selected maximal component",
                    nodes=component.n_nodes,
                    of=graph.n_nodes
                )
            return component
        return graph

    def metrics(
        self,
        graph: SimpleGraph,
        seed: int,
        crand_samples: Optional[int] = None,
        sample_sources: Optional[int] = None,
        exclude_low_degree: bool = False
    ) -> NetworkMetrics:
        """Full metric bundle, C_rand included when crand_samples > 0."""
        samples = self.crand_samples if crand_samples is None else crand_samples
        result = compute_network_metrics(
            graph,
            with_paths=True,
            sample_sources=sample_sources,
            exclude_low_degree=exclude_low_degree,
            crand_samples=samples,
            seed=seed,
            workers=self.workers
        )
        log_with_context(logger, "INFO", "Metrics computed", **{
            k: v for k, v in result.to_dict().items() if k != 'c_rand'
        })
        return result
