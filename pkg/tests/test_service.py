"""
Tests for the network pipeline service.
"""

import pytest

from app.errors import CorpusParseError, EmptyCorpusError, EmptyGraphError
from app.services.corpus import CharSet, Compound
from app.services.graphcore import SimpleGraph
from app.services.metrics import NetworkMetrics


def test_build_network(pipeline_service, sample_corpus_path):
    """Corpus reduces to its maximal cluster."""
    with open(sample_corpus_path, encoding='utf-8') as handle:
        result = pipeline_service.build_network(handle)

    assert result.network.n_nodes == 5
    assert result.network.n_edges == 3
    assert result.maximal.labels == ('日', '本', '曜')
    assert result.summary['components']['clusters'] == 2
    assert result.summary['maximal'] == {"nodes": 3, "edges": 2}


def test_build_network_uses_default_policy(pipeline_service):
    with pytest.raises(CorpusParseError):
        pipeline_service.build_network(['日本', '日'])

    result = pipeline_service.build_network(['日本', '日'], policy='skip')
    assert result.report.skipped == 1


def test_build_network_empty_corpus(pipeline_service):
    with pytest.raises(EmptyCorpusError):
        pipeline_service.build_network(['# only a comment'])


def test_restrict_takes_maximal(pipeline_service, two_clusters):
    result = pipeline_service.restrict(two_clusters, CharSet(frozenset('ABDE'), 'test'))

    assert result.graph.labels == ('A', 'B')
    assert result.summary['induced_nodes'] == 4
    assert result.summary['nodes'] == 2
    assert result.missing == []


def test_restrict_without_maximal(pipeline_service, two_clusters):
    result = pipeline_service.restrict(two_clusters, CharSet(frozenset('ABDEZ')), take_maximal=False)

    assert result.graph.n_nodes == 4
    assert result.graph.n_edges == 2
    assert result.missing == ['Z']


def test_restrict_empty_intersection(pipeline_service, triangle):
    result = pipeline_service.restrict(triangle, CharSet(frozenset('XY')))

    assert result.graph.n_nodes == 0
    assert result.summary['edges'] == 0


def test_ensure_connected(pipeline_service, two_clusters):
    assert pipeline_service.ensure_connected(two_clusters, take_maximal=False) is two_clusters
    assert pipeline_service.ensure_connected(two_clusters, take_maximal=True).n_nodes == 3


def test_ensure_connected_empty(pipeline_service):
    with pytest.raises(EmptyGraphError):
        pipeline_service.ensure_connected(SimpleGraph.empty(), take_maximal=True)


def test_metrics_default_samples(pipeline_service, triangle, mocker):
    compute = mocker.patch(
        'app.services.pipeline_service.compute_network_metrics',
        return_value=NetworkMetrics(3, 3, 2.0, 1.0, 1, 1.0)
    )

    pipeline_service.metrics(triangle, seed=4)
    pipeline_service.metrics(triangle, seed=4, crand_samples=0)

    assert compute.call_args_list[0].kwargs['crand_samples'] == 5
    assert compute.call_args_list[1].kwargs['crand_samples'] == 0
    assert compute.call_args_list[0].kwargs['seed'] == 4


def test_build_from_parsed_compounds(pipeline_service):
    result = pipeline_service.build_from_compounds([Compound('日', '本', 2), Compound('本', '日', 1)])

    assert result.report.accepted == 3
    assert result.maximal.n_edges == 1
    assert result.summary['multigraph']['total_multiplicity'] == 3


def test_build_from_no_compounds(pipeline_service):
    with pytest.raises(EmptyCorpusError):
        pipeline_service.build_from_compounds([])
