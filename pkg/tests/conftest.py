"""
Pytest fixtures and test configuration.
"""

from pathlib import Path

import pytest
from unittest.mock import Mock

from app.services.graphcore import SimpleGraph
from app.services.pipeline_service import NetworkPipelineService

FIXTURES = Path(__file__).parent / 'fixtures'


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full-size networks (deselect with -m "not slow")')


@pytest.fixture
def fixtures_dir():
    """Directory of checked-in fixture files."""
    return FIXTURES


@pytest.fixture
def sample_corpus_path():
    """Six-word corpus: 日本 本日 日曜 曜日 人人 大人."""
    return FIXTURES / 'sample_corpus.txt'


@pytest.fixture
def sample_charset_path():
    """Whitelist 日 本 曜 with one duplicate entry."""
    return FIXTURES / 'sample_charset.txt'


@pytest.fixture
def triangle():
    """K3 labeled A, B, C."""
    return SimpleGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)], labels=['A', 'B', 'C'])


@pytest.fixture
def path3():
    """Path A - B - C."""
    return SimpleGraph.from_edges(3, [(0, 1), (1, 2)], labels=['A', 'B', 'C'])


@pytest.fixture
def star5():
    """K_{1,5} with hub 0."""
    return SimpleGraph.from_edges(6, [(0, i) for i in range(1, 6)])


@pytest.fixture
def two_clusters():
    """Triangle 0-1-2 plus edge 3-4."""
    return SimpleGraph.from_edges(5, [(0, 1), (1, 2), (0, 2), (3, 4)], labels=list('ABCDE'))


@pytest.fixture
def invasion_host():
    """
    Host whose first step from node 0 has frontier degrees 1, 2, 2, 5.

    With alpha = 1 the frontier probabilities are 0.1, 0.2, 0.2, 0.5.
    """
    edges = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (2, 5), (3, 6),
        (4, 7), (4, 8), (4, 9), (4, 10),
    ]
    return SimpleGraph.from_edges(11, edges)


@pytest.fixture
def pipeline_service():
    """Pipeline service with small sampling defaults."""
    return NetworkPipelineService(workers=1, crand_samples=5, parse_policy='strict')


@pytest.fixture
def mock_pipeline_service():
    """Mock pipeline service."""
    service = Mock(spec=NetworkPipelineService)
    service.workers = 1
    return service
