"""
Tests for logging, configuration, seeding, worker pool and manifests.
"""

import io
import json
import logging

import numpy as np
import pytest

from app.config import Config
from app.errors import InvalidParameterError
from app.utils.logger import JSONFormatter, _shared_handlers, get_logger, log_with_context, set_log_level
from app.utils.manifest import RunManifest, file_digest
from app.utils.parallel import ordered_map
from app.utils.seeding import derive_seeds
from app.utils.validators import require_choice, require_finite, require_int_at_least


def test_json_formatter_includes_context():
    record = logging.LogRecord('app.test', logging.INFO, __file__, 1, 'Loaded %s', ('日',), None)
    record.extra_data = {'size': 3}

    data = json.loads(JSONFormatter().format(record))

    assert data['message'] == 'Loaded 日'
    assert data['level'] == 'INFO'
    assert data['size'] == 3
    assert data['timestamp'].endswith('Z')


def test_log_with_context_passes_extra(caplog):
    logger = get_logger('app.test_context')

    with caplog.at_level(logging.INFO, logger='app.test_context'):
        log_with_context(logger, 'INFO', 'Network built', nodes=5)

    assert caplog.records[-1].extra_data == {'nodes': 5}


def test_set_log_level():
    logger = get_logger('app.test_level')

    set_log_level('WARNING')
    assert logger.level == logging.WARNING
    set_log_level('INFO')
    assert logger.level == logging.INFO


def test_config_validate_defaults():
    Config.validate()


def test_config_validate_collects_problems(monkeypatch):
    monkeypatch.setattr(Config, 'THREADS', 0)
    monkeypatch.setattr(Config, 'PARSE_POLICY', 'lenient')

    with pytest.raises(ValueError) as exc_info:
        Config.validate()

    assert 'THREADS' in str(exc_info.value)
    assert 'PARSE_POLICY' in str(exc_info.value)


def test_derived_seeds_are_index_stable():
    assert derive_seeds(1981, 10)[:4] == derive_seeds(1981, 4)
    assert derive_seeds(1981, 3) != derive_seeds(1982, 3)
    assert len(set(derive_seeds(0, 100))) == 100


def test_ordered_map_keeps_input_order():
    items = list(range(50))

    assert ordered_map(lambda x: x * x, items, workers=4) == [x * x for x in items]
    assert ordered_map(lambda x: x, [], workers=4) == []


def test_validators():
    assert require_int_at_least('n', 3, 1) == 3
    with pytest.raises(InvalidParameterError):
        require_int_at_least('n', 0, 1)
    with pytest.raises(InvalidParameterError):
        require_int_at_least('n', True, 0)
    with pytest.raises(InvalidParameterError):
        require_int_at_least('n', 2.5, 0)
    with pytest.raises(InvalidParameterError):
        require_finite('tol', float('inf'))
    with pytest.raises(InvalidParameterError):
        require_choice('binning', 'linear', ('raw', 'log'))


def test_manifest_written_next_to_output(tmp_path):
    source = tmp_path / 'input.txt'
    source.write_text('日本\n', encoding='utf-8')
    output = tmp_path / 'out.json'

    manifest = RunManifest.for_inputs('build', {'policy': 'strict'}, 7, [str(source)], '1.0.0')
    path = manifest.write(str(output))

    data = json.loads(path.read_text(encoding='utf-8'))
    assert path.name == 'out.json.manifest.json'
    assert data['subcommand'] == 'build'
    assert data['seed'] == 7
    assert data['input_digests'] == {str(source): file_digest(str(source))}
    assert data['created_at'].endswith('Z')


def test_json_formatter_converts_numpy_values():
    record = logging.LogRecord('app.test', logging.INFO, __file__, 1, 'Ensemble done', (), None)
    record.extra_data = {'mean_k': np.float64(4.5), 'runs': np.int64(50), 'sizes': np.array([3, 4])}

    data = json.loads(JSONFormatter().format(record))

    assert data['mean_k'] == 4.5
    assert data['runs'] == 50
    assert data['sizes'] == [3, 4]


def test_each_record_written_once():
    console = _shared_handlers()[0]
    stream = io.StringIO()
    original = console.setStream(stream)
    try:
        logger = get_logger("app.services.test_once")
        log_with_context(logger, "INFO", "Network built", nodes=5)
        log_with_context(get_logger("app.test_once"), "WARNING", "Duplicate charset entry")
    finally:
        console.setStream(original)

    lines = stream.getvalue().splitlines()
    assert [json.loads(line)["message"] for line in lines] == ["Network built", "Duplicate charset entry"]
    assert get_logger("app.services.test_once").handlers == []
    assert get_logger("app.services.test_once") is logger
