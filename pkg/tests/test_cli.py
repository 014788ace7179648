"""
Tests for the command-line interface.
"""

import json
import time

import pytest

from app.adapters.json_graph import JsonGraphCodec
from app.cli import main
from app.services.generators import gnm_random
from app.services.graphcore import SimpleGraph, maximal_component
from app.services.metrics import NetworkMetrics


def save_graph(graph, path):
    JsonGraphCodec().save(graph, str(path))
    return str(path)


def load_json(path):
    return json.loads(path.read_text(encoding='utf-8'))


@pytest.fixture
def small_host(tmp_path):
    host, _ = maximal_component(gnm_random(120, 480, seed=2))
    labeled = SimpleGraph.from_edges(host.n_nodes, host.edge_array(),
                                     labels=[chr(0x4E00 + i) for i in range(host.n_nodes)])
    return save_graph(labeled, tmp_path / 'host.json')


def test_build_sample_corpus(tmp_path, sample_corpus_path):
    out = tmp_path / 'graph.json'

    code = main(['--quiet', 'build', str(sample_corpus_path), '--out', str(out)])

    assert code == 0
    graph = JsonGraphCodec().read(str(out))
    assert graph.labels == ('日', '本', '曜')
    assert graph.n_edges == 2

    summary = load_json(tmp_path / 'graph.json.summary.json')
    assert summary['components'] == {"clusters": 2, "maximal_size": 3, "maximal_fraction": 0.6}
    assert summary['multigraph']['self_loop_arcs'] == 1
    assert summary['parse']['accepted'] == 6

    manifest = load_json(tmp_path / 'graph.json.manifest.json')
    assert manifest['subcommand'] == 'build'
    assert str(sample_corpus_path) in manifest['input_digests']


def test_build_optional_exports(tmp_path, sample_corpus_path):
    out = tmp_path / 'graph.json'

    code = main(['build', str(sample_corpus_path), '--out', str(out),
                 '--full-out', str(tmp_path / 'full.json'), '--tsv', str(tmp_path / 'edges.tsv')])

    assert code == 0
    assert JsonGraphCodec().read(str(tmp_path / 'full.json')).n_nodes == 5
    assert (tmp_path / 'edges.tsv').read_text(encoding='utf-8').count('\n') == 6


def test_build_malformed_line(tmp_path):
    corpus = tmp_path / 'corpus.txt'
    corpus.write_text('日本\n日本語\n', encoding='utf-8')

    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 3
    assert main(['build', str(corpus), '--policy', 'skip', '--out', str(tmp_path / 'g.json')]) == 0


def test_build_empty_corpus(tmp_path):
    corpus = tmp_path / 'corpus.txt'
    corpus.write_text('# nothing\n', encoding='utf-8')

    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 3


def test_build_rejects_non_utf8(tmp_path):
    corpus = tmp_path / 'corpus.txt'
    corpus.write_bytes('日本\n'.encode('shift_jis'))

    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 3


def test_graph_file_not_utf8_is_input_error(tmp_path):
    graph = tmp_path / 'graph.json'
    graph.write_bytes('{"n_nodes":2,"labels":["日","本"],"edges":[[0,1]]}\n'.encode('shift_jis'))

    assert main(['metrics', str(graph), '--out', str(tmp_path / 'm.json')]) == 3
    assert main(['invade', str(graph), '--alpha', '1', '--target-size', '2',
                 '--out', str(tmp_path / 'i.json')]) == 3


def test_build_accepts_byte_order_mark(tmp_path):
    corpus = tmp_path / 'corpus.txt'
    corpus.write_bytes('日本\n本日\n'.encode('utf-8-sig'))

    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 0
    assert JsonGraphCodec().read(str(tmp_path / 'g.json')).labels == ('日', '本')


def test_build_from_tsv_edge_list(tmp_path, sample_corpus_path):
    tsv = tmp_path / 'edges.tsv'
    assert main(['build', str(sample_corpus_path), '--out', str(tmp_path / 'a.json'),
                 '--tsv', str(tsv)]) == 0

    assert main(['build', str(tsv), '--out', str(tmp_path / 'b.json')]) == 0

    from_corpus = load_json(tmp_path / 'a.json.summary.json')
    from_tsv = load_json(tmp_path / 'b.json.summary.json')
    assert from_tsv['multigraph'] == from_corpus['multigraph']
    assert from_tsv['components'] == from_corpus['components']
    assert from_tsv['parse']['accepted'] == 6
    assert load_json(tmp_path / 'b.json.manifest.json')['input_digests'].keys() == {str(tsv)}


def test_metrics_triangle(tmp_path, triangle):
    graph = save_graph(triangle, tmp_path / 'triangle.json')
    out = tmp_path / 'metrics.json'

    assert main(['metrics', graph, '--out', str(out)]) == 0

    data = load_json(out)
    assert data['avg_degree'] == 2.0
    assert data['mean_path_length'] == 1.0
    assert data['diameter'] == 1
    assert data['clustering'] == 1.0


def test_metrics_path3(tmp_path, path3):
    graph = save_graph(path3, tmp_path / 'p3.json')
    out = tmp_path / 'metrics.json'

    assert main(['metrics', graph, '--out', str(out)]) == 0
    assert round(load_json(out)['mean_path_length'], 6) == 1.333333


def test_metrics_disconnected_needs_maximal(tmp_path, two_clusters):
    graph = save_graph(two_clusters, tmp_path / 'two.json')
    out = tmp_path / 'metrics.json'

    assert main(['metrics', graph, '--out', str(out)]) == 5
    assert main(['metrics', graph, '--maximal', '--out', str(out)]) == 0
    assert load_json(out)['n_nodes'] == 3


def test_degree_and_fit(tmp_path, star5):
    graph = save_graph(star5, tmp_path / 'star.json')
    out = tmp_path / 'degree.csv'

    assert main(['degree', graph, '--out', str(out)]) == 0
    assert out.read_text(encoding='utf-8').splitlines()[0] == 'k,count,fraction'
    assert main(['fit', graph, '--k-min', '1', '--k-max', '5', '--binning', 'raw',
                 '--out', str(tmp_path / 'fit.json')]) == 6


def test_fit_power_law_csv(tmp_path):
    table = tmp_path / 'power.csv'
    rows = ['k,count,fraction'] + [f'{k},{round(1e7 / k ** 2)},0' for k in range(1, 101)]
    table.write_text('\n'.join(rows) + '\n', encoding='utf-8')
    out = tmp_path / 'fit.json'

    assert main(['fit', str(table), '--k-min', '1', '--k-max', '100', '--binning', 'raw',
                 '--out', str(out)]) == 0
    assert load_json(out)['gamma'] == pytest.approx(2.0, abs=0.02)


def test_restrict(tmp_path, triangle):
    graph = save_graph(triangle, tmp_path / 'triangle.json')
    charset = tmp_path / 'ab.txt'
    charset.write_text('A\nB\nZ\n', encoding='utf-8')
    out = tmp_path / 'restricted.json'

    assert main(['restrict', graph, '--charset', str(charset), '--out', str(out)]) == 0

    restricted = JsonGraphCodec().read(str(out))
    assert (restricted.n_nodes, restricted.n_edges) == (2, 1)
    summary = load_json(tmp_path / 'restricted.json.summary.json')
    assert summary['missing_characters'] == 'Z'
    assert summary['label'] == 'ab'


def test_gen_is_deterministic_across_threads(tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    args = ['gen', '--nodes', '300', '--target-edges', '900']

    assert main(['--seed', '5', '--threads', '1'] + args + ['--out', str(first)]) == 0
    assert main(['--seed', '5', '--threads', '3'] + args + ['--out', str(second)]) == 0

    assert first.read_bytes() == second.read_bytes()
    graph = JsonGraphCodec().read(str(first))
    assert abs(graph.n_edges - 900) <= 1
    assert graph.labels[0] == chr(0x4E00)


def test_gen_corpus_builds_back(tmp_path):
    corpus = tmp_path / 'synthetic.txt'

    assert main(['--seed', '3', 'gen', '--nodes', '80', '--target-edges', '200',
                 '--format', 'corpus', '--out', str(corpus)]) == 0
    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 0

    summary = load_json(tmp_path / 'g.json.summary.json')
    assert summary['simple']['edges'] in (199, 200, 201)


@pytest.mark.slow
def test_full_size_synthetic_corpus_builds_quickly(tmp_path):
    corpus = tmp_path / 'synthetic.txt'
    assert main(['--seed', '1981', 'gen', '--nodes', '5458', '--target-edges', '75000',
                 '--format', 'corpus', '--out', str(corpus)]) == 0

    started = time.perf_counter()
    assert main(['build', str(corpus), '--out', str(tmp_path / 'g.json')]) == 0

    assert time.perf_counter() - started < 60
    assert load_json(tmp_path / 'g.json.summary.json')['maximal']['nodes'] > 1000


def test_random_like(tmp_path, two_clusters):
    template = save_graph(two_clusters, tmp_path / 'two.json')
    out = tmp_path / 'random.json'

    assert main(['random', '--like', template, '--out', str(out)]) == 0

    graph = JsonGraphCodec().read(str(out))
    assert (graph.n_nodes, graph.n_edges) == (5, 4)


def test_random_infeasible(tmp_path):
    assert main(['random', '--nodes', '4', '--edges', '7', '--out', str(tmp_path / 'r.json')]) == 4
    assert main(['random', '--nodes', '4', '--out', str(tmp_path / 'r.json')]) == 4


def test_invade_outputs(tmp_path, small_host, triangle):
    observed = save_graph(triangle, tmp_path / 'observed.json')
    out = tmp_path / 'ensemble.json'

    code = main(['--seed', '9', 'invade', small_host, '--alpha', '1.3', '--target-size', '20',
                 '--runs', '4', '--degree-out', str(tmp_path / 'pooled.csv'),
                 '--runs-dir', str(tmp_path / 'runs'), '--compare', observed, '--out', str(out)])

    assert code == 0
    data = load_json(out)
    assert data['runs'] == 4
    assert data['target_size'] == 20
    assert len(data['records'][0]['invaded']) == 20
    assert data['observed']['clustering'] == 1.0
    assert len(list((tmp_path / 'runs').glob('run_*.json'))) == 4
    assert (tmp_path / 'pooled.csv').exists()


def test_invade_deterministic_across_threads(tmp_path, small_host):
    outputs = []
    for threads in ('1', '4'):
        out = tmp_path / f'ensemble_{threads}.json'
        assert main(['--seed', '11', '--threads', threads, 'invade', small_host, '--alpha', '1.0',
                     '--target-size', '15', '--runs', '6', '--out', str(out)]) == 0
        outputs.append(out.read_bytes())

    assert outputs[0] == outputs[1]


def test_invade_start_node_by_label(tmp_path, small_host):
    out = tmp_path / 'ensemble.json'

    assert main(['invade', small_host, '--alpha', '1.0', '--target-size', '5', '--runs', '2',
                 '--start-node', chr(0x4E00), '--out', str(out)]) == 0
    assert all(r['invaded'][0] == chr(0x4E00) for r in load_json(out)['records'])
    assert main(['invade', small_host, '--alpha', '1.0', '--target-size', '5',
                 '--start-node', 'nope', '--out', str(out)]) == 4


def test_calibrate_sweep(tmp_path, small_host):
    out = tmp_path / 'sweep.json'

    code = main(['calibrate', small_host, '--target-size', '20', '--runs', '4',
                 '--sweep-step', '0.5', '--out', str(out)])

    assert code == 0
    assert [e['alpha'] for e in load_json(out)['evaluations']] == [0.0, 0.5, 1.0, 1.5, 2.0]
    curve = (tmp_path / 'sweep.json.curve.csv').read_text(encoding='utf-8').splitlines()
    assert curve[0] == 'alpha,mean_k,std_k'
    assert len(curve) == 6


def test_calibrate_unreachable_target(tmp_path, small_host):
    out = tmp_path / 'calibration.json'

    assert main(['calibrate', small_host, '--target-size', '20', '--target-k', '50',
                 '--runs', '3', '--out', str(out)]) == 7


def test_calibrate_needs_target(tmp_path, small_host):
    out = tmp_path / 'calibration.json'

    assert main(['calibrate', small_host, '--target-k', '3', '--out', str(out)]) == 4


def test_calibrate_from_target_graph(tmp_path, small_host, mocker):
    fake = mocker.patch('app.commands.simulate.calibrate_alpha')
    fake.return_value.evaluations = []
    fake.return_value.to_dict.return_value = {"alpha_star": 1.3}
    target = save_graph(SimpleGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), tmp_path / 'target.json')

    assert main(['calibrate', small_host, '--target-graph', target,
                 '--out', str(tmp_path / 'c.json')]) == 0

    kwargs = fake.call_args.kwargs
    assert kwargs['target_size'] == 4
    assert kwargs['target_k'] == 1.5


def test_usage_error_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        main(['metrics'])

    assert exc_info.value.code == 2


def test_invalid_seed(tmp_path, triangle):
    graph = save_graph(triangle, tmp_path / 'triangle.json')

    assert main(['--seed', '-1', 'metrics', graph, '--out', str(tmp_path / 'm.json')]) == 4


def test_unexpected_error_exits_1(tmp_path, triangle, mocker):
    mocker.patch('app.commands.analyze.degree_distribution', side_effect=RuntimeError('boom'))
    graph = save_graph(triangle, tmp_path / 'triangle.json')

    assert main(['degree', graph, '--out', str(tmp_path / 'd.csv')]) == 1


def test_manifests_differ_only_in_timestamp(tmp_path, triangle):
    graph = save_graph(triangle, tmp_path / 'triangle.json')
    out = tmp_path / 'metrics.json'

    main(['metrics', graph, '--crand-samples', '2', '--out', str(out)])
    first = load_json(tmp_path / 'metrics.json.manifest.json')
    main(['metrics', graph, '--crand-samples', '2', '--out', str(out)])
    second = load_json(tmp_path / 'metrics.json.manifest.json')

    first.pop('created_at')
    second.pop('created_at')
    assert first == second
    assert first['flags']['crand_samples'] == 2


def test_threads_and_flags_reach_service(tmp_path, triangle, mocker, mock_pipeline_service):
    mock_pipeline_service.ensure_connected.return_value = triangle
    mock_pipeline_service.metrics.return_value = NetworkMetrics(3, 3, 2.0, 1.0, 1, 1.0)
    create = mocker.patch('app.cli.create_service', return_value=mock_pipeline_service)
    graph = save_graph(triangle, tmp_path / 'triangle.json')

    assert main(['--threads', '3', '--seed', '8', 'metrics', graph, '--sample-sources', '2',
                 '--exclude-low-degree', '--out', str(tmp_path / 'm.json')]) == 0

    create.assert_called_once_with(workers=3)
    kwargs = mock_pipeline_service.metrics.call_args.kwargs
    assert kwargs['seed'] == 8
    assert kwargs['sample_sources'] == 2
    assert kwargs['exclude_low_degree'] is True
