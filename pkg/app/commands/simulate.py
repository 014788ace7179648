"""
`invade` and `calibrate`: the degree-biased invasion model on a host graph.
"""

import os
from typing import List, Optional

from app.adapters.json_graph import JsonGraphCodec
from app.adapters.tables import write_curve_csv, write_degree_csv
from app.commands import CommandContext, CommandResult, read_graph, write_json
from app.config import Config
from app.errors import InvalidParameterError
from app.services.graphcore import SimpleGraph
from app.services.invasion import calibrate_alpha, invade_ensemble, sweep_alpha
from app.services.metrics import average_degree
from app.utils.validators import require_finite


def register(subparsers) -> None:
    invade = subparsers.add_parser('invade', help='Invasion ensemble on a host graph.')
    invade.add_argument('host', help='Connected host graph JSON')
    invade.add_argument('--alpha', type=float, required=True, help='Degree-bias exponent')
    invade.add_argument('--target-size', type=int, required=True, help='Nodes to invade per run')
    invade.add_argument('--runs', type=int, default=Config.ENSEMBLE_RUNS)
    invade.add_argument('--start-node', help='Fixed first node (label or id)')
    invade.add_argument('--maximal', action='store_true', help='Use the host maximal component')
    invade.add_argument('--no-paths', action='store_true', help='Skip path statistics')
    invade.add_argument('--runs-dir', help='Write every induced subgraph into this directory')
    invade.add_argument('--degree-out', help='Pooled degree CSV of the invaded subgraphs')
    invade.add_argument('--compare', help='Observed graph JSON reported next to the ensemble')
    invade.add_argument('--out', required=True, help='Ensemble JSON')
    invade.set_defaults(handler=run_invade)

    calibrate = subparsers.add_parser('calibrate', help='Find alpha matching a target <k>.')
    calibrate.add_argument('host', help='Connected host graph JSON')
    target = calibrate.add_mutually_exclusive_group()
    target.add_argument('--target-k', type=float, help='Target mean degree')
    target.add_argument('--target-graph', help='Take target size and <k> from this graph JSON')
    calibrate.add_argument('--target-size', type=int, help='Nodes to invade per run')
    calibrate.add_argument('--alpha-min', type=float, default=Config.ALPHA_MIN)
    calibrate.add_argument('--alpha-max', type=float, default=Config.ALPHA_MAX)
    calibrate.add_argument('--tol', type=float, default=Config.CALIBRATION_TOL)
    calibrate.add_argument('--runs', type=int, default=Config.ENSEMBLE_RUNS)
    calibrate.add_argument('--start-node', help='Fixed first node (label or id)')
    calibrate.add_argument('--maximal', action='store_true', help='Use the host maximal component')
    calibrate.add_argument('--sweep-step', type=float,
                           help='Evaluate a fixed alpha grid with this step instead of bisecting')
    calibrate.add_argument('--curve-out', help='Evaluations CSV (default: <out>.curve.csv)')
    calibrate.add_argument('--out', required=True, help='Calibration JSON')
    calibrate.set_defaults(handler=run_calibrate)


def resolve_node(host: SimpleGraph, value: Optional[str]) -> Optional[int]:
    """Node id for a label or a decimal id."""
    if value is None:
        return None
    index = host.label_index()
    if value in index:
        return index[value]
    try:
        node = int(value)
    except ValueError:
        raise InvalidParameterError(f"unknown start node {value!r}")
    if not 0 <= node < host.n_nodes:
        raise InvalidParameterError(f"start node {node} outside 0..{host.n_nodes - 1}")
    return node


def run_invade(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    host = ctx.service.ensure_connected(read_graph(args.host), args.maximal)
    inputs = [args.host]

    ensemble = invade_ensemble(
        host,
        target_size=args.target_size,
        alpha=args.alpha,
        runs=args.runs,
        seed=ctx.seed,
        start_node=resolve_node(host, args.start_node),
        with_paths=not args.no_paths,
        workers=ctx.service.workers
    )

    data = ensemble.to_dict(host)
    if args.compare:
        observed = ctx.service.ensure_connected(read_graph(args.compare), take_maximal=False)
        data["observed"] = ctx.service.metrics(
            observed, seed=ctx.seed, crand_samples=0
        ).to_dict()
        inputs.append(args.compare)

    write_json(args.out, data)
    outputs = [args.out]

    if args.degree_out:
        write_degree_csv(ensemble.pooled_degree_distribution(), args.degree_out)
        outputs.append(args.degree_out)

    if args.runs_dir:
        os.makedirs(args.runs_dir, exist_ok=True)
        codec = JsonGraphCodec()
        for index, run in enumerate(ensemble.runs):
            path = os.path.join(args.runs_dir, f"run_{index:04d}.json")
            codec.save(run.induced, path)
            outputs.append(path)

    return CommandResult(outputs=outputs, inputs=inputs)


def _alpha_grid(lo: float, hi: float, step: float) -> List[float]:
    if require_finite('sweep_step', step) <= 0:
        raise InvalidParameterError(f"sweep_step must be > 0, got {step}")
    if not lo < hi:
        raise InvalidParameterError(f"alpha range must satisfy lo < hi, got [{lo}, {hi}]")
    count = int(round((hi - lo) / step))
    return [round(lo + i * step, 10) for i in range(count + 1)]


def run_calibrate(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    host = ctx.service.ensure_connected(read_graph(args.host), args.maximal)
    inputs = [args.host]

    target_size, target_k = args.target_size, args.target_k
    if args.target_graph:
        observed = read_graph(args.target_graph)
        inputs.append(args.target_graph)
        target_size = target_size or observed.n_nodes
        target_k = average_degree(observed)
    if target_size is None:
        raise InvalidParameterError("--target-size or --target-graph is required")

    start_node = resolve_node(host, args.start_node)
    curve_path = args.curve_out or f"{args.out}.curve.csv"

    if args.sweep_step is not None:
        evaluations = sweep_alpha(
            host,
            target_size=target_size,
            alphas=_alpha_grid(args.alpha_min, args.alpha_max, args.sweep_step),
            runs=args.runs,
            seed=ctx.seed,
            start_node=start_node,
            workers=ctx.service.workers
        )
        data = {
            "mode": "sweep",
            "target_size": target_size,
            "target_k": target_k,
            "runs": args.runs,
            "seed": ctx.seed,
            "evaluations": [
                {"alpha": e.alpha, "mean_k": e.mean_k, "std_k": e.std_k} for e in evaluations
            ],
        }
    else:
        if target_k is None:
            raise InvalidParameterError("--target-k or --target-graph is required")
        result = calibrate_alpha(
            host,
            target_size=target_size,
            target_k=target_k,
            alpha_range=(args.alpha_min, args.alpha_max),
            runs=args.runs,
            tol=args.tol,
            seed=ctx.seed,
            start_node=start_node,
            workers=ctx.service.workers
        )
        evaluations = result.evaluations
        data = {"mode": "bisect", "target_size": target_size, **result.to_dict()}

    write_json(args.out, data)
    write_curve_csv(evaluations, curve_path)
    return CommandResult(outputs=[args.out, curve_path], inputs=inputs)
