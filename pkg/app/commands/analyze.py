"""
`metrics`, `degree` and `fit`: statistics of a graph file.
"""

from app.adapters.tables import read_degree_csv, write_degree_csv
from app.commands import CommandContext, CommandResult, read_graph, write_json
from app.config import Config
from app.services.metrics import Binning, degree_distribution, fit_power_law


def register(subparsers) -> None:
    metrics = subparsers.add_parser('metrics', help='Size, path and clustering statistics.')
    metrics.add_argument('graph', help='Graph JSON')
    metrics.add_argument('--out', required=True, help='Metrics JSON')
    metrics.add_argument('--maximal', action='store_true',
                         help='Analyse the maximal component of a disconnected graph')
    metrics.add_argument('--crand-samples', type=int, default=0,
                         help='G(n,m) samples for C_rand (0 skips)')
    metrics.add_argument('--sample-sources', type=int,
                         help='Approximate paths from this many random BFS sources')
    metrics.add_argument('--exclude-low-degree', action='store_true',
                         help='Average clustering over degree >= 2 nodes only')
    metrics.set_defaults(handler=run_metrics)

    degree = subparsers.add_parser('degree', help='Degree distribution CSV.')
    degree.add_argument('graph', help='Graph JSON')
    degree.add_argument('--out', required=True, help='CSV k,count,fraction')
    degree.set_defaults(handler=run_degree)

    fit = subparsers.add_parser('fit', help='Power-law fit of a degree distribution.')
    fit.add_argument('input', help='Graph JSON or degree CSV (.csv)')
    fit.add_argument('--k-min', type=int, required=True)
    fit.add_argument('--k-max', type=int, required=True)
    fit.add_argument('--binning', choices=('raw', 'log'), default='log')
    fit.add_argument('--base', type=float, default=Config.FIT_LOG_BASE, help='Log-binning base')
    fit.add_argument('--out', required=True, help='Fit JSON')
    fit.set_defaults(handler=run_fit)


def run_metrics(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    graph = ctx.service.ensure_connected(read_graph(args.graph), args.maximal)
    result = ctx.service.metrics(
        graph,
        seed=ctx.seed,
        crand_samples=args.crand_samples,
        sample_sources=args.sample_sources,
        exclude_low_degree=args.exclude_low_degree
    )
    write_json(args.out, result.to_dict())
    return CommandResult(outputs=[args.out], inputs=[args.graph])


def run_degree(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    write_degree_csv(degree_distribution(read_graph(args.graph)), args.out)
    return CommandResult(outputs=[args.out], inputs=[args.graph])


def run_fit(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    if args.input.lower().endswith('.csv'):
        distribution = read_degree_csv(args.input)
    else:
        distribution = degree_distribution(read_graph(args.input))

    result = fit_power_law(distribution, args.k_min, args.k_max, Binning(args.binning, args.base))
    write_json(args.out, result.to_dict())
    return CommandResult(outputs=[args.out], inputs=[args.input])
