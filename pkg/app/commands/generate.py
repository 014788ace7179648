"""
`gen` and `random`: synthetic graphs as graph JSON or as a compound corpus.
"""

from app.adapters.json_graph import JsonGraphCodec
from app.commands import CommandContext, CommandResult, read_graph
from app.errors import InvalidParameterError
from app.services.corpus import format_corpus
from app.services.generators import (
    CJK_BLOCK_END,
    CJK_BLOCK_START,
    FitnessConfig,
    LINK_RULES,
    cjk_labels,
    fitness_network,
    gnm_random,
    graph_to_corpus,
)
from app.services.graphcore import SimpleGraph

FORMATS = ('json', 'corpus')


def register(subparsers) -> None:
    gen = subparsers.add_parser('gen', help='Fitness-model network.')
    gen.add_argument('--nodes', type=int, required=True)
    gen.add_argument('--rate', type=float, default=1.0, help='Exponential fitness rate')
    gen.add_argument('--rule', choices=LINK_RULES, default='threshold')
    threshold = gen.add_mutually_exclusive_group()
    threshold.add_argument('--threshold', type=float, help='Link when x_i + x_j >= threshold')
    threshold.add_argument('--target-edges', type=int, help='Tune the threshold to this edge count')
    gen.add_argument('--product-c', type=float, default=1.0, help='Product rule constant')
    gen.add_argument('--format', choices=FORMATS, default='json')
    gen.add_argument('--out', required=True)
    gen.set_defaults(handler=run_gen)

    random = subparsers.add_parser('random', help='Uniform G(n, m) random graph.')
    random.add_argument('--nodes', type=int)
    random.add_argument('--edges', type=int)
    random.add_argument('--like', help='Copy n and m from this graph JSON')
    random.add_argument('--format', choices=FORMATS, default='json')
    random.add_argument('--out', required=True)
    random.set_defaults(handler=run_random)


def _labeled(graph: SimpleGraph) -> SimpleGraph:
    """Attach CJK labels when the block is large enough."""
    if graph.n_nodes > CJK_BLOCK_END - CJK_BLOCK_START + 1:
        return graph
    return SimpleGraph.from_edges(graph.n_nodes, graph.edge_array(), labels=cjk_labels(graph.n_nodes))


def _write(graph: SimpleGraph, fmt: str, path: str, header: str) -> None:
    if fmt == 'json':
        JsonGraphCodec().save(_labeled(graph), path)
        return
    lines = [f"# {header}"] + format_corpus(graph_to_corpus(graph))
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write("\n".join(lines) + "\n")


def run_gen(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    cfg = FitnessConfig(
        n=args.nodes,
        rate=args.rate,
        link_rule=args.rule,
        threshold=args.threshold,
        target_edges=args.target_edges,
        product_c=args.product_c,
        seed=ctx.seed
    )
    graph = fitness_network(cfg)
    _write(graph, args.format, args.out, f"fitness model n={cfg.n} rule={cfg.link_rule} seed={cfg.seed}")
    return CommandResult(outputs=[args.out])


def run_random(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    inputs = []
    if args.like:
        template = read_graph(args.like)
        n, m = template.n_nodes, template.n_edges
        inputs.append(args.like)
    elif args.nodes is not None and args.edges is not None:
        n, m = args.nodes, args.edges
    else:
        raise InvalidParameterError("random needs --nodes and --edges, or --like")

    graph = gnm_random(n, m, ctx.seed)
    _write(graph, args.format, args.out, f"G(n, m) n={n} m={m} seed={ctx.seed}")
    return CommandResult(outputs=[args.out], inputs=inputs)
