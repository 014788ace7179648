"""
`build`: corpus -> maximal cluster graph.
"""

from app.adapters.json_graph import JsonGraphCodec
from app.adapters.tsv_edges import TsvEdgeCodec
from app.commands import CommandContext, CommandResult, read_lines, write_json
from app.config import Config


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        'build',
        help='Build the maximal-cluster character network from a compound corpus.'
    )
    parser.add_argument('corpus', help='UTF-8 compound list, one word per line, or a .tsv edge list')
    parser.add_argument('--policy', choices=('strict', 'skip'), default=Config.PARSE_POLICY,
                        help='Malformed line handling')
    parser.add_argument('--out', required=True, help='Maximal cluster graph JSON')
    parser.add_argument('--summary', help='Summary JSON (default: <out>.summary.json)')
    parser.add_argument('--full-out', help='Also write the whole simplified network')
    parser.add_argument('--tsv', help='Also write the compound edge list TSV')
    parser.set_defaults(handler=run_build)


def run_build(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    if args.corpus.endswith('.tsv'):
        result = ctx.service.build_from_compounds(TsvEdgeCodec().read(args.corpus))
    else:
        result = ctx.service.build_network(read_lines(args.corpus), args.policy)

    codec = JsonGraphCodec()
    codec.save(result.maximal, args.out)
    outputs = [args.out]

    summary_path = args.summary or f"{args.out}.summary.json"
    write_json(summary_path, result.summary)
    outputs.append(summary_path)

    if args.full_out:
        codec.save(result.network, args.full_out)
        outputs.append(args.full_out)
    if args.tsv:
        TsvEdgeCodec().save(result.compounds, args.tsv)
        outputs.append(args.tsv)

    return CommandResult(outputs=outputs, inputs=[args.corpus])
