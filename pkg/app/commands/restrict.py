"""
`restrict`: induce a graph on a character whitelist.
"""

from pathlib import Path

from app.adapters.json_graph import JsonGraphCodec
from app.commands import CommandContext, CommandResult, read_graph, read_lines, write_json
from app.services.corpus import load_charset


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        'restrict',
        help='Restrict a labeled graph to a whitelist, then keep its maximal component.'
    )
    parser.add_argument('graph', help='Labeled graph JSON')
    parser.add_argument('--charset', required=True, help='Whitelist, one character per line')
    parser.add_argument('--label', help='Whitelist label (default: file stem)')
    parser.add_argument('--no-maximal', action='store_true',
                        help='Keep the whole induced graph')
    parser.add_argument('--out', required=True, help='Restricted graph JSON')
    parser.add_argument('--summary', help='Summary JSON (default: <out>.summary.json)')
    parser.set_defaults(handler=run_restrict)


def run_restrict(ctx: CommandContext) -> CommandResult:
    args = ctx.args
    whitelist = load_charset(read_lines(args.charset), args.label or Path(args.charset).stem)
    result = ctx.service.restrict(read_graph(args.graph), whitelist, take_maximal=not args.no_maximal)

    JsonGraphCodec().save(result.graph, args.out)
    summary_path = args.summary or f"{args.out}.summary.json"
    write_json(summary_path, {**result.summary, "missing_characters": ''.join(result.missing)})

    return CommandResult(outputs=[args.out, summary_path], inputs=[args.graph, args.charset])
