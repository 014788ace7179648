"""
Command-line interface.

Usage:
    python run.py [--seed N] [--threads N] [--quiet] <subcommand> ... --out PATH

Exit codes:
    0  success
    1  unexpected error
    2  usage error (argparse)
    3  input error (corpus, charset, graph file)
    4  invalid parameter
    5  graph precondition (empty, disconnected, unknown component)
    6  power-law fit without enough bins
    7  calibration target outside the alpha bracket
"""

import argparse
from typing import List, Optional

from app import __version__, create_service
from app.commands import CommandContext, analyze, build, generate, restrict, simulate
from app.config import Config
from app.errors import InvalidParameterError, NetworkAnalysisError
from app.utils.logger import get_logger, log_with_context, set_log_level
from app.utils.manifest import RunManifest
from app.utils.validators import require_int_at_least

logger = get_logger(__name__)

COMMAND_MODULES = (build, analyze, restrict, simulate, generate)

MAX_SEED = 2 ** 64 - 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='charnet',
        description='Two-character compound networks: construction, statistics and invasion model.'
    )
    parser.add_argument('--seed', type=int, default=Config.DEFAULT_SEED,
                        help=f'Master seed, 0..2^64-1 (default {Config.DEFAULT_SEED})')
    parser.add_argument('--threads', type=int, default=Config.THREADS,
                        help='Worker threads; results do not depend on it')
    parser.add_argument('--quiet', action='store_true', help='Only log warnings and errors')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')

    subparsers = parser.add_subparsers(dest='command', required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def _manifest_flags(args: argparse.Namespace) -> dict:
    return {key: value for key, value in sorted(vars(args).items()) if key != 'handler'}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and write its manifest.

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.quiet:
        set_log_level('WARNING')

    try:
        service = create_service(workers=args.threads)
    except ValueError as e:
        log_with_context(logger, "ERROR", f"Invalid configuration: {str(e)}", command=args.command)
        return InvalidParameterError.exit_code

    try:
        if not 0 <= args.seed <= MAX_SEED:
            raise InvalidParameterError(f"seed must be in 0..2^64-1, got {args.seed}")
        require_int_at_least('threads', args.threads, 1)

        result = args.handler(CommandContext(args=args, seed=args.seed, service=service))

        manifest = RunManifest.for_inputs(
            subcommand=args.command,
            flags=_manifest_flags(args),
            seed=args.seed,
            input_paths=result.inputs,
            tool_version=__version__
        )
        manifest.outputs = list(result.outputs)
        manifest.write(args.out)

        log_with_context(
            logger, "INFO",
            "Command finished",
            command=args.command,
            outputs=result.outputs
        )
        return 0

    except NetworkAnalysisError as e:
        log_with_context(
            logger, "ERROR",
            str(e),
            command=args.command,
            error=type(e).__name__,
            exit_code=e.exit_code
        )
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {str(e)}")
        return NetworkAnalysisError.exit_code
