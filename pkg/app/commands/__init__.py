"""
Subcommand handlers.

Every module exposes register(subparsers); handlers take a CommandContext
and return the files they read and wrote so the CLI can write a manifest.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

from app.adapters.json_graph import JsonGraphCodec
from app.errors import InputError
from app.services.graphcore import SimpleGraph
from app.services.pipeline_service import NetworkPipelineService


@dataclass
class CommandContext:
    args: Any
    seed: int
    service: NetworkPipelineService


@dataclass
class CommandResult:
    outputs: List[str] = field(default_factory=list)
    inputs: List[str] = field(default_factory=list)


def write_json(path: str, data: Dict) -> None:
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(json.dumps(data, indent=2, ensure_ascii=False))
        handle.write("\n")


def read_graph(path: str) -> SimpleGraph:
    return JsonGraphCodec().read(path)


def read_lines(path: str) -> List[str]:
    """UTF-8 text lines (a leading BOM is dropped); LF and CRLF both accepted."""
    try:
        with open(path, 'r', encoding='utf-8-sig') as handle:
            return handle.readlines()
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not valid UTF-8 ({str(e)})")
    except OSError as e:
        raise InputError(f"{path}: {str(e)}")
