"""
Run manifests written next to every CLI output.
"""

import hashlib
import json
from dataclasses import dataclass, field, asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Any, List


def file_digest(path: str) -> str:
    """
    SHA256 digest of a file's bytes.

    Args:
        path: File path

    Returns:
        Hex digest
    """
    sha = hashlib.sha256()
    with open(path, 'rb') as handle:
        for block in iter(lambda: handle.read(1 << 16), b''):
            sha.update(block)
    return sha.hexdigest()


@dataclass
class RunManifest:
    """
    Everything needed to re-run a subcommand bit-exactly.

    `created_at` is the only field allowed to differ between reruns.
    """

    subcommand: str
    flags: Dict[str, Any]
    seed: int
    input_digests: Dict[str, str]
    tool_version: str
    outputs: List[str] = field(default_factory=list)
    created_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat().replace("+00:00", "Z")
    )

    @classmethod
    def for_inputs(
        cls,
        subcommand: str,
        flags: Dict[str, Any],
        seed: int,
        input_paths: List[str],
        tool_version: str
    ) -> 'RunManifest':
        """Build a manifest, hashing every input file."""
        digests = {str(path): file_digest(path) for path in input_paths}
        return cls(
            subcommand=subcommand,
            flags=flags,
            seed=seed,
            input_digests=digests,
            tool_version=tool_version
        )

    def write(self, primary_output: str) -> Path:
        """
        Write the manifest as `<primary_output>.manifest.json`.

        Returns:
            Path of the written manifest
        """
        path = Path(f"{primary_output}.manifest.json")
        path.write_text(
            json.dumps(asdict(self), indent=2, ensure_ascii=False, default=str) + "\n",
            encoding='utf-8'
        )
        return path
