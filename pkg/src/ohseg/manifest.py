"""Run manifests: every emitted report records its command, parameters,
input hashes, tool version, timestamp and seed so reruns are attributable
and byte-reproducible.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

TOOL_VERSION = "0.1.0"


def hash_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def hash_directory(path: str | Path, pattern: str = "**/*.json") -> str:
    """Order-independent content hash over the matching files."""
    root = Path(path)
    h = hashlib.sha256()
    for f in sorted(root.glob(pattern)):
        h.update(str(f.relative_to(root)).encode("utf-8"))
        h.update(hash_file(f).encode("ascii"))
    return h.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    input_hashes: dict
    stopword_hash: str | None = None
    seed: int | None = None
    version: str = TOOL_VERSION
    timestamp: str = field(default_factory=lambda: datetime.now(
        timezone.utc).isoformat(timespec="seconds"))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "input_hashes": self.input_hashes,
            "stopword_hash": self.stopword_hash,
            "seed": self.seed,
            "version": self.version,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)
