"""Reading the fine-tuning pair files produced by the dataset builder."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DatasetMissing


@dataclass
class Pair:
    source: str
    target: str


def read_pairs(path: str | Path) -> list[Pair]:
    """Load {"source", "target"} JSON-Lines pairs; other keys ignored."""
    path = Path(path)
    if not path.exists():
        raise DatasetMissing(f"dataset file not found: {path}")
    pairs = []
    for lineno, line in enumerate(path.read_text("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        obj = json.loads(line)
        source = obj.get("source", "")
        target = obj.get("target", "")
        if not source or not target:
            raise DatasetMissing(f"{path}:{lineno}: pair with empty source/target")
        pairs.append(Pair(source=source, target=target))
    if not pairs:
        raise DatasetMissing(f"dataset file has no pairs: {path}")
    return pairs
