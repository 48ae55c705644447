"""Guidance prefix sets for the five generation modules.

A prefix steers one module's content and register; each module draws
uniformly from its own set. The shipped defaults can be replaced from a
JSON file mapping module names to phrase lists.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

from ..datasets import Module

GUIDED_MODULES = (Module.BASIC, Module.EF, Module.QUES, Module.PROPOS, Module.ADDL)

_DEFAULTS = {
    Module.BASIC: (
        "In this paper, the authors proposed",
        "In this study, the author explored",
    ),
    Module.EF: (
        "The experimental design is",
        "The method of this paper",
    ),
    Module.QUES: (
        "I have several questions:",
        "Some questions are raised.",
    ),
    Module.PROPOS: (
        "I do have some important recommendations for improving the paper.",
        "I have some following suggestions:",
    ),
    Module.ADDL: (
        "There are still some comments for the authors to substantively revise the manuscript.",
        "Additionally, I have some other comments:",
    ),
}


@dataclass(frozen=True)
class PrefixSet:
    """Nonempty list of nonempty prefixes per guided module.

    The empty prefix is not a member of any set; it only appears through
    the segmentation-less and non-guided generation modes.
    """

    basic: tuple[str, ...]
    ef: tuple[str, ...]
    ques: tuple[str, ...]
    propos: tuple[str, ...]
    addl: tuple[str, ...]

    def __post_init__(self):
        for module in GUIDED_MODULES:
            entries = self.for_module(module)
            if not entries:
                raise ValueError(f"prefix set for {module.value} is empty")
            if any(not p or not p.strip() for p in entries):
                raise ValueError(f"empty prefix in set for {module.value}")

    def for_module(self, module: Module) -> tuple[str, ...]:
        return getattr(self, module.value)

    @classmethod
    def default(cls) -> "PrefixSet":
        return cls(**{m.value: _DEFAULTS[m] for m in GUIDED_MODULES})

    @classmethod
    def from_file(cls, path: str | Path) -> "PrefixSet":
        """Load from JSON: {"basic": [...], "ef": [...], ...}."""
        obj = json.loads(Path(path).read_text("utf-8"))
        fields = {}
        for module in GUIDED_MODULES:
            entries = obj.get(module.value)
            if entries is None:
                raise ValueError(f"prefix file missing module: {module.value}")
            fields[module.value] = tuple(entries)
        return cls(**fields)


def choose_prefix(module: Module, prefix_set: PrefixSet,
                  rng: random.Random) -> str:
    """Uniform draw from the module's prefix list, driven by rng."""
    if module not in GUIDED_MODULES:
        raise ValueError(f"no prefixes for module: {module.value}")
    return rng.choice(list(prefix_set.for_module(module)))
