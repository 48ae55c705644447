"""Sampling parameters forwarded verbatim to generation backends."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GenerationParams:
    """Defaults follow the experimental setup this pipeline reproduces."""

    top_p: float = 0.92
    top_k: int = 50
    no_repeat_ngram_size: int = 3
    max_new_tokens: int = 256
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.top_p <= 1:
            raise ValueError("top_p must be in (0, 1]")
        if self.top_k < 1:
            raise ValueError("top_k must be positive")
        if self.no_repeat_ngram_size < 1:
            raise ValueError("no_repeat_ngram_size must be positive")
        if self.max_new_tokens < 1:
            raise ValueError("max_new_tokens must be positive")

    def to_dict(self) -> dict:
        return {
            "top_p": self.top_p,
            "top_k": self.top_k,
            "no_repeat_ngram_size": self.no_repeat_ngram_size,
            "max_new_tokens": self.max_new_tokens,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "GenerationParams":
        return cls(
            top_p=obj["top_p"],
            top_k=obj["top_k"],
            no_repeat_ngram_size=obj["no_repeat_ngram_size"],
            max_new_tokens=obj["max_new_tokens"],
            seed=obj["seed"],
        )
