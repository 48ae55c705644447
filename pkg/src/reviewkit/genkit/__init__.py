"""Guided modular review generation over pluggable backends."""

from .backends import (
    Backend,
    BuiltinBackend,
    ExecBackend,
    HttpBackend,
    parse_backend_spec,
)
from .baseline import baseline_generate, has_repeated_ngram
from .orchestrator import (
    MODULE_HEADINGS,
    PLACEHOLDER_TEXT,
    GeneratedReview,
    GenerationMode,
    ModuleOutput,
    OutputFormat,
    assemble,
    generate_module,
    generate_review,
    parse_generated_review,
    review_to_dict,
)
from .params import GenerationParams
from .prefixes import GUIDED_MODULES, PrefixSet, choose_prefix

__all__ = [
    "Backend",
    "BuiltinBackend",
    "ExecBackend",
    "HttpBackend",
    "parse_backend_spec",
    "baseline_generate",
    "has_repeated_ngram",
    "MODULE_HEADINGS",
    "PLACEHOLDER_TEXT",
    "GeneratedReview",
    "GenerationMode",
    "ModuleOutput",
    "OutputFormat",
    "assemble",
    "generate_module",
    "generate_review",
    "parse_generated_review",
    "review_to_dict",
    "GenerationParams",
    "GUIDED_MODULES",
    "PrefixSet",
    "choose_prefix",
]
