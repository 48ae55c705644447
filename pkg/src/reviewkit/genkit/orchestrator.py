"""Modular guided generation: prefix routing, backend calls, assembly.

A review is produced either as five separately generated modules (with
or without guidance prefixes) or as a single pass over the full text,
then assembled into plain text, Markdown, or JSON.
"""

from __future__ import annotations

import enum
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..datasets import Module
from ..errors import BackendError, BackendProtocolError
from ..sectioner import ManuscriptSegments
from .backends import Backend
from .params import GenerationParams
from .prefixes import GUIDED_MODULES, PrefixSet, choose_prefix


class GenerationMode(enum.Enum):
    MODULAR_GUIDED = "ModularGuided"
    MODULAR_NON_GUIDED = "ModularNonGuided"
    SEGMENTATION_LESS = "SegmentationLess"


class OutputFormat(enum.Enum):
    PLAIN_TEXT = "text"
    MARKDOWN = "markdown"
    JSON = "json"


MODULE_HEADINGS = {
    Module.BASIC: "Basic Reporting",
    Module.EF: "Experimental Design & Validity of Findings",
    Module.QUES: "Questions",
    Module.PROPOS: "Proposals",
    Module.ADDL: "Additional Comments",
}

# Emitted instead of aborting when a manuscript has no summary or no
# methods/results sections.
PLACEHOLDER_TEXT = "[no content available for this module]"


@dataclass
class ModuleOutput:
    module: Module
    prefix: str
    text: str


@dataclass
class GeneratedReview:
    mode: GenerationMode
    modules: list[ModuleOutput]
    params: GenerationParams
    backend_id: str
    assembled: str = field(default="")


def generate_module(backend: Backend, module: Module, prefix: str, source: str,
                    params: GenerationParams) -> str:
    """One backend call; normalizes prefix echo and rejects empty output."""
    text = backend.generate(module, prefix, source, params)
    if not isinstance(text, str) or not text.strip():
        raise BackendProtocolError(f"backend returned empty output for {module.value}")
    if prefix and not text.startswith(prefix):
        text = f"{prefix} {text.lstrip()}"
    return text


def generate_review(backend: Backend, segments: ManuscriptSegments,
                    prefixes: PrefixSet, params: GenerationParams,
                    mode: GenerationMode, jobs: int = 1) -> GeneratedReview:
    """Run one generation pass over a segmented manuscript.

    Modular modes make five calls in fixed module order: the summary
    subset feeds the basic-reporting module, the methods/results subset
    the experiments module, and the full text the remaining three.
    Guided mode draws one prefix per module with the params seed; the
    non-guided and segmentation-less modes use empty prefixes. Calls run
    concurrently only when the backend declared itself reentrant.
    """
    if mode is GenerationMode.SEGMENTATION_LESS:
        text = generate_module(backend, Module.WHOLE, "", segments.t_full, params)
        modules = [ModuleOutput(Module.WHOLE, "", text)]
    else:
        if not segments.t_full.strip():
            raise ValueError("cannot run modular generation on an empty manuscript")
        rng = random.Random(params.seed)
        chosen = {}
        for module in GUIDED_MODULES:  # fixed order keeps draws seed-stable
            if mode is GenerationMode.MODULAR_GUIDED:
                chosen[module] = choose_prefix(module, prefixes, rng)
            else:
                chosen[module] = ""
        sources = {
            Module.BASIC: segments.t_sum,
            Module.EF: segments.t_mr,
            Module.QUES: segments.t_full,
            Module.PROPOS: segments.t_full,
            Module.ADDL: segments.t_full,
        }

        def run(module: Module) -> ModuleOutput:
            source = sources[module]
            if module in (Module.BASIC, Module.EF) and not source.strip():
                return ModuleOutput(module, chosen[module], PLACEHOLDER_TEXT)
            try:
                text = generate_module(backend, module, chosen[module], source, params)
            except BackendError as exc:
                raise type(exc)(f"[{module.value}] {exc}") from exc
            return ModuleOutput(module, chosen[module], text)

        if backend.reentrant and jobs > 1:
            with ThreadPoolExecutor(max_workers=min(jobs, len(GUIDED_MODULES))) as pool:
                modules = list(pool.map(run, GUIDED_MODULES))
        else:
            modules = [run(m) for m in GUIDED_MODULES]

    review = GeneratedReview(
        mode=mode, modules=modules, params=params, backend_id=backend.backend_id,
    )
    review.assembled = assemble(review, OutputFormat.PLAIN_TEXT)
    return review


def assemble(review: GeneratedReview, fmt: OutputFormat) -> str:
    """Join module outputs into the final review text.

    Text and Markdown place the fixed module headings before each text;
    the segmentation-less result is a single untitled body. JSON carries
    the complete structure (round-trips through parse_generated_review).
    """
    if fmt is OutputFormat.JSON:
        return json.dumps(review_to_dict(review), indent=2)
    if review.mode is GenerationMode.SEGMENTATION_LESS:
        return review.modules[0].text
    parts = []
    for output in review.modules:
        heading = MODULE_HEADINGS[output.module]
        if fmt is OutputFormat.MARKDOWN:
            parts.append(f"## {heading}\n\n{output.text}")
        else:
            parts.append(f"{heading}\n{output.text}")
    return "\n\n".join(parts)


def review_to_dict(review: GeneratedReview) -> dict:
    return {
        "mode": review.mode.value,
        "modules": [
            {"module": m.module.value, "prefix": m.prefix, "text": m.text}
            for m in review.modules
        ],
        "assembled": review.assembled,
        "params": review.params.to_dict(),
        "backend_id": review.backend_id,
    }


def parse_generated_review(text: str) -> GeneratedReview:
    obj = json.loads(text)
    return GeneratedReview(
        mode=GenerationMode(obj["mode"]),
        modules=[
            ModuleOutput(Module(m["module"]), m["prefix"], m["text"])
            for m in obj["modules"]
        ],
        params=GenerationParams.from_dict(obj["params"]),
        backend_id=obj["backend_id"],
        assembled=obj["assembled"],
    )
