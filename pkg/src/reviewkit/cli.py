"""Command-line surface binding the pipeline stages together.

Subcommands: ingest, label, build, stats, generate, evaluate, split.
Every run resolves its configuration (defaults < config file < flags),
writes it next to the outputs, and writes each output atomically;
failures remove the run's partial outputs and report a JSON error on
standard error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .corpus import dump_record, load_corpus, load_record, parse_tei, ManuscriptDoc
from .datasets import (
    Module,
    RecordPair,
    build_finetune_corpus,
    corpus_stats,
    filter_records,
    render_stats,
    split,
    stats_to_dict,
)
from .errors import ReviewKitError, SchemaViolation
from .genkit import (
    GenerationMode,
    GenerationParams,
    OutputFormat,
    PrefixSet,
    assemble,
    generate_review,
    parse_backend_spec,
    review_to_dict,
)
from .labeler import LexiconPosTagger, label_review, _load_lines
from .metrics import evaluate_corpus, merge_reports, render_report, report_to_dict
from .sectioner import LexiconTitleClassifier, segment_manuscript

_MODES = {
    "guided": GenerationMode.MODULAR_GUIDED,
    "non-guided": GenerationMode.MODULAR_NON_GUIDED,
    "segless": GenerationMode.SEGMENTATION_LESS,
}
_SPLIT_NAMES = ("train", "validation", "test")


@dataclass
class RunConfig:
    """Resolved run configuration; defaults follow the reference setup."""

    output_dir: str = "out"
    seed: int = 42
    jobs: int = 1
    min_manuscript_words: int = 2000
    min_review_words: int = 100
    ratios: str = "8:1:1"
    backend: str = "builtin"
    backend_timeout: float = 60.0
    mode: str = "guided"
    format: str = "text"
    top_p: float = 0.92
    top_k: int = 50
    no_repeat_ngram_size: int = 3
    max_new_tokens: int = 256
    prefix_file: str = ""
    proposal_keywords: str = ""
    verb_lexicon: str = ""
    section_lexicon: str = ""
    inputs: str = ""

    def ratio_tuple(self) -> tuple[int, int, int]:
        parts = self.ratios.split(":")
        if len(parts) != 3:
            raise ValueError(f"ratios must look like 8:1:1, got {self.ratios!r}")
        return tuple(int(p) for p in parts)  # type: ignore[return-value]

    def generation_params(self) -> GenerationParams:
        return GenerationParams(
            top_p=self.top_p,
            top_k=self.top_k,
            no_repeat_ngram_size=self.no_repeat_ngram_size,
            max_new_tokens=self.max_new_tokens,
            seed=self.seed,
        )

    def to_text(self) -> str:
        lines = [f"{f.name} = {getattr(self, f.name)}"
                 for f in dataclasses.fields(self)]
        return "\n".join(lines) + "\n"


def _parse_config_file(path: str) -> dict:
    """Flat key = value text format; blank lines and # comments ignored."""
    fields = {f.name: f.type for f in dataclasses.fields(RunConfig)}
    casts = {"int": int, "float": float, "str": str}
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        if not eq or key not in fields:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = casts[fields[key]](value.strip())
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(_parse_config_file(args.config))
    for f in dataclasses.fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    return RunConfig(**values)


class OutputSet:
    """Tracks files written by one run so failures can clean them up."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.written: list[Path] = []

    def write_text(self, name: str, text: str) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / name
        tmp = path.with_name(path.name + f".tmp{os.getpid()}")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
        self.written.append(path)
        return path

    def write_json(self, name: str, obj) -> Path:
        return self.write_text(name, json.dumps(obj, indent=2) + "\n")

    def discard(self) -> None:
        for path in self.written:
            try:
                path.unlink()
            except OSError:
                pass


def _classifier(config: RunConfig) -> LexiconTitleClassifier:
    return LexiconTitleClassifier(config.section_lexicon or None)


def _tagger(config: RunConfig) -> LexiconPosTagger:
    return LexiconPosTagger(config.verb_lexicon or None)


def _keywords(config: RunConfig):
    if config.proposal_keywords:
        return _load_lines("proposal_keywords.txt", config.proposal_keywords)
    return None


def _read_corpus(path: str):
    with open(path, encoding="utf-8") as handle:
        return load_corpus(handle)


def _key_lists(dataset) -> dict:
    return {
        "train": [list(k) for k in dataset.train],
        "validation": [list(k) for k in dataset.validation],
        "test": [list(k) for k in dataset.test],
    }


# --- commands -----------------------------------------------------------------

def cmd_ingest(config: RunConfig, outputs: OutputSet, args) -> None:
    records = []
    seen = set()
    errors = 0
    for path in args.input:
        with open(path, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    record = load_record(line)
                except SchemaViolation as exc:
                    errors += 1
                    print(f"{path}:{lineno}: skipped: {exc}", file=sys.stderr)
                    continue
                if record.paper_id in seen:
                    errors += 1
                    print(f"{path}:{lineno}: skipped: duplicate paper_id "
                          f"{record.paper_id}", file=sys.stderr)
                    continue
                seen.add(record.paper_id)
                records.append(record)
    lines = [json.dumps(dump_record(r)) for r in records]
    outputs.write_text("corpus.jsonl", "\n".join(lines) + ("\n" if lines else ""))
    outputs.write_text("run_config.txt", config.to_text())
    print(f"ingested {len(records)} records, {errors} errors")


def cmd_label(config: RunConfig, outputs: OutputSet, args) -> None:
    corpus = _read_corpus(args.corpus)
    tagger = _tagger(config)
    keywords = _keywords(config)
    rows = []
    for paper in corpus:
        for rnd in paper.review_rounds:
            for i, review in enumerate(rnd.reviews):
                labeled = label_review(review, tagger, keywords)
                rows.append({
                    "paper_id": paper.paper_id,
                    "round": rnd.round_index,
                    "manuscript_version": rnd.manuscript_version,
                    "reviewer": review.reviewer_label or f"r{rnd.round_index}-{i + 1}",
                    "whole": labeled.whole,
                    "ef": labeled.ef,
                    "questions": labeled.questions,
                    "proposals": labeled.proposals,
                    "removed": [
                        {"sentence": s, "reason": reason.value}
                        for s, reason in labeled.removed
                    ],
                })
    outputs.write_text("labeled.jsonl",
                       "\n".join(json.dumps(r) for r in rows) + ("\n" if rows else ""))
    outputs.write_text("run_config.txt", config.to_text())
    print(f"labeled {len(rows)} reviews from {len(corpus)} papers")


def _build_datasets(config: RunConfig, corpus) -> tuple[list[RecordPair], dict]:
    records = filter_records(
        corpus,
        min_manuscript_words=config.min_manuscript_words,
        min_review_words=config.min_review_words,
    )
    datasets = build_finetune_corpus(
        records, _classifier(config), _tagger(config), _keywords(config))
    return records, datasets


def cmd_build(config: RunConfig, outputs: OutputSet, args) -> None:
    corpus = _read_corpus(args.corpus)
    records, datasets = _build_datasets(config, corpus)
    dataset_split = split(records, seed=config.seed, ratios=config.ratio_tuple())
    membership = {}
    for name in _SPLIT_NAMES:
        for key in getattr(dataset_split, name):
            membership[key] = name

    manifest: dict = {
        "seed": config.seed,
        "ratios": list(config.ratio_tuple()),
        "records": len(records),
        "splits": {name: len(getattr(dataset_split, name)) for name in _SPLIT_NAMES},
        "modules": {},
        "keys": _key_lists(dataset_split),
    }
    for module in Module:
        dataset = datasets[module]
        by_split = {name: [] for name in _SPLIT_NAMES}
        for pair in dataset.pairs:
            by_split[membership[(pair.paper_id, pair.reviewer)]].append(pair)
        for name in _SPLIT_NAMES:
            lines = [
                json.dumps({
                    "paper_id": p.paper_id,
                    "reviewer": p.reviewer,
                    "module": p.module.value,
                    "source": p.source,
                    "target": p.target,
                })
                for p in by_split[name]
            ]
            outputs.write_text(f"{module.value}.{name}.jsonl",
                               "\n".join(lines) + ("\n" if lines else ""))
        manifest["modules"][module.value] = {
            "pairs": len(dataset.pairs),
            "dropped": dataset.dropped,
            **{name: len(by_split[name]) for name in _SPLIT_NAMES},
        }
    outputs.write_json("manifest.json", manifest)
    outputs.write_text("run_config.txt", config.to_text())
    print(f"built {sum(d['pairs'] for d in manifest['modules'].values())} pairs "
          f"from {len(records)} records "
          f"(splits {manifest['splits']})")


def cmd_stats(config: RunConfig, outputs: OutputSet, args) -> None:
    stats = corpus_stats(_read_corpus(args.corpus))
    table = render_stats(stats)
    outputs.write_json("stats.json", stats_to_dict(stats))
    outputs.write_text("stats.txt", table + "\n")
    outputs.write_text("run_config.txt", config.to_text())
    print(table)


def _load_manuscript(path: str) -> ManuscriptDoc:
    text = Path(path).read_text("utf-8")
    if text.lstrip().startswith("<"):
        return parse_tei(text)
    obj = json.loads(text)
    if isinstance(obj, dict) and "manuscripts" in obj:
        record = load_record(text)
        doc = record.manuscript(1)
        if doc is None:
            raise SchemaViolation("record has no version-1 manuscript")
        return doc
    if isinstance(obj, dict) and "sections" in obj:
        return ManuscriptDoc(
            version=int(obj.get("version", 1)),
            sections=[(s["title"], s["body"]) for s in obj["sections"]],
        )
    raise SchemaViolation("manuscript file is neither TEI XML nor a known JSON shape")


def cmd_generate(config: RunConfig, outputs: OutputSet, args) -> None:
    doc = _load_manuscript(args.manuscript)
    segments = segment_manuscript(doc, _classifier(config))
    prefixes = (PrefixSet.from_file(config.prefix_file)
                if config.prefix_file else PrefixSet.default())
    mode = _MODES[config.mode]
    backend = parse_backend_spec(config.backend, timeout=config.backend_timeout)
    try:
        review = generate_review(
            backend, segments, prefixes, config.generation_params(), mode,
            jobs=config.jobs,
        )
    finally:
        backend.close()
    fmt = OutputFormat(config.format)
    rendered = assemble(review, fmt)
    extension = "md" if fmt is OutputFormat.MARKDOWN else "txt"
    outputs.write_json("review.json", review_to_dict(review))
    outputs.write_text(f"review.{extension}", rendered + "\n")
    outputs.write_text("run_config.txt", config.to_text())
    print(rendered)


def cmd_evaluate(config: RunConfig, outputs: OutputSet, args) -> None:
    reports = []
    for path in args.pairs:
        with open(path, encoding="utf-8") as handle:
            pairs = [
                (obj["candidate"], obj["reference"])
                for obj in (json.loads(line) for line in handle if line.strip())
            ]
        reports.append(evaluate_corpus(pairs, method=Path(path).stem))
    report = merge_reports(reports)
    table = render_report(report)
    outputs.write_json("report.json", report_to_dict(report))
    outputs.write_text("report.txt", table + "\n")
    outputs.write_text("run_config.txt", config.to_text())
    print(table)


def cmd_split(config: RunConfig, outputs: OutputSet, args) -> None:
    corpus = _read_corpus(args.corpus)
    records = filter_records(
        corpus,
        min_manuscript_words=config.min_manuscript_words,
        min_review_words=config.min_review_words,
    )
    dataset_split = split(records, seed=config.seed, ratios=config.ratio_tuple())
    outputs.write_json("split.json", {
        "seed": config.seed,
        "ratios": list(config.ratio_tuple()),
        "records": len(records),
        "counts": {name: len(getattr(dataset_split, name)) for name in _SPLIT_NAMES},
        "keys": _key_lists(dataset_split),
    })
    outputs.write_text("run_config.txt", config.to_text())
    print(f"split {len(records)} records: "
          + ", ".join(f"{name}={len(getattr(dataset_split, name))}"
                      for name in _SPLIT_NAMES))


# --- argument parsing -----------------------------------------------------------

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--output-dir", dest="output_dir", help="output directory")
    common.add_argument("--seed", type=int, help="random seed")
    common.add_argument("--jobs", type=int, help="worker parallelism cap")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewkit",
        description="peer-review corpus processing and guided review generation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = _common_flags()
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common],
                       help="validate record files into a corpus file")
    p.add_argument("input", nargs="+", help="JSON-Lines record files")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("label", parents=[common],
                       help="auto-label review comments")
    p.add_argument("corpus", help="ingested corpus file")
    p.add_argument("--proposal-keywords", dest="proposal_keywords",
                   help="keyword list file")
    p.add_argument("--verb-lexicon", dest="verb_lexicon", help="verb lexicon file")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("build", parents=[common],
                       help="assemble fine-tuning datasets and the split")
    p.add_argument("corpus", help="ingested corpus file")
    p.add_argument("--min-manuscript-words", dest="min_manuscript_words", type=int)
    p.add_argument("--min-review-words", dest="min_review_words", type=int)
    p.add_argument("--ratios", help="split ratios, e.g. 8:1:1")
    p.add_argument("--proposal-keywords", dest="proposal_keywords")
    p.add_argument("--verb-lexicon", dest="verb_lexicon")
    p.add_argument("--section-lexicon", dest="section_lexicon")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("stats", parents=[common], help="corpus statistics report")
    p.add_argument("corpus", help="ingested corpus file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("generate", parents=[common],
                       help="generate a review for one manuscript")
    p.add_argument("manuscript", help="TEI XML or JSON manuscript file")
    p.add_argument("--backend", help="builtin | exec:CMD | http:URL")
    p.add_argument("--backend-timeout", dest="backend_timeout", type=float)
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--format", choices=[f.value for f in OutputFormat])
    p.add_argument("--prefix-file", dest="prefix_file", help="JSON prefix sets")
    p.add_argument("--top-p", dest="top_p", type=float)
    p.add_argument("--top-k", dest="top_k", type=int)
    p.add_argument("--no-repeat-ngram-size", dest="no_repeat_ngram_size", type=int)
    p.add_argument("--max-new-tokens", dest="max_new_tokens", type=int)
    p.add_argument("--section-lexicon", dest="section_lexicon")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", parents=[common],
                       help="score candidate/reference pair files")
    p.add_argument("pairs", nargs="+",
                   help="JSON-Lines files of {candidate, reference} objects")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("split", parents=[common],
                       help="write a train/validation/test split manifest")
    p.add_argument("corpus", help="ingested corpus file")
    p.add_argument("--min-manuscript-words", dest="min_manuscript_words", type=int)
    p.add_argument("--min-review-words", dest="min_review_words", type=int)
    p.add_argument("--ratios")
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        named = []
        for attr in ("input", "pairs"):
            if getattr(args, attr, None):
                named.extend(getattr(args, attr))
        for attr in ("corpus", "manuscript"):
            if getattr(args, attr, None):
                named.append(getattr(args, attr))
        config.inputs = ",".join(named)
        outputs = OutputSet(Path(config.output_dir))
    except Exception as exc:  # config/usage problems
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    try:
        args.func(config, outputs, args)
        return 0
    except Exception as exc:
        outputs.discard()
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
