"""reviewbridge CLI: toy base construction, fine-tuning, serving, scoring."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path


def cmd_make_toy_base(args) -> int:
    from .model import make_toy_base
    corpus_texts = None
    if args.corpus:
        corpus_texts = []
        for line in Path(args.corpus).read_text("utf-8").splitlines():
            if not line.strip():
                continue
            if line.lstrip().startswith("{"):
                obj = json.loads(line)
                corpus_texts.extend(str(v) for v in obj.values()
                                    if isinstance(v, str))
            else:
                corpus_texts.append(line)
    path = make_toy_base(
        args.out, vocab_mode=args.vocab, corpus_texts=corpus_texts,
        d_model=args.d_model, layers=args.layers,
        attention_window=args.attention_window, seed=args.seed,
    )
    print(f"wrote toy base model to {path}")
    return 0


def cmd_finetune(args) -> int:
    from .finetune import FinetuneJob, Hyperparams, finetune
    overrides = {
        name: getattr(args, name)
        for name in ("epochs", "learning_rate", "batch_size",
                     "max_source_len", "max_target_len", "seed")
        if getattr(args, name) is not None
    }
    hp = Hyperparams.toy(**overrides) if args.toy else Hyperparams(**overrides)
    job = FinetuneJob(
        module=args.module,
        train_file=args.train,
        validation_file=args.validation,
        base_model=args.base,
        output_dir=args.out,
        hyperparams=hp,
    )
    path = finetune(job)
    print(f"wrote fine-tuned {args.module} model to {path}")
    return 0


def _parse_model_specs(specs: list[str]) -> dict[str, str]:
    models = {}
    for spec in specs:
        module, eq, path = spec.partition("=")
        if not eq:
            raise ValueError(f"--model expects module=path, got {spec!r}")
        models[module] = path
    return models


def cmd_serve(args) -> int:
    import transformers

    from .serve import Server
    transformers.logging.set_verbosity_error()
    server = Server(
        _parse_model_specs(args.model),
        backend_id=args.backend_id,
        max_source_len=args.max_source_len,
    )
    server.run()
    return 0


def cmd_bartscore(args) -> int:
    from .bartscore import bartscore
    from .model import load_artifact
    model, tokenizer = load_artifact(args.model)
    results = []
    with open(args.pairs, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            obj = json.loads(line)
            score = bartscore(obj["candidate"], obj["reference"],
                              model, tokenizer)
            results.append({"candidate": obj["candidate"],
                            "reference": obj["reference"], "score": score})
    for row in results:
        print(json.dumps(row))
    if args.out:
        Path(args.out).write_text(
            "\n".join(json.dumps(r) for r in results) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewbridge",
        description="neural generation backend speaking the reviewkit wire protocol",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-toy-base",
                       help="build a tiny randomly-initialized base model")
    p.add_argument("--out", required=True)
    p.add_argument("--vocab", choices=["bytes", "words"], default="bytes")
    p.add_argument("--corpus", help="text or JSONL file for the word vocabulary")
    p.add_argument("--d-model", dest="d_model", type=int, default=64)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--attention-window", dest="attention_window", type=int,
                   default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_make_toy_base)

    p = sub.add_parser("finetune", help="fine-tune one module's model")
    p.add_argument("--module", required=True)
    p.add_argument("--train", required=True)
    p.add_argument("--validation")
    p.add_argument("--base", required=True,
                   help="base model artifact path (or hub id where reachable)")
    p.add_argument("--out", required=True)
    p.add_argument("--toy", action="store_true",
                   help="start from the toy hyperparameter profile")
    p.add_argument("--epochs", type=int)
    p.add_argument("--learning-rate", dest="learning_rate", type=float)
    p.add_argument("--batch-size", dest="batch_size", type=int)
    p.add_argument("--max-source-len", dest="max_source_len", type=int)
    p.add_argument("--max-target-len", dest="max_target_len", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("serve", help="serve the stdio wire protocol")
    p.add_argument("--model", action="append", required=True,
                   metavar="MODULE=DIR",
                   help="module to artifact mapping (repeatable)")
    p.add_argument("--backend-id", dest="backend_id", default="reviewbridge")
    p.add_argument("--max-source-len", dest="max_source_len", type=int)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bartscore", help="score candidate/reference pairs")
    p.add_argument("--model", required=True)
    p.add_argument("--pairs", required=True,
                   help="JSON-Lines {candidate, reference} file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bartscore)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
