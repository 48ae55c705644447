"""Fine-tuning one generation module on (source, target) pair files."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import torch
from torch.optim import AdamW

from .data import Pair, read_pairs
from .errors import ModelUnavailable, OutOfMemory
from .model import METADATA_FILE, load_artifact


@dataclass
class Hyperparams:
    """Defaults size the run for a day-scale budget on one accelerator;
    use toy() for smoke runs on CPU."""

    epochs: int = 3
    learning_rate: float = 3e-5
    batch_size: int = 2
    max_source_len: int = 16384
    max_target_len: int = 1024
    seed: int = 0

    @classmethod
    def toy(cls, **overrides) -> "Hyperparams":
        values = dict(epochs=1, learning_rate=5e-3, batch_size=8,
                      max_source_len=512, max_target_len=128, seed=0)
        values.update(overrides)
        return cls(**values)


@dataclass
class FinetuneJob:
    module: str
    train_file: str
    base_model: str
    output_dir: str
    validation_file: str | None = None
    hyperparams: Hyperparams = field(default_factory=Hyperparams)


def _load_base(identifier: str):
    if Path(identifier).exists():
        return load_artifact(identifier)
    # not a local path: let transformers resolve it (hub id, cache, ...)
    try:
        from transformers import AutoModelForSeq2SeqLM, AutoTokenizer
        tokenizer = AutoTokenizer.from_pretrained(identifier)
        model = AutoModelForSeq2SeqLM.from_pretrained(identifier)
        return model, tokenizer
    except Exception as exc:
        raise ModelUnavailable(
            f"cannot load base model {identifier!r}: {exc}") from exc


def _encode(tokenizer, texts: list[str], max_len: int) -> tuple[list[list[int]], int]:
    """Token id lists truncated to max_len, plus how many got truncated."""
    encoded = tokenizer(texts, add_special_tokens=False)["input_ids"]
    truncated = sum(1 for ids in encoded if len(ids) > max_len)
    return [ids[:max_len] for ids in encoded], truncated


def _batchify(model, tokenizer, sources, targets, indices):
    pad = tokenizer.pad_token_id
    eos = tokenizer.eos_token_id
    src = [sources[i] for i in indices]
    tgt = [targets[i] + [eos] for i in indices]
    src_len = max(len(s) for s in src)
    tgt_len = max(len(t) for t in tgt)
    input_ids = torch.tensor([s + [pad] * (src_len - len(s)) for s in src])
    attention = (input_ids != pad).long()
    labels = torch.tensor([t + [-100] * (tgt_len - len(t)) for t in tgt])
    kwargs = {"input_ids": input_ids, "attention_mask": attention, "labels": labels}
    if getattr(model.config, "model_type", "") == "led":
        global_attention = torch.zeros_like(input_ids)
        global_attention[:, 0] = 1
        kwargs["global_attention_mask"] = global_attention
    return kwargs


def _epoch_loss(model, tokenizer, sources, targets, batch_size, optimizer=None):
    order = list(range(len(sources)))
    total, batches = 0.0, 0
    for start in range(0, len(order), batch_size):
        batch = _batchify(model, tokenizer, sources, targets,
                          order[start : start + batch_size])
        output = model(**batch)
        if optimizer is not None:
            output.loss.backward()
            optimizer.step()
            optimizer.zero_grad()
        total += output.loss.item()
        batches += 1
    return total / max(batches, 1)


def finetune(job: FinetuneJob) -> Path:
    """Train job.base_model on the pair file and write a model artifact.

    Sources/targets longer than the configured maxima are truncated and
    counted in the artifact metadata. Raises DatasetMissing for absent
    or empty pair files and OutOfMemory when training exhausts memory.
    """
    hp = job.hyperparams
    train_pairs = read_pairs(job.train_file)
    validation_pairs: list[Pair] = (
        read_pairs(job.validation_file) if job.validation_file else [])

    model, tokenizer = _load_base(job.base_model)
    sources, src_truncated = _encode(
        tokenizer, [p.source for p in train_pairs], hp.max_source_len)
    targets, tgt_truncated = _encode(
        tokenizer, [p.target for p in train_pairs], hp.max_target_len)
    if src_truncated or tgt_truncated:
        print(f"truncated {src_truncated} sources and {tgt_truncated} targets "
              f"to {hp.max_source_len}/{hp.max_target_len} tokens", flush=True)

    torch.manual_seed(hp.seed)
    rng = random.Random(hp.seed)
    optimizer = AdamW(model.parameters(), lr=hp.learning_rate)
    started = time.time()
    model.train()
    losses = []
    try:
        for _ in range(hp.epochs):
            order = list(range(len(sources)))
            rng.shuffle(order)
            shuffled_src = [sources[i] for i in order]
            shuffled_tgt = [targets[i] for i in order]
            losses.append(_epoch_loss(model, tokenizer, shuffled_src,
                                      shuffled_tgt, hp.batch_size, optimizer))
    except (MemoryError, torch.cuda.OutOfMemoryError) as exc:
        raise OutOfMemory(
            "training ran out of memory; reduce max_source_len/max_target_len "
            "or batch_size") from exc
    except RuntimeError as exc:
        if "out of memory" in str(exc).lower():
            raise OutOfMemory(
                "training ran out of memory; reduce max_source_len/"
                "max_target_len or batch_size") from exc
        raise

    validation_loss = None
    if validation_pairs:
        val_src, _ = _encode(tokenizer, [p.source for p in validation_pairs],
                             hp.max_source_len)
        val_tgt, _ = _encode(tokenizer, [p.target for p in validation_pairs],
                             hp.max_target_len)
        model.eval()
        with torch.no_grad():
            validation_loss = _epoch_loss(model, tokenizer, val_src, val_tgt,
                                          hp.batch_size)

    out_dir = Path(job.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    (out_dir / METADATA_FILE).write_text(json.dumps({
        "kind": "finetuned",
        "module": job.module,
        "base_model": job.base_model,
        "train_file": str(job.train_file),
        "train_pairs": len(train_pairs),
        "sources_truncated": src_truncated,
        "targets_truncated": tgt_truncated,
        "hyperparams": asdict(hp),
        "train_loss_per_epoch": losses,
        "validation_loss": validation_loss,
        "wall_seconds": round(time.time() - started, 2),
    }, indent=2))
    return out_dir
