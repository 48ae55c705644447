"""Model artifact construction and loading.

An artifact is an opaque directory: tokenizer + seq2seq weights saved
with save_pretrained, plus bridge metadata. The base model for
fine-tuning is configurable: any long-input encoder-decoder checkpoint
path (or hub id, where reachable) works. make_toy_base builds a tiny
randomly-initialized one locally for offline smoke/desk use.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

import torch
from tokenizers import Tokenizer, decoders, models as tok_models, pre_tokenizers
from transformers import (
    AutoModelForSeq2SeqLM,
    AutoTokenizer,
    LEDConfig,
    LEDForConditionalGeneration,
    PreTrainedTokenizerFast,
)

from .errors import ModelUnavailable

SPECIALS = ["<s>", "</s>", "<pad>", "<unk>"]
METADATA_FILE = "bridge_metadata.json"


def _byte_tokenizer() -> PreTrainedTokenizerFast:
    alphabet = pre_tokenizers.ByteLevel.alphabet()
    vocab = {tok: i for i, tok in enumerate(SPECIALS + sorted(alphabet))}
    tokenizer = Tokenizer(tok_models.BPE(vocab=vocab, merges=[], unk_token="<unk>"))
    tokenizer.pre_tokenizer = pre_tokenizers.ByteLevel(add_prefix_space=False)
    tokenizer.decoder = decoders.ByteLevel()
    return _wrap(tokenizer)


def _word_tokenizer(corpus_texts: list[str], max_vocab: int = 4000) -> PreTrainedTokenizerFast:
    counts = Counter(word for text in corpus_texts for word in text.split())
    words = [w for w, _ in counts.most_common(max_vocab)]
    vocab = {tok: i for i, tok in enumerate(SPECIALS + words)}
    tokenizer = Tokenizer(tok_models.WordLevel(vocab=vocab, unk_token="<unk>"))
    tokenizer.pre_tokenizer = pre_tokenizers.WhitespaceSplit()
    return _wrap(tokenizer)


def _wrap(tokenizer: Tokenizer) -> PreTrainedTokenizerFast:
    return PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        bos_token="<s>", eos_token="</s>", pad_token="<pad>", unk_token="<unk>",
        model_max_length=16384,
    )


def make_toy_base(out_dir: str | Path, vocab_mode: str = "bytes",
                  corpus_texts: list[str] | None = None, d_model: int = 64,
                  layers: int = 1, attention_window: int = 32,
                  max_source_positions: int = 2048, seed: int = 0) -> Path:
    """Write a tiny randomly-initialized long-input encoder-decoder.

    vocab_mode "bytes" handles arbitrary text; "words" builds a
    whitespace vocabulary from corpus_texts (faster to fine-tune on
    small closed-vocabulary tasks).
    """
    out_dir = Path(out_dir)
    if vocab_mode == "bytes":
        tokenizer = _byte_tokenizer()
    elif vocab_mode == "words":
        if not corpus_texts:
            raise ValueError("vocab_mode 'words' needs corpus_texts")
        tokenizer = _word_tokenizer(corpus_texts)
    else:
        raise ValueError(f"unknown vocab_mode: {vocab_mode}")

    config = LEDConfig(
        vocab_size=len(tokenizer),
        d_model=d_model,
        encoder_layers=layers, decoder_layers=layers,
        encoder_attention_heads=2, decoder_attention_heads=2,
        encoder_ffn_dim=2 * d_model, decoder_ffn_dim=2 * d_model,
        attention_window=[attention_window] * layers,
        max_encoder_position_embeddings=max_source_positions,
        max_decoder_position_embeddings=512,
        pad_token_id=tokenizer.pad_token_id,
        bos_token_id=tokenizer.bos_token_id,
        eos_token_id=tokenizer.eos_token_id,
        decoder_start_token_id=tokenizer.eos_token_id,
    )
    torch.manual_seed(seed)
    model = LEDForConditionalGeneration(config)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    (out_dir / METADATA_FILE).write_text(json.dumps({
        "kind": "toy-base",
        "vocab_mode": vocab_mode,
        "randomly_initialized": True,
        "seed": seed,
    }, indent=2))
    return out_dir


def load_artifact(path: str | Path):
    """Load (model, tokenizer) from an artifact directory."""
    path = Path(path)
    if not path.exists():
        raise ModelUnavailable(f"model artifact not found: {path}")
    try:
        tokenizer = AutoTokenizer.from_pretrained(path)
        model = AutoModelForSeq2SeqLM.from_pretrained(path)
    except Exception as exc:
        raise ModelUnavailable(f"cannot load model from {path}: {exc}") from exc
    model.eval()
    return model, tokenizer


def read_metadata(path: str | Path) -> dict:
    meta = Path(path) / METADATA_FILE
    if meta.exists():
        return json.loads(meta.read_text())
    return {}
