"""Seeded sampled generation honoring the wire-protocol parameters."""

from __future__ import annotations

import torch

DEFAULT_PARAMS = {
    "top_p": 0.92,
    "top_k": 50,
    "no_repeat_ngram_size": 3,
    "max_new_tokens": 256,
    "seed": 0,
}


def fill_params(params: dict | None) -> dict:
    merged = dict(DEFAULT_PARAMS)
    merged.update(params or {})
    return merged


@torch.no_grad()
def generate_with_stats(model, tokenizer, prefix: str, source: str,
                        params: dict,
                        max_source_len: int | None = None) -> tuple[str, int]:
    """Sample a continuation of `prefix` conditioned on `source`.

    Returns (text, generated_token_count). The prefix is forced as the
    start of the decoder sequence, so the output echoes it. Sampling
    uses top-p/top-k with the request's n-gram penalty and seed;
    identical payloads and seeds produce identical text.
    """
    params = fill_params(params)
    limit = max_source_len or min(getattr(tokenizer, "model_max_length", 16384),
                                  16384)
    encoded = tokenizer(source, return_tensors="pt", truncation=True,
                        max_length=limit, add_special_tokens=False)
    kwargs = {"input_ids": encoded["input_ids"],
              "attention_mask": encoded["attention_mask"]}
    if getattr(model.config, "model_type", "") == "led":
        global_attention = torch.zeros_like(encoded["input_ids"])
        global_attention[:, 0] = 1
        kwargs["global_attention_mask"] = global_attention

    start = [model.config.decoder_start_token_id, tokenizer.bos_token_id]
    prefix_ids = tokenizer(prefix, add_special_tokens=False)["input_ids"] if prefix else []
    decoder_input_ids = torch.tensor([start + prefix_ids])

    max_new = int(params["max_new_tokens"])
    torch.manual_seed(int(params["seed"]))
    output = model.generate(
        **kwargs,
        decoder_input_ids=decoder_input_ids,
        do_sample=True,
        top_p=float(params["top_p"]),
        top_k=int(params["top_k"]),
        no_repeat_ngram_size=int(params["no_repeat_ngram_size"]),
        max_new_tokens=max_new,
        min_new_tokens=min(8, max_new),
        pad_token_id=tokenizer.pad_token_id,
    )
    generated = output[0][decoder_input_ids.shape[1]:]
    continuation = tokenizer.decode(generated, skip_special_tokens=True).strip()
    text = f"{prefix} {continuation}".rstrip() if prefix else continuation
    return text, generated.shape[0]


def generate_text(model, tokenizer, prefix: str, source: str, params: dict,
                  max_source_len: int | None = None) -> str:
    text, _ = generate_with_stats(model, tokenizer, prefix, source, params,
                                  max_source_len=max_source_len)
    return text
