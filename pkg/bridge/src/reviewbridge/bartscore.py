"""Log-probability scoring of reference text given candidate text.

The score is the mean token log-likelihood of transforming the
candidate into the reference under a seq2seq model: always <= 0, with
values closer to zero indicating a better match.
"""

from __future__ import annotations

import torch

from .errors import InputError


@torch.no_grad()
def bartscore(candidate: str, reference: str, model, tokenizer,
              max_len: int = 1024) -> float:
    if not candidate or not candidate.strip():
        raise InputError("candidate text is empty")
    if not reference or not reference.strip():
        raise InputError("reference text is empty")
    encoded = tokenizer(candidate, return_tensors="pt", truncation=True,
                        max_length=max_len, add_special_tokens=False)
    label_ids = tokenizer(reference, add_special_tokens=False,
                          truncation=True, max_length=max_len)["input_ids"]
    labels = torch.tensor([label_ids + [tokenizer.eos_token_id]])
    kwargs = {"input_ids": encoded["input_ids"],
              "attention_mask": encoded["attention_mask"],
              "labels": labels}
    if getattr(model.config, "model_type", "") == "led":
        global_attention = torch.zeros_like(encoded["input_ids"])
        global_attention[:, 0] = 1
        kwargs["global_attention_mask"] = global_attention
    loss = model(**kwargs).loss.item()
    return -loss
