import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import transformers

from reviewbridge import FinetuneJob, Hyperparams, finetune, make_toy_base

transformers.logging.set_verbosity_error()

NOUNS = ["sample", "method", "figure", "claim", "result", "control",
         "dataset", "model", "analysis", "protocol"]
VERBS = ["looks", "seems", "appears", "remains", "proves", "stays"]
ADJS = ["sound", "weak", "unclear", "solid", "robust", "limited",
        "novel", "adequate"]


def combinatorial_sentence(rng: random.Random) -> str:
    return f"the {rng.choice(NOUNS)} {rng.choice(VERBS)} very {rng.choice(ADJS)} ."


def write_pairs(path: Path, pairs) -> Path:
    path.write_text("\n".join(json.dumps(p) for p in pairs) + "\n")
    return path


def toy_basic_pairs(n=20):
    return [{"paper_id": f"p{i}", "reviewer": "R1", "module": "basic",
             "source": f"Study {i} examines wetland microbial communities "
                       f"across seasons with monthly sampling at site {i}.",
             "target": f"The paper on study {i} is generally well written "
                       f"and its aims are clear."}
            for i in range(n)]


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    return tmp_path_factory.mktemp("artifacts")


@pytest.fixture(scope="session")
def byte_base(artifacts):
    return make_toy_base(artifacts / "base-bytes", vocab_mode="bytes", seed=3)


@pytest.fixture(scope="session")
def basic_model(artifacts, byte_base):
    train = write_pairs(artifacts / "basic.train.jsonl", toy_basic_pairs(20))
    job = FinetuneJob(
        module="basic",
        train_file=str(train),
        base_model=str(byte_base),
        output_dir=str(artifacts / "model-basic"),
        hyperparams=Hyperparams.toy(epochs=1),
    )
    return finetune(job)


@pytest.fixture(scope="session")
def copy_scorer(artifacts):
    """Scorer fine-tuned on a seeded copy task so that reproducing the
    encoder input is much more likely than any other text."""
    rng = random.Random(13)
    sentences = [combinatorial_sentence(rng) for _ in range(256)]
    corpus = artifacts / "copy-corpus.txt"
    corpus.write_text("\n".join(sentences) + "\n")
    base = make_toy_base(
        artifacts / "base-words", vocab_mode="words",
        corpus_texts=sentences, seed=7,
    )
    pairs = [{"paper_id": f"c{i}", "reviewer": "R1", "module": "whole",
              "source": s, "target": s} for i, s in enumerate(sentences)]
    train = write_pairs(artifacts / "copy.train.jsonl", pairs)
    job = FinetuneJob(
        module="whole",
        train_file=str(train),
        base_model=str(base),
        output_dir=str(artifacts / "model-copy"),
        hyperparams=Hyperparams.toy(epochs=30, batch_size=16,
                                    learning_rate=5e-3, seed=1),
    )
    return finetune(job)
