"""Neural generation backend for the reviewkit wire protocol."""

__version__ = "0.1.0"

from .bartscore import bartscore
from .data import read_pairs
from .errors import (
    BridgeError,
    DatasetMissing,
    InputError,
    ModelUnavailable,
    OutOfMemory,
)
from .finetune import FinetuneJob, Hyperparams, finetune
from .generation import generate_text
from .model import load_artifact, make_toy_base, read_metadata
from .serve import Server
