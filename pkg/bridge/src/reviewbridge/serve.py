"""Wire-protocol server: newline-delimited JSON over stdio.

Emits the handshake as its first line, then answers each request line
with {"id", "text"} or {"id", "error"}. Bad requests produce error
responses; the process stays alive. One request is handled at a time
(the handshake advertises reentrant: false accordingly).
"""

from __future__ import annotations

import json
import sys

from .generation import generate_text
from .model import load_artifact

PROTOCOL_VERSION = 1


class Server:
    def __init__(self, model_paths: dict[str, str],
                 backend_id: str = "reviewbridge",
                 max_source_len: int | None = None):
        self.backend_id = backend_id
        self.max_source_len = max_source_len
        self.models = {}
        for module, path in model_paths.items():
            self.models[module] = load_artifact(path)
            print(f"loaded {module} from {path}", file=sys.stderr, flush=True)

    def handshake(self) -> dict:
        return {"protocol": PROTOCOL_VERSION, "backend_id": self.backend_id,
                "reentrant": False}

    def handle(self, request: dict) -> dict:
        request_id = request.get("id")
        module = request.get("module")
        if module not in self.models:
            return {"id": request_id, "error": f"unknown module: {module}"}
        source = request.get("source", "")
        prefix = request.get("prefix", "")
        if not isinstance(source, str) or not isinstance(prefix, str):
            return {"id": request_id, "error": "prefix and source must be strings"}
        model, tokenizer = self.models[module]
        try:
            text = generate_text(model, tokenizer, prefix, source,
                                 request.get("params"),
                                 max_source_len=self.max_source_len)
        except Exception as exc:  # keep serving after per-request failures
            return {"id": request_id, "error": f"generation failed: {exc}"}
        if not text.strip():
            return {"id": request_id, "error": "generation produced empty text"}
        return {"id": request_id, "text": text}

    def run(self, stdin=None, stdout=None) -> None:
        stdin = stdin or sys.stdin
        stdout = stdout or sys.stdout
        print(json.dumps(self.handshake()), file=stdout, flush=True)
        for line in stdin:
            if not line.strip():
                continue
            try:
                request = json.loads(line)
            except json.JSONDecodeError as exc:
                response = {"id": None, "error": f"invalid request JSON: {exc}"}
            else:
                response = self.handle(request)
            print(json.dumps(response), file=stdout, flush=True)
