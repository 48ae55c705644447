"""Generation backends: builtin extractive, subprocess, and HTTP.

Wire protocol (newline-delimited JSON over the child's stdio, or the
same bodies over HTTP POST /generate):

  handshake  {"protocol": 1, "backend_id": str, "reentrant": bool}
  request    {"id": str, "module": str, "prefix": str, "source": str,
              "params": {"top_p", "top_k", "no_repeat_ngram_size",
                         "max_new_tokens", "seed"}}
  response   {"id": str, "text": str} | {"id": str, "error": str}

One JSON object per line, UTF-8. Responses may arrive out of order and
are matched by id. Over HTTP the handshake is fetched from GET
/handshake (absent endpoint falls back to defaults).
"""

from __future__ import annotations

import itertools
import json
import shlex
import subprocess
import threading
import urllib.error
import urllib.request
from concurrent.futures import Future
from concurrent.futures import TimeoutError as FutureTimeout
from typing import Protocol

from ..datasets import Module
from ..errors import BackendProtocolError, BackendTimeout, BackendUnavailable
from .baseline import baseline_generate
from .params import GenerationParams

PROTOCOL_VERSION = 1


class Backend(Protocol):
    backend_id: str
    reentrant: bool

    def generate(self, module: Module, prefix: str, source: str,
                 params: GenerationParams) -> str: ...

    def close(self) -> None: ...


def make_request(request_id: str, module: Module, prefix: str, source: str,
                 params: GenerationParams) -> dict:
    return {
        "id": request_id,
        "module": module.value,
        "prefix": prefix,
        "source": source,
        "params": params.to_dict(),
    }


def _check_text(obj: dict, context: str) -> str:
    if "error" in obj:
        raise BackendProtocolError(f"{context}: backend reported: {obj['error']}")
    text = obj.get("text")
    if not isinstance(text, str):
        raise BackendProtocolError(f"{context}: response has no text field")
    return text


class BuiltinBackend:
    """In-process deterministic extractive backend."""

    backend_id = "builtin"
    reentrant = True

    def generate(self, module: Module, prefix: str, source: str,
                 params: GenerationParams) -> str:
        return baseline_generate(prefix, source, params)

    def close(self) -> None:
        pass


class ExecBackend:
    """Child-process backend speaking the stdio wire protocol."""

    def __init__(self, argv: list[str], timeout: float = 60.0):
        self._timeout = timeout
        self._lock = threading.Lock()       # guards _pending only
        self._write_lock = threading.Lock() # serializes stdin writes
        self._pending: dict[str, Future] = {}
        self._ids = itertools.count(1)
        self._handshake: Future = Future()
        try:
            self._proc = subprocess.Popen(
                argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                text=True, encoding="utf-8", bufsize=1,
            )
        except OSError as exc:
            raise BackendUnavailable(f"cannot start backend {argv[0]}: {exc}") from exc
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()
        try:
            handshake = self._handshake.result(timeout)
        except FutureTimeout:
            self.close()
            raise BackendTimeout("backend sent no handshake in time") from None
        if handshake.get("protocol") != PROTOCOL_VERSION:
            self.close()
            raise BackendProtocolError(f"unsupported protocol: {handshake.get('protocol')!r}")
        self.backend_id = str(handshake.get("backend_id", argv[0]))
        self.reentrant = bool(handshake.get("reentrant", False))

    def _read_loop(self) -> None:
        try:
            for line in self._proc.stdout:
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    self._fail_all(BackendProtocolError(f"backend wrote invalid JSON: {exc}"))
                    return
                if not self._handshake.done():
                    self._handshake.set_result(obj)
                    continue
                with self._lock:
                    future = self._pending.pop(str(obj.get("id")), None)
                if future is not None:
                    future.set_result(obj)
        except ValueError:
            pass  # stream closed while reading
        finally:
            self._fail_all(BackendUnavailable("backend closed its output stream"))

    def _fail_all(self, error: Exception) -> None:
        if not self._handshake.done():
            self._handshake.set_exception(error)
        with self._lock:
            pending, self._pending = self._pending, {}
        for future in pending.values():
            if not future.done():
                future.set_exception(error)

    def generate(self, module: Module, prefix: str, source: str,
                 params: GenerationParams) -> str:
        if self._proc.poll() is not None:
            raise BackendUnavailable("backend process has exited")
        request_id = f"req-{next(self._ids)}"
        future: Future = Future()
        with self._lock:
            self._pending[request_id] = future
        payload = json.dumps(make_request(request_id, module, prefix, source, params))
        try:
            with self._write_lock:
                self._proc.stdin.write(payload + "\n")
                self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise BackendUnavailable(f"cannot write to backend: {exc}") from exc
        try:
            response = future.result(self._timeout)
        except FutureTimeout:
            with self._lock:
                self._pending.pop(request_id, None)
            raise BackendTimeout(
                f"no response for {module.value} within {self._timeout}s") from None
        return _check_text(response, f"module {module.value}")

    def close(self) -> None:
        if getattr(self, "_proc", None) is None:
            return
        for stream in (self._proc.stdin,):
            try:
                stream.close()
            except OSError:
                pass
        try:
            self._proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._proc.kill()
            self._proc.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


class HttpBackend:
    """HTTP backend: POST {base}/generate with the wire-request body."""

    def __init__(self, base_url: str, timeout: float = 60.0):
        self._base = base_url.rstrip("/")
        self._timeout = timeout
        self._ids = itertools.count(1)
        self.backend_id = self._base
        self.reentrant = False
        try:
            with urllib.request.urlopen(f"{self._base}/handshake", timeout=timeout) as resp:
                handshake = json.loads(resp.read().decode("utf-8"))
            if handshake.get("protocol") == PROTOCOL_VERSION:
                self.backend_id = str(handshake.get("backend_id", self._base))
                self.reentrant = bool(handshake.get("reentrant", False))
        except (urllib.error.URLError, TimeoutError, json.JSONDecodeError, OSError):
            pass  # optional endpoint; defaults already set

    def generate(self, module: Module, prefix: str, source: str,
                 params: GenerationParams) -> str:
        request_id = f"req-{next(self._ids)}"
        body = json.dumps(make_request(request_id, module, prefix, source, params))
        request = urllib.request.Request(
            f"{self._base}/generate",
            data=body.encode("utf-8"),
            headers={"Content-Type": "application/json"},
        )
        try:
            with urllib.request.urlopen(request, timeout=self._timeout) as resp:
                payload = resp.read().decode("utf-8")
        except urllib.error.HTTPError as exc:
            raise BackendProtocolError(f"HTTP {exc.code} from backend") from exc
        except urllib.error.URLError as exc:
            if isinstance(exc.reason, TimeoutError):
                raise BackendTimeout(f"no response within {self._timeout}s") from exc
            raise BackendUnavailable(f"cannot reach backend: {exc.reason}") from exc
        except TimeoutError as exc:
            raise BackendTimeout(f"no response within {self._timeout}s") from exc
        try:
            obj = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise BackendProtocolError(f"invalid JSON from backend: {exc}") from exc
        if str(obj.get("id")) != request_id:
            raise BackendProtocolError(
                f"response id {obj.get('id')!r} does not match request {request_id}")
        return _check_text(obj, f"module {module.value}")

    def close(self) -> None:
        pass


def parse_backend_spec(spec: str, timeout: float = 60.0) -> Backend:
    """Build a backend from "builtin", "exec:CMD ...", or "http:URL"."""
    if spec == "builtin":
        return BuiltinBackend()
    if spec.startswith("exec:"):
        argv = shlex.split(spec[len("exec:"):])
        if not argv:
            raise ValueError("exec backend needs a command")
        return ExecBackend(argv, timeout=timeout)
    if spec.startswith("http:"):
        rest = spec[len("http:"):]
        url = spec if rest.startswith("//") else rest
        return HttpBackend(url, timeout=timeout)
    raise ValueError(f"unknown backend spec: {spec}")
