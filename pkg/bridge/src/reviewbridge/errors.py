"""Bridge error types."""


class BridgeError(Exception):
    """Base class for bridge failures."""


class DatasetMissing(BridgeError):
    """Training file absent or contains no usable pairs."""


class OutOfMemory(BridgeError):
    """Training exhausted memory; reduce max source/target lengths."""


class ModelUnavailable(BridgeError):
    """No scorer/generator model artifact could be loaded."""


class InputError(BridgeError):
    """A scoring input is unusable (e.g. empty candidate text)."""
