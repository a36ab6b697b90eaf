"""Duncode text codec.

Compresses runs of same-alphabet characters into shared-prefix units while
staying self-synchronizing: every unit ends at the only byte with a clear
high bit, so unit boundaries are recoverable from any stream position.
"""

from ._duncode import (
    Row,
    Tables,
    extract,
    inspect,
    measure,
    report,
    resync,
    synth_profile,
)
from ._duncode import decode as _decode
from ._duncode import encode as _encode

__all__ = [
    "Row",
    "Tables",
    "decode",
    "default_tables",
    "encode",
    "extract",
    "inspect",
    "measure",
    "report",
    "resync",
    "synth_profile",
]

_default_tables = None


def default_tables():
    """The bundled table registry, built once per process."""
    global _default_tables
    if _default_tables is None:
        _default_tables = Tables.default()
    return _default_tables


def encode(text, tables=None):
    """Encode str -> Duncode bytes."""
    return _encode(text, tables or default_tables())


def decode(data, tables=None, strict=False):
    """Decode Duncode bytes -> str.

    Malformed units become U+FFFD; with strict=True they raise ValueError
    with the byte offset in the message.
    """
    return _decode(data, tables or default_tables(), strict)
