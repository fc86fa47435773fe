"""Append-based payload hiding: ``carrier || payload || len(payload) as u32 LE``.

The carrier bytes are never touched, so formats that ignore trailing data
(PNG and JPEG among them) still open normally.
"""
from __future__ import annotations

import os
import shutil
import struct
from typing import BinaryIO

from .errors import MalformedStego, PayloadTooLarge

TRAILER = struct.Struct("<I")
MAX_PAYLOAD = (1 << 32) - 1


def _trailer(n: int) -> bytes:
    if n > MAX_PAYLOAD:
        raise PayloadTooLarge(f"payload of {n} bytes does not fit a 32-bit length")
    return TRAILER.pack(n)


def hide(carrier: bytes, payload: bytes) -> bytes:
    return carrier + payload + _trailer(len(payload))


def reveal(stego: bytes) -> bytes:
    if len(stego) < TRAILER.size:
        raise MalformedStego(f"file of {len(stego)} bytes has no length trailer")
    (n,) = TRAILER.unpack_from(stego, len(stego) - TRAILER.size)
    if n + TRAILER.size > len(stego):
        raise MalformedStego(f"trailer claims {n} bytes but the file is {len(stego)} bytes")
    end = len(stego) - TRAILER.size
    return stego[end - n : end]


def hide_stream(carrier: BinaryIO, payload: BinaryIO, out: BinaryIO, payload_len: int) -> None:
    """Streaming :func:`hide`; ``payload_len`` must match what ``payload`` yields."""
    trailer = _trailer(payload_len)
    shutil.copyfileobj(carrier, out)
    copied = _copy_exact(payload, out, payload_len)
    if copied != payload_len:
        raise ValueError(f"payload stream gave {copied} bytes, expected {payload_len}")
    out.write(trailer)


def reveal_stream(stego: BinaryIO, out: BinaryIO) -> int:
    """Streaming :func:`reveal` over a seekable file. Returns the payload length."""
    size = stego.seek(0, os.SEEK_END)
    if size < TRAILER.size:
        raise MalformedStego(f"file of {size} bytes has no length trailer")
    stego.seek(size - TRAILER.size)
    (n,) = TRAILER.unpack(stego.read(TRAILER.size))
    if n + TRAILER.size > size:
        raise MalformedStego(f"trailer claims {n} bytes but the file is {size} bytes")
    stego.seek(size - TRAILER.size - n)
    _copy_exact(stego, out, n)
    return n


def _copy_exact(src: BinaryIO, dst: BinaryIO, n: int, bufsize: int = 1 << 20) -> int:
    copied = 0
    while copied < n:
        chunk = src.read(min(bufsize, n - copied))
        if not chunk:
            break
        dst.write(chunk)
        copied += len(chunk)
    return copied
