"""The ``.pasme`` file format.

Layout (all multi-byte lengths little-endian, integer magnitudes big-endian)::

    "PASM" | version u8 | flags u8
    | for K1, K2, K3, K4, K5, P, X: length u32 | magnitude (no leading 0x00; zero has length 0)
    | ciphertext length u64 | ciphertext
    | CRC-32 of plaintext u32      (only when flags bit 0 is set)

Nothing may follow the last field.
"""
from __future__ import annotations

import io
import os
import struct
from dataclasses import fields
from typing import BinaryIO

from .core import PublicBundle
from .errors import MalformedContainer
from .hybrid import HybridContainer

MAGIC = b"PASM"
VERSION = 1
FLAG_CHECKSUM = 0x01

_FIELDS = tuple(f.name for f in fields(PublicBundle))  # k1..k5, p, x
_LABELS = ("K1", "K2", "K3", "K4", "K5", "P", "X")


def encode_bignat(n: int) -> bytes:
    if n < 0:
        raise ValueError("container integers must be non-negative")
    magnitude = n.to_bytes((n.bit_length() + 7) // 8, "big")
    return struct.pack("<I", len(magnitude)) + magnitude


def encode_header(bundle: PublicBundle, payload_len: int, checksum: bool) -> bytes:
    """Everything up to and including the ciphertext length field."""
    parts = [MAGIC, bytes([VERSION, FLAG_CHECKSUM if checksum else 0])]
    parts += [encode_bignat(getattr(bundle, name)) for name in _FIELDS]
    parts.append(struct.pack("<Q", payload_len))
    return b"".join(parts)


def write_container(c: HybridContainer) -> bytes:
    out = encode_header(c.bundle, len(c.ciphertext), c.checksum is not None)
    out += c.ciphertext
    if c.checksum is not None:
        out += struct.pack("<I", c.checksum)
    return out


class _Cursor:
    """Bounded reads from a seekable binary stream; never reads past EOF."""

    def __init__(self, fp: BinaryIO):
        self.fp = fp
        here = fp.tell()
        self.end = fp.seek(0, os.SEEK_END)
        fp.seek(here)

    @property
    def remaining(self) -> int:
        return self.end - self.fp.tell()

    def take(self, n: int, what: str) -> bytes:
        if n > self.remaining:
            raise MalformedContainer(f"truncated {what}: need {n} bytes, {self.remaining} left")
        return self.fp.read(n)

    def bignat(self, what: str) -> int:
        (length,) = struct.unpack("<I", self.take(4, f"{what} length"))
        magnitude = self.take(length, what)
        if magnitude[:1] == b"\x00":
            raise MalformedContainer(f"{what} has a leading zero byte")
        return int.from_bytes(magnitude, "big")


def read_header(fp: BinaryIO) -> tuple[PublicBundle, bool, int]:
    """Parse up to the ciphertext; returns ``(bundle, has_checksum, ciphertext_len)``.

    Leaves ``fp`` positioned at the first ciphertext byte and checks that the
    declared lengths account for exactly the rest of the stream.
    """
    cur = _Cursor(fp)
    if cur.take(4, "magic") != MAGIC:
        raise MalformedContainer("not a PASME container (bad magic)")
    version, flags = cur.take(2, "version/flags")
    if version != VERSION:
        raise MalformedContainer(f"unsupported container version {version}")
    if flags & ~FLAG_CHECKSUM:
        raise MalformedContainer(f"unknown flag bits 0x{flags:02x}")
    values = [cur.bignat(label) for label in _LABELS]
    (ct_len,) = struct.unpack("<Q", cur.take(8, "ciphertext length"))
    has_checksum = bool(flags & FLAG_CHECKSUM)
    expected = ct_len + (4 if has_checksum else 0)
    if expected != cur.remaining:
        raise MalformedContainer(
            f"declared lengths need {expected} more bytes, stream has {cur.remaining}"
        )
    return PublicBundle(*values), has_checksum, ct_len


def read_checksum(fp: BinaryIO) -> int:
    data = fp.read(4)
    if len(data) != 4:
        raise MalformedContainer("truncated checksum")
    return struct.unpack("<I", data)[0]


def read_container(data: bytes) -> HybridContainer:
    fp = io.BytesIO(data)
    bundle, has_checksum, ct_len = read_header(fp)
    ciphertext = fp.read(ct_len)
    checksum = read_checksum(fp) if has_checksum else None
    return HybridContainer(bundle, ciphertext, checksum)


def inspect(data: bytes) -> str:
    """Human-readable summary of the public contents. The container holds no secrets."""
    fp = io.BytesIO(data)
    bundle, has_checksum, ct_len = read_header(fp)
    lines = [f"PASME container, version {VERSION}"]
    for label, name in zip(_LABELS, _FIELDS):
        value = getattr(bundle, name)
        shown = f" ({value})" if value.bit_length() <= 64 else ""
        lines.append(f"  {label:<2} {value.bit_length():>7} bits{shown}")
    lines.append(f"  payload {ct_len} bytes")
    lines.append(f"  checksum {'CRC-32 present' if has_checksum else 'absent'}")
    return "\n".join(lines)
