"""Two-pass file mode: PASME protects a short random key-sheet, the payload is
XORed against that sheet repeated end to end.

Only the sheet goes through the (slow) prime search; the payload pass is a
plain cycling XOR and preserves length.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass

from .codec import DigitString
from .core import PublicBundle, SecurityConfig, decrypt, encrypt
from .errors import EmptyPassphrase, IntegrityError, MalformedCiphertext, ZeroLength
from .numtheory import RandomSource

# The sheet is encrypted as one PASME message, so its length drives the size
# of the prime search (about 65 bits per byte at default sizes).
DEFAULT_SHEET_LEN = 32


@dataclass(frozen=True)
class HybridContainer:
    bundle: PublicBundle
    ciphertext: bytes
    checksum: int | None = None  # CRC-32 of the plaintext


def generate_keysheet(length: int, rng: RandomSource) -> bytes:
    if length < 1:
        raise ZeroLength("key-sheet length must be >= 1")
    return rng.randbytes(length)


def stream_xor(data: bytes, sheet: bytes, offset: int = 0) -> bytes:
    """XOR ``data`` against ``sheet`` repeated; ``data[0]`` meets ``sheet[offset % len(sheet)]``.

    ``offset`` lets callers process a long stream in chunks.
    """
    if not sheet:
        raise ZeroLength("key-sheet must not be empty")
    n = len(data)
    if n == 0:
        return b""
    start = offset % len(sheet)
    reps = (start + n) // len(sheet) + 1
    keystream = (sheet * reps)[start : start + n]
    mixed = int.from_bytes(data, "big") ^ int.from_bytes(keystream, "big")
    return mixed.to_bytes(n, "big")


class StreamXor:
    """Incremental :func:`stream_xor` that remembers its sheet position."""

    def __init__(self, sheet: bytes):
        if not sheet:
            raise ZeroLength("key-sheet must not be empty")
        self.sheet = sheet
        self.position = 0

    def update(self, chunk: bytes) -> bytes:
        out = stream_xor(chunk, self.sheet, self.position)
        self.position = (self.position + len(chunk)) % len(self.sheet)
        return out


def seal_sheet(
    passphrase: bytes, cfg: SecurityConfig, sheet_len: int, rng: RandomSource
) -> tuple[bytes, PublicBundle]:
    """Draw a key-sheet and PASME-encrypt it. Returns ``(sheet, bundle)``."""
    if not passphrase:
        raise EmptyPassphrase("passphrase must contain at least one byte")
    if cfg.base != 256:
        raise ValueError("the hybrid mode works on bytes; cfg.base must be 256")
    sheet = generate_keysheet(sheet_len, rng)
    bundle = encrypt(DigitString.from_bytes(sheet), DigitString.from_bytes(passphrase), cfg, rng)
    return sheet, bundle


def open_sheet(bundle: PublicBundle, passphrase: bytes) -> bytes:
    if not passphrase:
        raise EmptyPassphrase("passphrase must contain at least one byte")
    sheet = bytes(decrypt(bundle, DigitString.from_bytes(passphrase), 255))
    if not sheet:
        raise MalformedCiphertext("bundle decodes to an empty key-sheet")
    return sheet


def hybrid_encrypt(
    payload: bytes,
    passphrase: bytes,
    cfg: SecurityConfig | None = None,
    sheet_len: int = DEFAULT_SHEET_LEN,
    rng: RandomSource | None = None,
    checksum: bool = True,
) -> HybridContainer:
    cfg = cfg or SecurityConfig()
    rng = rng or RandomSource()
    sheet, bundle = seal_sheet(passphrase, cfg, sheet_len, rng)
    return HybridContainer(
        bundle=bundle,
        ciphertext=stream_xor(payload, sheet),
        checksum=zlib.crc32(payload) if checksum else None,
    )


def hybrid_decrypt(container: HybridContainer, passphrase: bytes) -> bytes:
    """Recover the payload; KeyRejected is raised before any payload is produced."""
    sheet = open_sheet(container.bundle, passphrase)
    payload = stream_xor(container.ciphertext, sheet)
    if container.checksum is not None and zlib.crc32(payload) != container.checksum:
        raise IntegrityError("plaintext checksum mismatch")
    return payload
