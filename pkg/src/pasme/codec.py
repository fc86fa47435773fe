"""Digit-level encodings used by PASME.

Digit order: ``digits[0]`` is the first symbol of the stream. ``rebase_T``
puts it on the highest power, while ``inflar`` and ``sujar`` put it on the
lowest. Each function follows its own formula; only ``sujar`` needs an
inverse, and ``extrair`` undoes exactly that ordering.
"""
from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .errors import MalformedCiphertext
from .numtheory import next_prime


@dataclass(frozen=True)
class DigitString(Sequence):
    """An ordered run of base-``base`` digits (``0 <= d <= base - 1``)."""

    digits: tuple[int, ...] = ()
    base: int = 256

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        d_max = self.base - 1
        for d in self.digits:
            if not 0 <= d <= d_max:
                raise ValueError(f"digit {d} outside [0, {d_max}]")

    @classmethod
    def from_bytes(cls, data: bytes) -> DigitString:
        return cls(tuple(data), 256)

    @classmethod
    def from_text(cls, text: str) -> DigitString:
        return cls.from_bytes(text.encode("utf-8"))

    def __bytes__(self) -> bytes:
        if self.base > 256:
            raise ValueError("only base <= 256 digit strings map to bytes")
        return bytes(self.digits)

    @property
    def d_max(self) -> int:
        return self.base - 1

    def __getitem__(self, i):
        return self.digits[i]

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __eq__(self, other):
        if isinstance(other, DigitString):
            return self.digits == other.digits and self.base == other.base
        if isinstance(other, (list, tuple)):
            return list(self.digits) == list(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.digits, self.base))


def _check_base(b: int) -> None:
    if b < 2:
        raise ValueError(f"target base must be >= 2, got {b}")


def garbage_chain(v: int, length: int) -> list[int]:
    """``c0 = next_prime(v)``, ``c_i = next_prime(c_{i-1})``, ``length`` terms."""
    chain = []
    c = v
    for _ in range(length):
        c = next_prime(c)
        chain.append(c)
    return chain


def rebase_T(s: Sequence[int], b: int) -> int:
    """Re-read ``s`` in base ``b`` with ``s[0]`` on the highest power."""
    _check_base(b)
    n = 0
    for a in s:
        n = n * b + a
    return n


def inflar(s: Sequence[int], b: int, v: int) -> int:
    """Sum of ``(s[i] + c_i) * b**(i+1)`` with the prime chain ``c`` seeded at ``v``.

    The coefficients may exceed ``b``; the result is never decoded.
    """
    _check_base(b)
    if not s:
        return 0
    chain = garbage_chain(v, len(s))
    n = 0
    for a, c in zip(reversed(s), reversed(chain)):
        n = (n + a + c) * b
    return n


def sujar(s: Sequence[int], b: int, v: int) -> int:
    """Sum of ``(s[i] + v) * b**i``; decodable when ``b > v + d_max``."""
    _check_base(b)
    n = 0
    for a in reversed(s):
        n = n * b + a + v
    return n


def extrair(Y: int, b: int, v: int, d_max: int) -> DigitString:
    """Peel base-``b`` digits off ``Y`` lowest first, subtracting ``v`` from each.

    Raises MalformedCiphertext when a peeled value is not ``v + d`` for some
    ``0 <= d <= d_max``; that is what a wrong mask or corrupted data produces.
    """
    _check_base(b)
    if v < 1:
        raise ValueError(f"garbage offset must be >= 1, got {v}")
    if Y < 0:
        raise MalformedCiphertext("negative encoded value")
    digits = []
    while Y:
        Y, a = divmod(Y, b)
        a -= v
        if not 0 <= a <= d_max:
            raise MalformedCiphertext(
                f"digit {len(digits)} decodes outside [0, {d_max}]"
            )
        digits.append(a)
    return DigitString(tuple(digits), d_max + 1)
