"""Arbitrary-precision integer primitives: primality, next prime, XOR, division, randomness.

Python ints are the BigNat type. Modular exponentiation goes through GMP
(``gmpy2.powmod``) because every encryption runs a prime search over numbers
of several thousand bits.
"""
from __future__ import annotations

import bisect
import math
import random
import secrets
from functools import lru_cache

from gmpy2 import mpz, powmod

DEFAULT_ROUNDS = 40

# Miller-Rabin with the first 13 prime bases is exact below this bound.
_DETERMINISTIC_BOUND = 3317044064679887385961981
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SIEVE_LIMIT = 1 << 16


def sieve(limit: int) -> list[int]:
    """All primes strictly below ``limit`` (Eratosthenes)."""
    if limit < 3:
        return []
    flags = bytearray([1]) * limit
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit - 1) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit, p)))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES = sieve(_SIEVE_LIMIT)
_TRIAL_PRIMES = _SMALL_PRIMES[:168]  # primes below 1000
_TRIAL_PRODUCT = math.prod(_TRIAL_PRIMES)
_TRIAL_SQUARE = 1000 * 1000


class RandomSource:
    """Uniform integer and byte generator.

    With ``seed=None`` draws come from the OS entropy pool; with a seed the
    sequence is reproducible, which is what the known-answer tests rely on.
    An instance is single-owner: do not share one across concurrent tasks.
    """

    def __init__(self, seed: int | None = None):
        self.seed = seed
        self._gen = secrets.SystemRandom() if seed is None else random.Random(seed)

    @property
    def deterministic(self) -> bool:
        return self.seed is not None

    def getrandbits(self, k: int) -> int:
        return self._gen.getrandbits(k) if k > 0 else 0

    def randbytes(self, n: int) -> bytes:
        return self._gen.randbytes(n)

    def randbelow(self, n: int) -> int:
        return self._gen.randrange(n)

    def __repr__(self) -> str:
        mode = "os-entropy" if self.seed is None else f"seeded({self.seed})"
        return f"RandomSource({mode})"


def random_integer(bits: int, rng: RandomSource) -> int:
    """Uniform integer in ``[2**(bits-1), 2**bits)``; the top bit is forced."""
    if bits < 2:
        raise ValueError(f"bits must be >= 2, got {bits}")
    return rng.getrandbits(bits - 1) | (1 << (bits - 1))


def _miller_rabin(n: int, bases) -> bool:
    # n odd, n > 3
    n = mpz(n)
    d = n - 1
    s = 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in bases:
        y = powmod(a, d, n)
        if y == 1 or y == n - 1:
            continue
        for _ in range(s - 1):
            y = y * y % n
            if y == n - 1:
                break
        else:
            return False
    return True


def _mr_bases(n: int, rounds: int):
    if n < _DETERMINISTIC_BOUND:
        return _DETERMINISTIC_BASES
    draw = secrets.SystemRandom()
    return (draw.randrange(2, n - 1) for _ in range(rounds))


def is_probable_prime(x: int, rounds: int = DEFAULT_ROUNDS) -> bool:
    """Trial division by primes below 1000, then Miller-Rabin.

    ``False`` is always correct. ``True`` is exact below 3.3e24 and otherwise
    wrong with probability at most ``4**-rounds`` (random bases).
    """
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    if x < 2:
        return False
    if math.gcd(x, _TRIAL_PRODUCT) != 1:
        return x <= _TRIAL_PRIMES[-1] and x in _TRIAL_PRIMES
    if x < _TRIAL_SQUARE:
        return True
    return _miller_rabin(x, _mr_bases(x, rounds))


@lru_cache(maxsize=8192)
def next_prime(x: int, rounds: int = DEFAULT_ROUNDS) -> int:
    """Smallest prime strictly greater than ``x``.

    Odd candidates from ``x + 1`` upward are sieved in windows by the primes
    below 2**16; survivors go through Miller-Rabin in increasing order, so
    the first one that passes is the answer.
    """
    if x < 2:
        return 2
    if x < _SMALL_PRIMES[-1]:
        return _SMALL_PRIMES[bisect.bisect_right(_SMALL_PRIMES, x)]
    if x.bit_length() <= 64:
        # gaps are short here; sieving a window costs more than it saves
        candidate = (x + 1) | 1
        while not is_probable_prime(candidate, rounds):
            candidate += 2
        return candidate

    start = (x + 1) | 1
    size = max(256, x.bit_length())
    odd_primes = _SMALL_PRIMES[1:]
    while True:
        # flags[i] stands for start + 2*i
        flags = bytearray([1]) * size
        for p in odd_primes:
            i = ((p - start % p) * ((p + 1) >> 1)) % p
            if i < size:
                flags[i::p] = bytes((size - 1 - i) // p + 1)
        i = flags.find(1)
        while i != -1:
            candidate = start + 2 * i
            if _miller_rabin(candidate, _mr_bases(candidate, rounds)):
                return candidate
            i = flags.find(1, i + 1)
        start += 2 * size


def xor_big(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("xor_big operands must be non-negative")
    return a ^ b


def divmod_big(a: int, d: int) -> tuple[int, int]:
    """``(q, r)`` with ``a == q*d + r`` and ``0 <= r < d``."""
    if d < 1:
        raise ZeroDivisionError(f"divisor must be >= 1, got {d}")
    if a < 0:
        raise ValueError("dividend must be non-negative")
    return divmod(a, d)
