"""The PASME protocol: parameter generation, encryption, key validation, decryption.

Encryption of a digit string ``n`` under a passphrase ``key``::

    K_i = next_prime(r_i)                       i in {1, 2, 4, 5}
    K3  = next_prime(K5 + d_max + r3 + 1)
    W   = inflar(key, K3, K2) + K1
    S   = sujar(n, K3, K5)
    Q   = next_prime(S + r7)
    P   = W*Q + K4
    X   = S xor Q

Only ``K1..K5, P, X`` are published. Decryption recomputes ``W``, checks
``P mod W == K4``, recovers ``Q = (P - K4) / W`` and peels digits off
``X xor Q``.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, fields

from .codec import DigitString, extrair, inflar, sujar
from .errors import EmptyPassphrase, KeyRejected, MalformedCiphertext
from .numtheory import DEFAULT_ROUNDS, RandomSource, next_prime, random_integer

MAX_K4_REDRAWS = 1000


@dataclass(frozen=True)
class SecurityConfig:
    """Bit lengths of the seven random draws, digit base and prime-test rounds."""

    bits_r1: int = 256
    bits_r2: int = 256
    bits_r3: int = 64
    bits_r4: int = 256
    bits_r5: int = 64
    bits_r6: int = 256
    bits_r7: int = 256
    base: int = 256
    rounds: int = DEFAULT_ROUNDS

    def __post_init__(self):
        for f in fields(self):
            if f.name.startswith("bits_") and getattr(self, f.name) < 2:
                raise ValueError(f"{f.name} must be >= 2")
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")

    @classmethod
    def scaled(cls, bits: int, **overrides) -> SecurityConfig:
        """``bits`` for r1, r2, r4, r6, r7 and a quarter of it for r3 and r5.

        K3 exceeds K5, so r5 sets the digit width of the encoded message.
        """
        return cls(
            bits_r1=bits,
            bits_r2=bits,
            bits_r3=max(bits // 4, 2),
            bits_r4=bits,
            bits_r5=max(bits // 4, 2),
            bits_r6=bits,
            bits_r7=bits,
            **overrides,
        )

    @property
    def d_max(self) -> int:
        return self.base - 1


@dataclass(frozen=True)
class SecretParams:
    """The seven random draws. Ephemeral: never serialized or printed."""

    r1: int
    r2: int
    r3: int
    r4: int
    r5: int
    r6: int
    r7: int

    def __repr__(self) -> str:
        return "SecretParams(<redacted>)"


@dataclass(frozen=True)
class PublicKeys:
    k1: int
    k2: int
    k3: int
    k4: int
    k5: int


@dataclass(frozen=True)
class PublicBundle:
    """Everything published by one encryption."""

    k1: int
    k2: int
    k3: int
    k4: int
    k5: int
    p: int
    x: int

    @property
    def keys(self) -> PublicKeys:
        return PublicKeys(self.k1, self.k2, self.k3, self.k4, self.k5)


def derive_keys(secret: SecretParams, d_max: int, rounds: int = DEFAULT_ROUNDS) -> PublicKeys:
    k5 = next_prime(secret.r5, rounds)
    return PublicKeys(
        k1=next_prime(secret.r1, rounds),
        k2=next_prime(secret.r2, rounds),
        k3=next_prime(k5 + d_max + secret.r3 + 1, rounds),
        k4=next_prime(secret.r4, rounds),
        k5=k5,
    )


def generate_params(
    cfg: SecurityConfig, d_max: int, rng: RandomSource
) -> tuple[SecretParams, PublicKeys]:
    # draw order r1..r7 is part of the seeded-reproducibility contract
    secret = SecretParams(
        r1=random_integer(cfg.bits_r1, rng),
        r2=random_integer(cfg.bits_r2, rng),
        r3=random_integer(cfg.bits_r3, rng),
        r4=random_integer(cfg.bits_r4, rng),
        r5=random_integer(cfg.bits_r5, rng),
        r6=random_integer(cfg.bits_r6, rng),  # drawn and never used
        r7=random_integer(cfg.bits_r7, rng),
    )
    return secret, derive_keys(secret, d_max, cfg.rounds)


def derive_W(passphrase: Sequence[int], k1: int, k2: int, k3: int) -> int:
    if not passphrase:
        raise EmptyPassphrase("passphrase must contain at least one symbol")
    return inflar(passphrase, k3, k2) + k1


def _check_message(message: Sequence[int], d_max: int) -> None:
    for d in message:
        if not 0 <= d <= d_max:
            raise ValueError(f"message digit {d} outside [0, {d_max}]")


def seal(
    message: Sequence[int],
    passphrase: Sequence[int],
    secret: SecretParams,
    d_max: int,
    rounds: int = DEFAULT_ROUNDS,
) -> PublicBundle:
    """Encrypt with fixed random draws. Needs ``K4 < W`` or the bundle could not validate."""
    _check_message(message, d_max)
    keys = derive_keys(secret, d_max, rounds)
    w = derive_W(passphrase, keys.k1, keys.k2, keys.k3)
    if keys.k4 >= w:
        raise ValueError("K4 >= W: this bundle would never validate")
    return _seal(message, w, keys, secret.r7, rounds)


def _seal(message, w: int, keys: PublicKeys, r7: int, rounds: int) -> PublicBundle:
    s = sujar(message, keys.k3, keys.k5)
    q = next_prime(s + r7, rounds)
    return PublicBundle(
        k1=keys.k1,
        k2=keys.k2,
        k3=keys.k3,
        k4=keys.k4,
        k5=keys.k5,
        p=w * q + keys.k4,
        x=s ^ q,
    )


def encrypt(
    message: Sequence[int],
    passphrase: Sequence[int],
    cfg: SecurityConfig,
    rng: RandomSource,
) -> PublicBundle:
    """Draw fresh parameters and encrypt; r4 is redrawn until ``K4 < W``."""
    if not passphrase:
        raise EmptyPassphrase("passphrase must contain at least one symbol")
    _check_message(message, cfg.d_max)
    secret, keys = generate_params(cfg, cfg.d_max, rng)
    w = derive_W(passphrase, keys.k1, keys.k2, keys.k3)
    k4 = keys.k4
    for _ in range(MAX_K4_REDRAWS):
        if k4 < w:
            break
        k4 = next_prime(random_integer(cfg.bits_r4, rng), cfg.rounds)
    else:
        raise ValueError("K4 keeps exceeding W; lower bits_r4 or raise bits_r2/bits_r5")
    keys = PublicKeys(keys.k1, keys.k2, keys.k3, k4, keys.k5)
    return _seal(message, w, keys, secret.r7, cfg.rounds)


def validate_key(bundle: PublicBundle, passphrase: Sequence[int]) -> bool:
    w = derive_W(passphrase, bundle.k1, bundle.k2, bundle.k3)
    return bundle.p % w == bundle.k4


def recover_Q(bundle: PublicBundle, passphrase: Sequence[int]) -> int:
    """Validate the passphrase and return the mask ``Q = (P - K4) / W``."""
    w = derive_W(passphrase, bundle.k1, bundle.k2, bundle.k3)
    if bundle.p % w != bundle.k4:
        raise KeyRejected("passphrase does not open this bundle")
    q, rem = divmod(bundle.p - bundle.k4, w)
    if rem:
        raise MalformedCiphertext("P - K4 is not a multiple of W")
    return q


def decrypt(bundle: PublicBundle, passphrase: Sequence[int], d_max: int) -> DigitString:
    q = recover_Q(bundle, passphrase)
    return extrair(bundle.x ^ q, bundle.k3, bundle.k5, d_max)
