"""Executable cryptanalysis of PASME.

* Known plaintext: ``K3`` and ``K5`` are public, so anyone who knows the
  message computes ``S`` and reads ``Q = X xor S`` straight off the bundle.
  ``P - K4 = W*Q`` then hands over ``W`` too, with no factoring involved.
* Dictionary: ``P mod W' == K4`` is an offline oracle for passphrase guesses.
* Encoding leak: ``sujar`` with public parameters is keyless, so all secrecy
  rests on the XOR with ``Q``.
"""
from __future__ import annotations

import json
import time
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass, field

from .codec import DigitString, extrair, sujar
from .core import PublicBundle, SecurityConfig, encrypt, validate_key
from .errors import AttackFailed, MalformedCiphertext
from .hybrid import HybridContainer, stream_xor
from .numtheory import RandomSource, is_probable_prime


@dataclass
class AttackReport:
    name: str
    trials: int
    successes: int
    seconds_per_trial: float
    recovered: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.successes <= self.trials:
            raise ValueError("successes must lie in [0, trials]")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def __str__(self) -> str:
        rate = 1 / self.seconds_per_trial if self.seconds_per_trial else float("inf")
        text = (
            f"{self.name}: {self.successes}/{self.trials} succeeded "
            f"({self.seconds_per_trial * 1e3:.3f} ms/trial, {rate:,.0f} trials/s)"
        )
        for k, v in self.recovered.items():
            text += f"\n  {k}: {v}"
        return text


def known_plaintext_recover_Q(bundle: PublicBundle, known_message: Sequence[int]) -> int:
    """Return the mask ``Q`` given the plaintext; raises AttackFailed on a wrong guess."""
    s = sujar(known_message, bundle.k3, bundle.k5)
    q = bundle.x ^ s
    residue = bundle.p - bundle.k4
    if q < 2 or residue <= 0 or residue % q:
        raise AttackFailed("candidate Q does not divide P - K4")
    if not is_probable_prime(q):
        raise AttackFailed("candidate Q is composite")
    return q


def recover_W(bundle: PublicBundle, q: int) -> int:
    """The passphrase-derived divisor, from a recovered ``Q``."""
    return (bundle.p - bundle.k4) // q


def break_hybrid(container: HybridContainer, known_prefix: bytes) -> bytes:
    """Decrypt a whole hybrid container from a known plaintext prefix.

    The prefix XOR the ciphertext gives candidate key-sheets of every length
    up to ``len(known_prefix)``; the right one passes the known-plaintext
    check, and the sheet then opens the full payload. No passphrase needed.
    """
    limit = min(len(known_prefix), len(container.ciphertext))
    for n in range(1, limit + 1):
        guess = stream_xor(container.ciphertext[:n], known_prefix[:n])
        try:
            known_plaintext_recover_Q(container.bundle, guess)
        except AttackFailed:
            continue
        return stream_xor(container.ciphertext, guess)
    raise AttackFailed(f"no key-sheet of length <= {limit} is consistent with the prefix")


def dictionary_attack(bundle: PublicBundle, candidates: Iterable[Sequence[int]]) -> AttackReport:
    """Try each candidate against the validation oracle.

    Matches are reported by position in ``candidates`` so the report itself
    never contains a passphrase.
    """
    matches = []
    trials = 0
    t0 = time.perf_counter()
    for i, cand in enumerate(candidates):
        trials += 1
        if cand and validate_key(bundle, cand):
            matches.append(i)
    elapsed = time.perf_counter() - t0
    return AttackReport(
        name="dictionary_attack",
        trials=trials,
        successes=len(matches),
        seconds_per_trial=elapsed / trials if trials else 0.0,
        recovered={"matching_indices": matches},
    )


def encoding_leak_report(
    messages: Sequence[Sequence[int]], k3: int, k5: int, d_max: int = 255
) -> AttackReport:
    """Decode every ``S = sujar(m, K3, K5)`` using only public values."""
    t0 = time.perf_counter()
    encodings = {}
    recovered = 0
    for m in messages:
        s = sujar(m, k3, k5)
        encodings.setdefault(tuple(m), set()).add(s)
        try:
            if list(extrair(s, k3, k5, d_max)) == list(m):
                recovered += 1
        except MalformedCiphertext:
            pass
    elapsed = time.perf_counter() - t0
    distinct_s = set().union(*encodings.values()) if encodings else set()
    return AttackReport(
        name="encoding_leak",
        trials=len(messages),
        successes=recovered,
        seconds_per_trial=elapsed / len(messages) if messages else 0.0,
        recovered={
            "distinct_messages": len(encodings),
            "distinct_encodings": len(distinct_s),
            "equal_messages_share_encoding": all(len(v) == 1 for v in encodings.values()),
        },
    )


def run_suite(
    trials: int = 20,
    cfg: SecurityConfig | None = None,
    rng: RandomSource | None = None,
    decoys: int = 1000,
) -> list[AttackReport]:
    """Self-contained demonstration on freshly generated encryptions."""
    cfg = cfg or SecurityConfig.scaled(64)
    rng = rng or RandomSource()
    kp_hits = 0
    w_consistent = 0
    bundles = []
    t0 = time.perf_counter()
    for _ in range(trials):
        message = rng.randbytes(1 + rng.randbelow(32))
        passphrase = rng.randbytes(1 + rng.randbelow(16))
        bundle = encrypt(message, passphrase, cfg, rng)
        bundles.append((bundle, message, passphrase))
        try:
            q = known_plaintext_recover_Q(bundle, message)
        except AttackFailed:
            continue
        kp_hits += 1
        w_consistent += bundle.p % recover_W(bundle, q) == bundle.k4
    elapsed = time.perf_counter() - t0
    reports = [
        AttackReport(
            name="known_plaintext",
            trials=trials,
            successes=kp_hits,
            seconds_per_trial=elapsed / trials if trials else 0.0,
            recovered={"recovered_W_validates": w_consistent},
        )
    ]
    if bundles:
        bundle, message, passphrase = bundles[0]
        words = [rng.randbytes(1 + rng.randbelow(16)) for _ in range(decoys)]
        words.insert(rng.randbelow(decoys + 1), passphrase)
        reports.append(dictionary_attack(bundle, words))
        samples = [m for _, m, _ in bundles]
        reports.append(encoding_leak_report(samples + samples[:1], bundle.k3, bundle.k5))
    return reports
