import math

import pytest
from hypothesis import given, settings, strategies as st

from pasme import core
from pasme.codec import sujar
from pasme.core import (
    PublicBundle,
    SecurityConfig,
    decrypt,
    derive_W,
    derive_keys,
    encrypt,
    generate_params,
    recover_Q,
    seal,
    validate_key,
)
from pasme.errors import EmptyPassphrase, KeyRejected, MalformedCiphertext
from pasme.numtheory import RandomSource, is_probable_prime

from conftest import oracle_next_prime

CANONICAL = PublicBundle(k1=2, k2=3, k3=23, k4=5, k5=7, p=29545, x=17)


def test_canonical_keys(canonical_secret):
    keys = derive_keys(canonical_secret, d_max=9)
    assert (keys.k1, keys.k2, keys.k3, keys.k4, keys.k5) == (2, 3, 23, 5, 7)
    assert keys.k3 == oracle_next_prime(7 + 9 + 3 + 1)


def test_canonical_encrypt(canonical_secret):
    assert seal([3, 1], [1], canonical_secret, d_max=9) == CANONICAL


def test_canonical_intermediates():
    assert derive_W([1], 2, 3, 23) == 140
    assert sujar([3, 1], 23, 7) == 194
    assert recover_Q(CANONICAL, [1]) == 211 == oracle_next_prime(194 + 6)


def test_canonical_decrypt():
    assert decrypt(CANONICAL, [1], 9) == [3, 1]


def test_canonical_wrong_key():
    assert validate_key(CANONICAL, [1])
    assert derive_W([2], 2, 3, 23) == 163
    assert 29545 % 163 == 42
    assert not validate_key(CANONICAL, [2])
    with pytest.raises(KeyRejected):
        decrypt(CANONICAL, [2], 9)


def test_empty_passphrase_rejected(test_cfg):
    with pytest.raises(EmptyPassphrase):
        derive_W([], 2, 3, 23)
    with pytest.raises(EmptyPassphrase):
        encrypt(b"hi", b"", test_cfg, RandomSource(1))
    with pytest.raises(EmptyPassphrase):
        validate_key(CANONICAL, [])


def test_message_digits_checked(test_cfg):
    with pytest.raises(ValueError):
        encrypt([256], b"k", test_cfg, RandomSource(1))


def test_empty_message(test_cfg):
    rng = RandomSource(3)
    bundle = encrypt(b"", b"key", test_cfg, rng)
    assert bundle.x == recover_Q(bundle, b"key")
    assert decrypt(bundle, b"key", 255) == []


def test_empty_message_canonical(canonical_secret):
    bundle = seal([], [1], canonical_secret, d_max=9)
    assert bundle.x == oracle_next_prime(6) == 7
    assert decrypt(bundle, [1], 9) == []


def test_generate_params_deterministic(test_cfg):
    a = generate_params(test_cfg, 255, RandomSource(77))
    b = generate_params(test_cfg, 255, RandomSource(77))
    assert a == b


@pytest.mark.parametrize("seed", range(20))
def test_generated_params_shape(seed, test_cfg):
    secret, keys = generate_params(test_cfg, 255, RandomSource(seed))
    for k in (keys.k1, keys.k2, keys.k3, keys.k4, keys.k5):
        assert is_probable_prime(k)
    assert keys.k3 > keys.k5 + 255 + 1
    assert secret.r1.bit_length() == test_cfg.bits_r1
    assert secret.r5.bit_length() == test_cfg.bits_r5


def test_secret_params_repr_redacted(canonical_secret):
    assert "1" not in repr(canonical_secret)


def test_config_validation():
    with pytest.raises(ValueError):
        SecurityConfig(bits_r3=1)
    with pytest.raises(ValueError):
        SecurityConfig(base=1)
    with pytest.raises(ValueError):
        SecurityConfig(rounds=0)
    assert SecurityConfig.scaled(256) == SecurityConfig()


def test_seal_refuses_k4_not_below_w():
    # K4 = next_prime(1000) = 1009 > W = 140
    with pytest.raises(ValueError):
        seal([3, 1], [1], core.SecretParams(1, 2, 3, 1000, 5, 0, 6), d_max=9)


def test_k4_is_redrawn_until_below_w(monkeypatch):
    # W lies in [299, 606] here and K4 in [257, 509], so the first K4 is often too big
    cfg = SecurityConfig(bits_r1=4, bits_r2=4, bits_r3=2, bits_r4=9, bits_r5=4, bits_r6=4, bits_r7=4, base=10)
    draws = []
    real = core.random_integer
    monkeypatch.setattr(core, "random_integer", lambda bits, rng: draws.append(bits) or real(bits, rng))
    redraws = 0
    for seed in range(40):
        draws.clear()
        bundle = encrypt([0], [0], cfg, RandomSource(seed))
        redraws += len(draws) - 7
        assert bundle.k4 < derive_W([0], bundle.k1, bundle.k2, bundle.k3)
        assert validate_key(bundle, [0])
        assert decrypt(bundle, [0], 9) == [0]
    assert redraws > 0


def test_impossible_config_fails_loudly():
    cfg = SecurityConfig(bits_r1=2, bits_r2=2, bits_r3=2, bits_r4=64, bits_r5=2, bits_r6=2, bits_r7=2, base=10)
    with pytest.raises(ValueError):
        encrypt([1], [1], cfg, RandomSource(0))


def test_corrupted_x_detected():
    bad = PublicBundle(2, 3, 23, 5, 7, 29545, 17 ^ 0b1000)
    with pytest.raises(MalformedCiphertext):
        decrypt(bad, [1], 9)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(0, 9), max_size=24),
    st.lists(st.integers(0, 9), min_size=1, max_size=8),
    st.integers(0, 2**32),
)
def test_roundtrip_base10(message, key, seed):
    cfg = SecurityConfig.scaled(32, base=10)
    bundle = encrypt(message, key, cfg, RandomSource(seed))
    assert validate_key(bundle, key)
    assert decrypt(bundle, key, 9) == message


@settings(max_examples=40, deadline=None)
@given(st.binary(max_size=64), st.binary(min_size=1, max_size=16), st.integers(0, 2**32))
def test_bundle_invariants(message, key, seed):
    cfg = SecurityConfig.scaled(64)
    bundle = encrypt(message, key, cfg, RandomSource(seed))
    s = sujar(message, bundle.k3, bundle.k5)
    q = recover_Q(bundle, key)
    assert is_probable_prime(q) and q > s
    assert bundle.p > bundle.k4
    assert bundle.k3 > bundle.k5 + 255
    if message:
        assert bundle.x != s
    # every sujar coefficient is a valid base-K3 digit
    assert max(message, default=0) + bundle.k5 < bundle.k3


def test_seeded_encrypt_reproducible(test_cfg):
    a = encrypt(b"same", b"pw", test_cfg, RandomSource(11))
    b = encrypt(b"same", b"pw", test_cfg, RandomSource(11))
    assert a == b


def test_expansion_lives_in_S_and_P_not_X():
    """S carries one base-K3 digit per byte; X stays near r7's size.

    Q is the first prime above S + r7, so Q and S agree on all high bits and
    X = S xor Q is only as long as r7 (plus carries).
    """
    cfg = SecurityConfig()
    rng = RandomSource(64)
    message = rng.randbytes(64)
    bundle = encrypt(message, b"passphrase", cfg, rng)
    s = sujar(message, bundle.k3, bundle.k5)
    top = message[-1] + bundle.k5
    assert abs(s.bit_length() - (63 * math.log2(bundle.k3) + math.log2(top))) <= 1
    q = recover_Q(bundle, b"passphrase")
    assert bundle.p.bit_length() >= q.bit_length() >= s.bit_length()
    assert bundle.x.bit_length() <= cfg.bits_r7 + 2
