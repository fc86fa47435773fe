import pytest
from hypothesis import given, strategies as st

from pasme.codec import DigitString, extrair, garbage_chain, inflar, rebase_T, sujar
from pasme.errors import MalformedCiphertext
from pasme.numtheory import next_prime

from conftest import oracle_next_prime


def eval_poly(coeffs, b, first_exp):
    """Direct power-sum evaluation, sum(coeffs[i] * b**(first_exp + i))."""
    return sum(c * b ** (first_exp + i) for i, c in enumerate(coeffs))


def oracle_chain(v, n):
    out, c = [], v
    for _ in range(n):
        c = oracle_next_prime(c)
        out.append(c)
    return out


class TestRebase:
    def test_examples(self):
        assert rebase_T([1, 0], 2) == 2
        assert rebase_T([], 7) == 0
        assert rebase_T([3, 1, 4], 10) == 314

    @given(st.integers(0, 255), st.integers(2, 10**6))
    def test_single_digit_identity(self, d, b):
        assert rebase_T([d], b) == d

    @given(st.lists(st.integers(0, 9), max_size=30), st.integers(2, 1000))
    def test_first_digit_on_highest_power(self, digits, b):
        assert rebase_T(digits, b) == eval_poly(digits[::-1], b, 0)

    def test_bad_base(self):
        with pytest.raises(ValueError):
            rebase_T([1], 1)


class TestInflar:
    def test_examples(self):
        assert inflar([], 100, 3) == 0
        # chain from 3 is 5, 7: (7+5)*100 + (2+7)*100**2
        assert inflar([7, 2], 100, 3) == 91200
        # chain from 1 starts at 2: (0+2)*10
        assert inflar([0], 10, 1) == 20

    @given(st.lists(st.integers(0, 255), max_size=12), st.integers(2, 10**6), st.integers(0, 10**4))
    def test_matches_direct_evaluation(self, digits, b, v):
        chain = oracle_chain(v, len(digits))
        coeffs = [a + c for a, c in zip(digits, chain)]
        assert inflar(digits, b, v) == eval_poly(coeffs, b, 1)

    @given(st.lists(st.integers(0, 255), min_size=1, max_size=12), st.integers(2, 10**6), st.integers(0, 10**6))
    def test_garbage_strictly_increases_value(self, digits, b, v):
        assert inflar(digits, b, v) > eval_poly(digits, b, 1)

    @given(st.integers(0, 2**80), st.integers(1, 20))
    def test_chain_strictly_increasing_primes(self, v, n):
        chain = garbage_chain(v, n)
        assert chain[0] > v
        assert all(a < b for a, b in zip(chain, chain[1:]))
        assert chain[0] == next_prime(v)


class TestSujar:
    def test_examples(self):
        assert sujar([3, 1, 4], 20, 2) == 2465
        assert sujar([], 20, 2) == 0
        assert sujar([3, 1], 23, 7) == 194

    @given(st.lists(st.integers(0, 255), max_size=40), st.integers(2, 2**70), st.integers(0, 2**64))
    def test_matches_direct_evaluation(self, digits, b, v):
        assert sujar(digits, b, v) == eval_poly([a + v for a in digits], b, 0)


class TestExtrair:
    def test_examples(self):
        assert extrair(2465, 20, 2, 9) == [3, 1, 4]
        assert extrair(0, 20, 2, 9) == []
        assert extrair(194, 23, 7, 9) == [3, 1]

    def test_returns_digitstring_in_source_base(self):
        out = extrair(2465, 20, 2, 9)
        assert isinstance(out, DigitString) and out.base == 10

    def test_digit_below_offset_rejected(self):
        # 1 mod 20 = 1 < v = 2
        with pytest.raises(MalformedCiphertext):
            extrair(1, 20, 2, 9)

    def test_digit_above_dmax_rejected(self):
        # 19 - 2 = 17 > 9
        with pytest.raises(MalformedCiphertext):
            extrair(19, 20, 2, 9)

    def test_offset_must_be_positive(self):
        with pytest.raises(ValueError):
            extrair(5, 20, 0, 9)

    @given(
        st.lists(st.integers(0, 255), max_size=64),
        st.integers(1, 2**64),
        st.integers(0, 1000),
    )
    def test_roundtrip_bytes(self, digits, v, gap):
        b = next_prime(v + 255 + gap + 1)
        out = extrair(sujar(digits, b, v), b, v, 255)
        assert list(out) == digits

    @given(st.integers(0, 64))
    def test_all_zero_strings_keep_their_length(self, n):
        digits = [0] * n
        assert list(extrair(sujar(digits, 23, 7), 23, 7, 9)) == digits


class TestDigitString:
    def test_bytes_roundtrip(self):
        s = DigitString.from_bytes(b"\x00\xffab")
        assert bytes(s) == b"\x00\xffab" and s.d_max == 255 and len(s) == 4

    def test_text(self):
        assert list(DigitString.from_text("A")) == [65]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            DigitString((10,), 10)

    def test_empty_is_valid(self):
        assert len(DigitString()) == 0
