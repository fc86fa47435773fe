import pytest

from pasme.core import SecretParams, SecurityConfig

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def oracle_sieve(limit):
    """Plain Eratosthenes, written independently of pasme.numtheory."""
    is_p = [True] * limit
    is_p[0:2] = [False, False]
    i = 2
    while i * i < limit:
        if is_p[i]:
            for j in range(i * i, limit, i):
                is_p[j] = False
        i += 1
    return is_p


def oracle_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def oracle_next_prime(x):
    n = x + 1
    while not oracle_is_prime(n):
        n += 1
    return n


@pytest.fixture(scope="session")
def sieve_table():
    return oracle_sieve(100_000)


@pytest.fixture
def canonical_secret():
    # r = (1, 2, 3, 4, 5, unused, 6)
    return SecretParams(1, 2, 3, 4, 5, 0, 6)


@pytest.fixture(scope="session")
def test_cfg():
    return SecurityConfig.scaled(64)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
