import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from formprime import arith
from formprime.errors import DomainError, ResourceError


def euler_legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def test_prime_count_below_a_million():
    table = arith.sieve(10**6)
    assert len(table) == 78498 == sympy.primepi(10**6)
    assert 999983 in table and 999981 not in table


def test_sieve_matches_trial_division():
    table = arith.sieve(5000)
    assert table.primes.tolist() == [n for n in range(5000) if sympy.isprime(n)]
    assert table.upto(100).tolist() == list(sympy.primerange(2, 101))


def test_sieve_limits():
    with pytest.raises(DomainError):
        arith.sieve(1)
    with pytest.raises(ResourceError):
        arith.sieve(arith.SIEVE_BUDGET + 1)
    with pytest.raises(ResourceError):
        arith.sieve(100).upto(1000)


def test_shared_table_grows():
    t = arith.prime_table(300_000)
    assert t.limit >= 300_000
    assert arith.prime_table(1000) is t


@pytest.mark.parametrize("n", [1, 2, 97, 360, 65537, 999983 * 7, 2**31 - 1, 80604484, 65539**2])
def test_factorize(n):
    assert dict(arith.factorize(n)) == sympy.factorint(n)


def test_is_prime_large():
    for n in [65537, 65539, 2**31 - 1, 65539 * 65543]:
        assert arith.is_prime(n) == sympy.isprime(n)


def test_kronecker_is_legendre_at_odd_primes():
    for p in sympy.primerange(3, 200):
        for a in range(-60, 60):
            assert arith.kronecker(a, p) == euler_legendre(a, p)


def test_kronecker_conventions():
    assert arith.kronecker(5, 0) == 0 and arith.kronecker(1, 0) == 1 and arith.kronecker(-1, 0) == 1
    assert arith.kronecker(-3, -1) == -1 and arith.kronecker(3, -1) == 1
    assert [arith.kronecker(a, 2) for a in (1, 3, 5, 7, 2)] == [1, -1, -1, 1, 0]
    assert arith.kronecker(-7, 2) == 1 and arith.kronecker(-3, 2) == -1


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4), st.integers(1, 10**4))
def test_kronecker_multiplicative_in_n(a, m, n):
    assert arith.kronecker(a, m * n) == arith.kronecker(a, m) * arith.kronecker(a, n)


@given(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4), st.integers(1, 10**5).filter(lambda n: n % 2))
def test_kronecker_multiplicative_in_a(a, b, n):
    assert arith.kronecker(a * b, n) == arith.kronecker(a, n) * arith.kronecker(b, n)


@given(st.integers(-10**5, 10**5), st.integers(1, 10**5).filter(lambda n: n % 2))
def test_jacobi_against_sympy(a, n):
    assert arith.jacobi(a, n) == sympy.jacobi_symbol(a % n, n)


def test_p_star():
    assert [arith.p_star(p) for p in (3, 5, 7, 11, 13)] == [-3, 5, -7, -11, 13]
    for bad in (2, 9, 1):
        with pytest.raises(DomainError):
            arith.p_star(bad)


def _fundamental_brute(d):
    if d % 4 == 1:
        return all(d % (p * p) for p in range(2, math.isqrt(abs(d)) + 1))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and all(m % (p * p) for p in range(2, math.isqrt(abs(m)) + 1))
    return False


def test_is_fundamental_against_definition():
    for d in range(-3000, 0):
        assert arith.is_fundamental(d) == _fundamental_brute(d), d


def test_fundamental_decomposition_roundtrip():
    rng = random.Random(1)
    for _ in range(500):
        D = -rng.randrange(3, 10**7)
        if D % 4 not in (0, 1):
            continue
        d, f = arith.fundamental_decomposition(D)
        assert d * f * f == D and arith.is_fundamental(d)
    assert arith.fundamental_decomposition(-1056) == (-264, 2)
    assert arith.fundamental_decomposition(-4032) == (-7, 24)
    assert arith.fundamental_decomposition(-27) == (-3, 3)
    with pytest.raises(DomainError):
        arith.fundamental_decomposition(-5)


def test_squarefree_part():
    assert arith.squarefree_part(-1056) == -66
    assert arith.squarefree_part(72) == 2
    for n in np.random.default_rng(0).integers(1, 10**6, 200).tolist():
        m = arith.squarefree_part(n)
        assert n % m == 0 and math.isqrt(n // m) ** 2 == n // m
