import math
import random

import numpy as np
import pytest

from formprime import arith
from formprime.errors import DomainError, ResourceError
from formprime.qform import (
    Form,
    ambiguous_census,
    enumerate_reduced,
    is_gl2_reduced,
    is_sl2_reduced,
    parse_form,
    principal_form,
    reduce_gl2,
    reduce_sl2,
    represented_prime_list,
    represented_primes,
    represented_values,
    represents,
)


def brute_reduced(D):
    out = []
    for a in range(1, math.isqrt(-D // 3) + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            Q = Form(a, b, c)
            if c >= a and Q.is_primitive and is_sl2_reduced(Q):
                out.append(Q)
    return sorted(out)


def test_reduce_example():
    # <12,10,3>: D = -44
    R = reduce_sl2(Form(12, 10, 3))
    assert R == Form(3, 2, 4)
    mats = _small_sl2()
    assert {F for F in brute_reduced(-44) if any(Form(12, 10, 3).transform(*M) == F for M in mats)} == {R}


def _small_sl2(bound=3):
    r = range(-bound, bound + 1)
    return [(p, q, u, v) for p in r for q in r for u in r for v in r if p * v - q * u == 1]


def test_reduce_against_matrix_search():
    # oracle: the reduced forms reachable from Q by small SL2 matrices
    mats = _small_sl2()
    rng = random.Random(7)
    for _ in range(40):
        D = -rng.choice([23, 47, 71, 84, 96, 420, 1056])
        R = rng.choice(enumerate_reduced(D))
        Q = R.transform(*rng.choice(mats))
        reachable = {F for F in brute_reduced(D) if any(Q.transform(*M) == F for M in mats)}
        assert reachable == {reduce_sl2(Q)} == {R}


def test_reduction_invariants():
    rng = random.Random(3)
    for _ in range(500):
        a, c = rng.randrange(1, 500), rng.randrange(1, 500)
        b = rng.randrange(-2 * math.isqrt(a * c), 2 * math.isqrt(a * c) + 1)
        Q = Form(a, b, c)
        if Q.discriminant >= 0:
            continue
        R = reduce_sl2(Q)
        assert R.discriminant == Q.discriminant
        assert is_sl2_reduced(R) and reduce_sl2(R) == R
        G = reduce_gl2(Q)
        assert is_gl2_reduced(G) and G == Form(R.a, abs(R.b), R.c)


def test_boundary_sign_rule():
    assert reduce_sl2(Form(2, -2, 3)) == Form(2, 2, 3)
    assert reduce_sl2(Form(3, -2, 3)) == Form(3, 2, 3)
    assert not is_sl2_reduced(Form(2, -2, 3))
    assert is_sl2_reduced(Form(5, -2, 53))


def test_reduce_rejects_indefinite():
    with pytest.raises(DomainError):
        reduce_sl2(Form(1, 3, 1))
    with pytest.raises(DomainError):
        reduce_sl2(Form(-1, 0, -1))


@pytest.mark.parametrize("D", [-3, -4, -7, -20, -23, -47, -96, -163, -420, -1056, -4032])
def test_enumerate_reduced_against_brute(D):
    assert enumerate_reduced(D) == brute_reduced(D)


def test_enumerate_class_numbers():
    assert [len(enumerate_reduced(D)) for D in (-3, -4, -23, -47, -71, -1056)] == [1, 1, 3, 5, 7, 16]
    assert Form(2, 2, 2) in enumerate_reduced(-12, primitive_only=False)
    assert Form(2, 2, 2) not in enumerate_reduced(-12)
    with pytest.raises(DomainError):
        enumerate_reduced(-5)


def test_ambiguous_census_matches_enumeration():
    for D in range(-3, -3000, -1):
        if D % 4 not in (0, 1):
            continue
        forms = enumerate_reduced(D)
        amb = sum(1 for Q in forms if Q.b == 0 or abs(Q.b) == Q.a or Q.a == Q.c)
        assert ambiguous_census(D) == (len(forms), amb)


def test_principal_form():
    assert principal_form(-1056) == Form(1, 0, 264)
    assert principal_form(-15) == Form(1, 1, 4)


def test_parse_form():
    assert parse_form("<7,6,39>") == Form(7, 6, 39)
    assert parse_form("⟨7, 6, 39⟩") == Form(7, 6, 39)
    assert parse_form("12,10,3") == Form(12, 10, 3)
    assert str(Form(5, -2, 53)) == "<5,-2,53>"
    with pytest.raises(DomainError):
        parse_form("7,6")
    with pytest.raises(TypeError):
        Form(1.0, 0, 1)


def _values_brute(Q, limit):
    out = set()
    r = math.isqrt(4 * Q.c * limit // -Q.discriminant) + 1
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            v = Q(x, y)
            if 0 < v <= limit:
                out.add(v)
    return out


@pytest.mark.parametrize("Q", [Form(1, 0, 1), Form(1, 1, 1), Form(2, 1, 3), Form(7, 6, 39), Form(5, 4, 20), Form(3, 2, 4)])
def test_represented_values_against_brute(Q):
    mask = represented_values(Q, 3000)
    assert set(np.flatnonzero(mask).tolist()) == _values_brute(Q, 3000)
    for n in range(1, 400):
        assert represents(Q, n) == bool(mask[n])


def test_sum_of_two_squares():
    ps = represented_prime_list(Form(1, 0, 1), 1000)
    assert ps == [p for p in arith.sieve(1000).primes.tolist() if p == 2 or p % 4 == 1]


def test_represented_primes_unimodular_invariance():
    rng = random.Random(11)
    for _ in range(15):
        R = rng.choice(enumerate_reduced(-rng.choice([84, 420, 1056, 2112, 4032])))
        a, b = rng.randrange(-4, 5), rng.randrange(-4, 5)
        if math.gcd(a, b) != 1:
            continue
        # complete (a, b) to a matrix of determinant -1 or 1
        g, x, y = _egcd(a, b)
        sign = rng.choice((1, -1))
        Q = R.transform(a, -y * sign, b, x * sign)
        assert abs(Q.discriminant) == abs(R.discriminant)
        if Q.a < 0:
            continue
        assert (represented_primes(Q, 20000) == represented_primes(R, 20000)).all()


def _egcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def test_represent_limits():
    with pytest.raises(ResourceError):
        represented_values(Form(1, 0, 1), 10**9)
    with pytest.raises(DomainError):
        represented_primes(Form(1, 0, 1), 1)
    assert represents(Form(1, 0, 1), 0) and not represents(Form(1, 0, 1), -5)
