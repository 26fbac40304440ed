"""Exact elementary number theory: prime tables, factorization, symbols."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResourceError

# Largest sieve limit accepted; a boolean table of this size is ~250 MB.
SIEVE_BUDGET = 250_000_000


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    is_prime: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and bool(self.is_prime[n])

    def __len__(self):
        return len(self.primes)

    def upto(self, n: int) -> np.ndarray:
        """Primes <= n (n must not exceed the table limit)."""
        if n > self.limit:
            raise ResourceError(f"prime table only reaches {self.limit}, asked for {n}")
        return self.primes[: np.searchsorted(self.primes, n, side="right")]


def sieve(limit: int) -> PrimeTable:
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > SIEVE_BUDGET:
        raise ResourceError(f"sieve limit {limit} exceeds budget {SIEVE_BUDGET}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    flags.setflags(write=False)
    primes = np.flatnonzero(flags)
    primes.setflags(write=False)
    return PrimeTable(limit, flags, primes)


_small = sieve(1 << 16)
_shared = [_small]


def prime_table(limit: int) -> PrimeTable:
    """A shared table covering at least 0..limit (grown by doubling, never shrunk)."""
    if _shared[0].limit < limit:
        size = _shared[0].limit
        while size < limit:
            size *= 2
        _shared[0] = sieve(min(size, max(limit, SIEVE_BUDGET)))
    return _shared[0]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n <= _small.limit:
        return bool(_small.is_prime[n])
    for p in _small.primes:
        p = int(p)
        if p * p > n:
            return True
        if n % p == 0:
            return False
    return all(n % k for k in range(_small.limit + 1, math.isqrt(n) + 1, 2))


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as ascending (p, e) pairs, by trial division."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    out = []
    for p in _small.primes:
        p = int(p)
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        if n > _small.limit**2:
            # cofactor beyond the small table: continue with odd trial divisors
            k = _small.limit + 1 | 1
            while k * k <= n:
                if n % k == 0:
                    e = 0
                    while n % k == 0:
                        n //= k
                        e += 1
                    out.append((k, e))
                k += 2
            if n > 1:
                out.append((n, 1))
        else:
            out.append((n, 1))
    return out


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(abs(n))] if n else []


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel m with n = m * s^2."""
    if n == 0:
        raise DomainError("squarefree part of 0")
    m = -1 if n < 0 else 1
    for p, e in factorize(abs(n)):
        if e & 1:
            m *= p
    return m


def jacobi(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers.

    Conventions: (a/0) = 1 iff a = +-1; (a/-1) = -1 iff a < 0;
    (a/2) = 0 for even a, else +1 or -1 as a = +-1 or +-3 mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    t = 1
    if n < 0:
        n = -n
        if a < 0:
            t = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            t = -t
    if n == 1:
        return t
    return t * jacobi(a, n)


def p_star(p: int) -> int:
    """(-1)^((p-1)/2) p for an odd prime p."""
    if p % 2 == 0 or not is_prime(p):
        raise DomainError(f"p_star needs an odd prime, got {p}")
    return p if p % 4 == 1 else -p


def is_discriminant(D: int) -> bool:
    return D % 4 in (0, 1) and not _is_square(D)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_fundamental(d: int) -> bool:
    if d == 1 or d % 4 not in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree_part(d) == d
    m = d // 4
    return m % 4 in (2, 3) and squarefree_part(m) == m


def fundamental_decomposition(D: int) -> tuple[int, int]:
    """Split a negative discriminant as D = d f^2 with d fundamental."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"not a negative discriminant: {D}")
    m = squarefree_part(D)
    s = math.isqrt(D // m)
    if m % 4 == 1:
        return m, s
    return 4 * m, s // 2
