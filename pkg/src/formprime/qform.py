"""Positive definite binary quadratic forms <a, b, c> = ax^2 + bxy + cy^2."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import DomainError, ResourceError

# Largest value bound accepted by represented_primes.
REPRESENT_BUDGET = 200_000_000


@dataclass(frozen=True, order=True)
class Form:
    a: int
    b: int
    c: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not isinstance(v, (int, np.integer)):
                raise TypeError(f"form coefficients must be integers, got {v!r}")

    def __str__(self):
        return f"<{self.a},{self.b},{self.c}>"

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    def transform(self, p: int, q: int, r: int, s: int) -> Form:
        """Substitute x -> px + qy, y -> rx + sy."""
        a, b, c = self
        return Form(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )


_FORM_RE = re.compile(r"^\s*[<⟨(]?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[>⟩)]?\s*$")


def parse_form(text: str) -> Form:
    """Parse "a,b,c", optionally wrapped in angle brackets."""
    m = _FORM_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse form {text!r}")
    return Form(*(int(g) for g in m.groups()))


def discriminant(Q: Form) -> int:
    return Q.discriminant


def _check_definite(Q: Form):
    if not Q.is_positive_definite:
        raise DomainError(f"{Q} is not positive definite")


def is_sl2_reduced(Q: Form) -> bool:
    a, b, c = Q
    if not (abs(b) <= a <= c):
        return False
    return b >= 0 or (abs(b) != a and a != c)


def is_gl2_reduced(Q: Form) -> bool:
    return 0 <= Q.b <= Q.a <= Q.c


def reduce_sl2(Q: Form) -> Form:
    """The SL2(Z)-reduced form properly equivalent to Q."""
    _check_definite(Q)
    a, b, c = Q
    while True:
        if not (-a < b <= a):
            # translate x -> x + ty so that b lands in (-a, a]
            t = (a - b) // (2 * a)
            c = a * t * t + b * t + c
            b = b + 2 * a * t
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return Form(a, b, c)


def reduce_gl2(Q: Form) -> Form:
    """The GL2(Z)-reduced representative 0 <= b <= a <= c."""
    R = reduce_sl2(Q)
    return Form(R.a, abs(R.b), R.c)


def principal_form(D: int) -> Form:
    k = D & 1
    return Form(1, k, (k - D) // 4)


def enumerate_reduced(D: int, primitive_only: bool = True) -> list[Form]:
    """All SL2-reduced forms of discriminant D, sorted."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"not a negative discriminant: {D}")
    out = []
    bmax = math.isqrt(-D // 3)
    for b in range(D & 1, bmax + 1, 2):
        n = (b * b - D) // 4
        lo = max(b, 1)
        hi = math.isqrt(n)
        if hi < lo:
            continue
        a_vals = np.arange(lo, hi + 1, dtype=np.int64)
        for a in a_vals[n % a_vals == 0].tolist():
            c = n // a
            if primitive_only and math.gcd(a, b, c) != 1:
                continue
            out.append(Form(a, b, c))
            if 0 < b < a < c:
                out.append(Form(a, -b, c))
    out.sort()
    return out


def ambiguous_census(D: int) -> tuple[int, int]:
    """(h, number of primitive reduced forms of order dividing 2) for discriminant D.

    A reduced form has order dividing 2 exactly when b = 0, |b| = a or a = c,
    so the count needs no composition.
    """
    h = amb = 0
    bmax = math.isqrt(-D // 3)
    for b in range(D & 1, bmax + 1, 2):
        n = (b * b - D) // 4
        lo = max(b, 1)
        hi = math.isqrt(n)
        if hi < lo:
            continue
        a_vals = np.arange(lo, hi + 1, dtype=np.int64)
        a_vals = a_vals[n % a_vals == 0]
        if not len(a_vals):
            continue
        c_vals = n // a_vals
        prim = np.gcd(np.gcd(a_vals, b), c_vals) == 1
        a_vals, c_vals = a_vals[prim], c_vals[prim]
        special = (a_vals == c_vals) | (a_vals == b) | (b == 0)
        h += int(np.count_nonzero(special)) + 2 * int(np.count_nonzero(~special))
        amb += int(np.count_nonzero(special))
    return h, amb


def represents(Q: Form, n: int) -> bool:
    """True iff Q(x, y) = n has an integer solution."""
    _check_definite(Q)
    if n < 0:
        return False
    if n == 0:
        return True
    a, b, c = Q
    D = Q.discriminant
    ymax = math.isqrt(4 * a * n // -D)
    for y in range(0, ymax + 1):
        # a x^2 + b y x + (c y^2 - n) = 0
        disc = y * y * D + 4 * a * n
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for num in (-b * y + s, -b * y - s):
            if num % (2 * a) == 0:
                return True
    return False


def represented_values(Q: Form, limit: int) -> np.ndarray:
    """Boolean mask m of length limit+1 with m[n] set iff 0 < n = Q(x, y) for some x, y."""
    _check_definite(Q)
    if limit > REPRESENT_BUDGET:
        raise ResourceError(f"limit {limit} exceeds representation budget {REPRESENT_BUDGET}")
    a, b, c = (int(v) for v in Q)
    D = Q.discriminant
    hit = np.zeros(limit + 1, dtype=bool)
    ymax = math.isqrt(4 * a * limit // -D)
    # Q(x, y) = Q(-x, -y): y >= 0 suffices
    for y in range(0, ymax + 1):
        disc = y * y * D + 4 * a * limit
        if disc < 0:
            continue
        s = math.isqrt(disc)
        lo = -((b * y + s) // (2 * a)) - 1
        hi = (-b * y + s) // (2 * a) + 1
        x = np.arange(lo, hi + 1, dtype=np.int64)
        v = a * x * x + b * y * x + c * y * y
        v = v[(v > 0) & (v <= limit)]
        hit[v] = True
    return hit


def represented_primes(Q: Form, limit: int, table: arith.PrimeTable | None = None) -> np.ndarray:
    """Boolean mask over 0..limit marking the primes represented by Q."""
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    if table is None or table.limit < limit:
        table = arith.prime_table(limit)
    return represented_values(Q, limit) & table.is_prime[: limit + 1]


def represented_prime_list(Q: Form, limit: int, table: arith.PrimeTable | None = None) -> list[int]:
    return np.flatnonzero(represented_primes(Q, limit, table)).tolist()
