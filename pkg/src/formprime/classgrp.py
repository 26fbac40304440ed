"""Form class groups Cl(D) of imaginary quadratic orders."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith
from .errors import DomainError
from .qform import Form, enumerate_reduced, principal_form, reduce_gl2, reduce_sl2


@dataclass(frozen=True, order=True)
class GroupType:
    """Invariant factors n1 | n2 | ... of a finite abelian group (empty = trivial)."""

    invariant_factors: tuple[int, ...] = ()

    def __str__(self):
        if not self.invariant_factors:
            return "(1)"
        return "(" + ", ".join(map(str, self.invariant_factors)) + ")"

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def divides_224(self) -> bool:
        """True iff the group injects into (Z/2)^r + Z/4."""
        f = self.invariant_factors
        return all(n == 2 for n in f[:-1]) and (not f or f[-1] in (2, 4))

    @classmethod
    def parse(cls, text: str) -> GroupType:
        body = text.strip().strip("()")
        vals = tuple(int(v) for v in body.split(",") if v.strip())
        return cls(tuple(v for v in vals if v != 1))


def group_type_from_cyclic(orders) -> GroupType:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, e in arith.factorize(n) if n > 1 else []:
            by_prime.setdefault(p, []).append(p**e)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for powers in by_prime.values():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            factors[width - 1 - i] *= q
    return GroupType(tuple(n for n in factors if n > 1))


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def compose_raw(f1: Form, f2: Form) -> Form:
    """Gauss composition of two primitive forms of equal discriminant (unreduced)."""
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return Form(a3, b3, c3)


def _check_class_form(Q: Form, D: int):
    if Q.discriminant != D:
        raise DomainError(f"{Q} has discriminant {Q.discriminant}, expected {D}")
    if not Q.is_primitive:
        raise DomainError(f"{Q} is not primitive")


def compose(Q1: Form, Q2: Form, D: int | None = None) -> Form:
    """Reduced composite of two primitive forms of discriminant D."""
    if D is None:
        D = Q1.discriminant
    _check_class_form(Q1, D)
    _check_class_form(Q2, D)
    return reduce_sl2(compose_raw(Q1, Q2))


def inverse(Q: Form) -> Form:
    return reduce_sl2(Form(Q.a, -Q.b, Q.c))


@dataclass(eq=False)
class ClassGroup:
    D: int
    elements: list[Form]
    index: dict[Form, int] = field(repr=False)

    @property
    def h(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Form:
        return self.elements[self.index[principal_form(self.D)]]

    def __contains__(self, Q: Form) -> bool:
        return Q in self.index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, x: Form, y: Form) -> Form:
        return reduce_sl2(compose_raw(x, y))

    def inv(self, x: Form) -> Form:
        return inverse(x)

    def power(self, x: Form, n: int) -> Form:
        if n < 0:
            x, n = self.inv(x), -n
        r = self.identity
        while n:
            if n & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            n >>= 1
        return r

    @functools.cached_property
    def orders(self) -> dict[Form, int]:
        e = self.identity
        out = {}
        for x in self.elements:
            k, y = 1, x
            while y != e:
                y = self.mul(y, x)
                k += 1
            out[x] = k
        return out

    @functools.cached_property
    def squares(self) -> frozenset[Form]:
        return frozenset(self.mul(x, x) for x in self.elements)

    @functools.cached_property
    def gl2_classes(self) -> list[Form]:
        """One GL2-reduced form per pair {sigma, sigma^-1}, sorted."""
        return sorted({reduce_gl2(x) for x in self.elements})

    def table(self) -> np.ndarray:
        """Multiplication table on element indices; raises if a product leaves the group."""
        n = len(self.elements)
        T = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                z = self.mul(x, y)
                assert z in self.index, (x, y, z)
                T[i, j] = self.index[z]
        return T

    def check_axioms(self):
        """Closure, identity, inverses, commutativity and associativity, all exhaustively."""
        T = self.table()
        e = self.index[self.identity]
        n = len(T)
        assert (T[e] == np.arange(n)).all()
        assert (T == T.T).all()
        assert ((T == e).sum(axis=1) == 1).all()
        for x in range(n):
            # (x y) z == x (y z) for all y, z
            assert (T[T[x]] == T[x][T]).all(), self.elements[x]


@functools.lru_cache(maxsize=4096)
def class_group(D: int) -> ClassGroup:
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"not a negative discriminant: {D}")
    elems = enumerate_reduced(D, primitive_only=True)
    return ClassGroup(D, elems, {x: i for i, x in enumerate(elems)})


def order_of(Q: Form, G: ClassGroup) -> int:
    Q = reduce_sl2(Q)
    if Q not in G:
        raise DomainError(f"{Q} is not an element of Cl({G.D})")
    return G.orders[Q]


def group_type(G: ClassGroup) -> GroupType:
    """Invariant factors from the census #G[p^k] of element orders."""
    return type_from_orders(list(G.orders.values()))


def type_from_orders(orders) -> GroupType:
    """Invariant factors of a finite abelian group given the order of every element."""
    n = len(orders)
    factors: list[int] = []
    for p, e in arith.factorize(n) if n > 1 else []:
        # #G[p^k] = p^(sum_i min(k, e_i)); successive ratios count the e_i >= k
        logs = []
        for k in range(e + 1):
            pk = p**k
            cnt = sum(1 for o in orders if _p_part(o, p) <= pk)
            logs.append(round(math.log(cnt, p)))
        ge = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        exps = [sum(1 for g in ge if g > i) for i in range(ge[0] if ge else 0)]
        # exps[i] = exponent of the i-th largest p-primary cyclic factor
        factors.extend(p**x for x in exps)
    return group_type_from_cyclic(factors)


def _p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_type_dividing_224(G: ClassGroup) -> bool:
    """#(G^2) <= 2, equivalently G injects into (Z/2)^r + Z/4."""
    return len(G.squares) <= 2


def unit_index(d: int, f: int) -> int:
    """[A* : A_f*] for the order of conductor f in the maximal order of discriminant d."""
    if f == 1:
        return 1
    return {-3: 3, -4: 2}.get(d, 1)


def h_formula(d: int, f: int, hd: int | None = None) -> int:
    """Class number h(d f^2) from h(d) and the conductor."""
    if not arith.is_fundamental(d) or d >= 0:
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    if f < 1:
        raise DomainError(f"conductor must be >= 1, got {f}")
    if hd is None:
        hd = class_group(d).h
    val = Fraction(hd * f, unit_index(d, f))
    for p in arith.prime_divisors(f):
        val *= 1 - Fraction(arith.kronecker(d, p), p)
    assert val.denominator == 1
    return int(val)


def local_unit_quotient(d: int, p: int, e: int) -> GroupType:
    """Type of (A/p^e A)^* / (Z/p^e Z)^* for the maximal order A of discriminant d."""
    if not arith.is_fundamental(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    if e < 1 or not arith.is_prime(p):
        raise DomainError(f"need a prime p and e >= 1, got p={p}, e={e}")
    if p == 2:
        r = d % 8
        if r == 1:
            cyc = [] if e == 1 else [2, 2 ** (e - 2)]
        elif r == 5:
            cyc = [3] if e == 1 else [3, 2, 2 ** (e - 2)]
        elif r == 4:
            cyc = [2, 2 ** (e - 1)]
        else:
            cyc = [2**e]
    elif p == 3:
        if d % 3 == 1:
            cyc = [2, 3 ** (e - 1)]
        elif d % 3 == 2:
            cyc = [4, 3 ** (e - 1)]
        elif d % 9 == 3:
            cyc = [3**e]
        else:
            cyc = [3, 3 ** (e - 1)]
    else:
        k = arith.kronecker(d, p)
        if k == 1:
            cyc = [p - 1, p ** (e - 1)]
        elif k == -1:
            cyc = [p + 1, p ** (e - 1)]
        else:
            cyc = [p**e]
    return group_type_from_cyclic(cyc)


def restrict(Q: Form, D1: int) -> Form:
    """Image of Q (discriminant r^2 D1) under the natural map Cl(r^2 D1) -> Cl(D1)."""
    D2 = Q.discriminant
    if D1 >= 0 or D2 % D1 or not _is_square(D2 // D1):
        raise DomainError(f"discriminant {D2} is not a square multiple of {D1}")
    r = math.isqrt(D2 // D1)
    if r == 1:
        return reduce_sl2(Q)
    Q = _coprime_leading(reduce_sl2(Q), r)
    a, b, _ = Q
    # b1 = b / r mod 2a, with b1 = D1 mod 2
    for b1 in range(-a, a + 1):
        if (b1 - D1) % 2 == 0 and (r * b1 - b) % (2 * a) == 0 and (b1 * b1 - D1) % (4 * a) == 0:
            return reduce_sl2(Form(a, b1, (b1 * b1 - D1) // (4 * a)))
    raise AssertionError(f"no restriction found for {Q} to {D1}")


def _is_square(n: int) -> bool:
    return n > 0 and math.isqrt(n) ** 2 == n


def _coprime_leading(Q: Form, r: int) -> Form:
    """A form properly equivalent to Q whose leading coefficient is coprime to r."""
    if math.gcd(Q.a, r) == 1:
        return Q
    bound = 1
    while True:
        for x in range(-bound, bound + 1):
            for y in (bound - abs(x), abs(x) - bound) if abs(x) != bound else (0,):
                if math.gcd(x, y) != 1:
                    continue
                if math.gcd(Q(x, y), r) == 1:
                    # complete (x, y) to a unimodular matrix [[x, u], [y, v]]
                    _, v, u = _xgcd(x, y)
                    u = -u
                    assert x * v - u * y == 1
                    return Q.transform(x, u, y, v)
        bound += 1
