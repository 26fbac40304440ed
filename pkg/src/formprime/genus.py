"""Genus class fields as spans of quadratic discriminants modulo squares.

A multiquadratic field Q(sqrt m1, ..., sqrt mk) is determined by the subgroup
of Q*/Q*^2 generated by the m_i. Squarefree integers are encoded as exponent
vectors over the atoms (-1, 2, 3, 5, 7, ...), so field equality becomes
equality of reduced row echelon bases over GF(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import arith
from .errors import DomainError, ResourceError
from .qform import Form, reduce_sl2, represented_primes


def _atoms(m: int) -> frozenset[int]:
    """Atoms of the square class of m: -1 for the sign, then primes to odd powers."""
    if m == 0:
        raise DomainError("0 has no square class")
    out = {p for p, e in arith.factorize(abs(m)) if e & 1}
    if m < 0:
        out.add(-1)
    return frozenset(out)


def _value(atoms) -> int:
    return math.prod(atoms) if atoms else 1


def canonical_span(generators) -> tuple[int, ...]:
    """Reduced row echelon basis (as squarefree integers) of the span of the generators mod squares."""
    vecs = [_atoms(m) for m in generators]
    coords = sorted(set().union(*vecs)) if vecs else []
    # -1 sorts first; columns ordered -1, 2, 3, 5, ...
    pos = {q: i for i, q in enumerate(coords)}
    n = len(coords)
    rows = []
    for v in vecs:
        bits = 0
        for q in v:
            bits |= 1 << (n - 1 - pos[q])
        rows.append(bits)
    basis = []
    for col in range(n - 1, -1, -1):
        bit = 1 << col
        piv = next((i for i, r in enumerate(rows) if r & bit), None)
        if piv is None:
            continue
        pr = rows.pop(piv)
        rows = [r ^ pr if r & bit else r for r in rows]
        basis = [b ^ pr if b & bit else b for b in basis]
        basis.append(pr)
    out = []
    for b in basis:
        out.append(_value(coords[n - 1 - i] for i in range(n) if b >> i & 1))
    return tuple(out)


def in_span(m: int, basis) -> bool:
    return canonical_span(basis) == canonical_span(list(basis) + [m])


@dataclass(frozen=True)
class GenusBasis:
    D: int
    d: int
    f: int
    generators: tuple[int, ...]
    canonical_basis: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, GenusBasis) and self.canonical_basis == other.canonical_basis

    def __hash__(self):
        return hash(self.canonical_basis)

    @property
    def rank(self) -> int:
        """Dimension of the span; equals log2 #(Cl/Cl^2) + 1."""
        return len(self.canonical_basis)

    def __str__(self):
        return format_span(self.canonical_basis)


def genus_basis(d: int, f: int = 1) -> GenusBasis:
    """Generators of the genus class field of the order of conductor f in Q(sqrt d)."""
    if d >= 0 or not arith.is_fundamental(d):
        raise DomainError(f"{d} is not a negative fundamental discriminant")
    if f < 1:
        raise DomainError(f"conductor must be >= 1, got {f}")
    D = d * f * f
    gens = [d]
    gens += [arith.p_star(p) for p in arith.prime_divisors(D) if p != 2]
    if d % 4 == 1:
        if f % 8 == 0:
            gens += [-4, 8]
        elif f % 4 == 0:
            gens += [-4]
    elif d % 8 == 4:
        if f % 4 == 0:
            gens += [8]
    elif f % 2 == 0:
        gens += [-4]
    gens = tuple(gens)
    return GenusBasis(D, d, f, gens, canonical_span(gens))


def genus_basis_of(D: int) -> GenusBasis:
    return genus_basis(*arith.fundamental_decomposition(D))


def genus_field_equal(B1: GenusBasis, B2: GenusBasis) -> bool:
    return B1.canonical_basis == B2.canonical_basis


def format_span(basis) -> str:
    """Render a span as Q[m1, ...]: -1/2 part first, then p* for each odd prime when all of them lie in the span."""
    canon = canonical_span(basis)
    odd = sorted({q for m in canon for q in _atoms(m) if q > 2})
    stars = [arith.p_star(p) for p in odd]
    if not all(in_span(m, canon) for m in stars):
        # not of genus shape: list the canonical basis itself
        return "Q[" + ", ".join(str(m) for m in canon) + "]"
    two_part = []
    for m in canon:
        # strip odd primes by dividing out p*; what is left lies in <-1, 2>
        v = set(_atoms(m))
        for p in odd:
            if p in v:
                v ^= _atoms(arith.p_star(p))
        two_part.append(_value(v))
    two = [m for m in canonical_span(two_part) if m != 1]
    return "Q[" + ", ".join(str(m) for m in two + stars) + "]"


def parse_span(text: str) -> tuple[int, ...]:
    """Parse 'Q[-1, 2, -3]' into a canonical basis."""
    body = text.strip()
    if body.startswith("Q"):
        body = body[1:]
    body = body.strip().strip("[]")
    return canonical_span([int(v) for v in body.split(",") if v.strip()])


@dataclass(frozen=True)
class Signature:
    basis: tuple[int, ...]
    values: tuple[int, ...]
    witness_prime: int

    def key(self):
        return self.basis, self.values


def witness_primes(Q: Form, count: int = 1, limit: int | None = None) -> list[int]:
    """The smallest primes coprime to 2D represented by Q."""
    D = Q.discriminant
    R = reduce_sl2(Q)
    lim = limit or max(1000, 8 * R.c)
    while True:
        prs = np.flatnonzero(represented_primes(R, lim)).tolist()
        good = [p for p in prs if (2 * D) % p]
        if len(good) >= count:
            return good[:count]
        if limit is not None:
            raise ResourceError(f"no witness prime for {Q} below {limit}")
        lim *= 4


def signature(Q: Form, B: GenusBasis, witness: int | None = None, limit: int | None = None) -> Signature:
    """Kronecker symbols of the canonical genus generators at a prime represented by Q."""
    if not Q.is_primitive:
        raise DomainError(f"{Q} is not primitive")
    D = Q.discriminant
    # every odd prime ramified in the genus field must divide D
    for m in B.canonical_basis:
        if any(q > 2 and D % q for q in _atoms(m)):
            raise DomainError(f"genus basis {B} is not compatible with discriminant {D}")
    p = witness if witness is not None else witness_primes(Q, 1, limit)[0]
    vals = tuple(arith.kronecker(m, p) for m in B.canonical_basis)
    return Signature(B.canonical_basis, vals, p)


def fixed_field(sig: Signature) -> tuple[int, ...]:
    """Canonical basis of the largest subfield of the genus field in which the witness prime splits."""
    gens = []
    for k in range(1, 1 << len(sig.basis)):
        chosen = [i for i in range(len(sig.basis)) if k >> i & 1]
        if math.prod(sig.values[i] for i in chosen) == 1:
            gens.append(math.prod(sig.basis[i] for i in chosen))
    return canonical_span(gens)
