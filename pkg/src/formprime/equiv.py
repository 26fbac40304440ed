"""Forms representing almost the same primes.

Two primitive forms Q1, Q2 are related (Q1 ~ Q2) when their sets of represented
primes differ by a finite set. Everything here is decided from class group data:

* same fundamental discriminant: the restriction map Cl(D2) -> Cl(D1) must be an
  isomorphism, or have kernel of order 2 generated by sigma2^2;
* different fundamental discriminants: equal genus fields, both elements of
  exponent-2 groups or of order 4 in a group of type (2,...,2,4), and equal
  genus signatures.

Classes are closed transitively with a disjoint-set union.
"""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from . import arith
from .classgrp import (
    GroupType,
    _coprime_leading,
    class_group,
    group_type,
    h_formula,
    is_type_dividing_224,
    restrict,
)
from .errors import DomainError
from .genus import GenusBasis, genus_basis, signature
from .qform import Form, reduce_gl2, reduce_sl2, represents


# ---------------------------------------------------------------- lifts


def sublattice_lift(Q: Form, r: int) -> Form:
    """An r-lift of Q: the primitive form Q(x, ry) after moving a unit-coprime value to the front.

    Its values are a subset of Q's values, and its class restricts to Q's class.
    """
    if r < 1:
        raise DomainError(f"lift index must be positive, got {r}")
    if not Q.is_primitive:
        raise DomainError(f"{Q} is not primitive")
    R = _coprime_leading(reduce_sl2(Q), r)
    a, b, c = R
    return reduce_sl2(Form(a, r * b, r * r * c))


def two_lift(Q: Form) -> Form | None:
    """A 2-lift of Q (discriminant 4D), SL2-reduced.

    For forms of order dividing 2 the lift is explicit:
    <a,0,4c> or <4a,0,c> when b = 0, <4a,2a,c> when b = a, <a,2b,4a> when a = c.
    All of these are sublattice forms of index 2, as is the general case.
    """
    if not Q.is_primitive or not Q.is_positive_definite:
        return None
    a, b, c = reduce_sl2(Q)
    if b == 0:
        L = Form(a, 0, 4 * c) if a % 2 else Form(4 * a, 0, c)
    elif b == a and c % 2:
        L = Form(4 * a, 2 * a, c)
    elif a == c and a % 2:
        L = Form(a, 2 * b, 4 * a)
    else:
        return sublattice_lift(Q, 2)
    return reduce_sl2(L)


def lifts(Q: Form, r: int) -> list[Form]:
    """All classes of discriminant r^2 D restricting to the class of Q (SL2-reduced, sorted)."""
    D = Q.discriminant
    target = reduce_sl2(Q)
    G2 = class_group(r * r * D)
    return sorted(x for x in G2 if restrict(x, D) == target)


# ------------------------------------------------- same fundamental discriminant


def related_by_restriction(sigma2: Form, D1: int) -> bool:
    """Whether sigma2 ~ restrict(sigma2, D1), for D2 = r^2 D1.

    True iff the restriction map is bijective, or its kernel has order 2 and is
    generated by sigma2^2.
    """
    D2 = sigma2.discriminant
    G1, G2 = class_group(D1), class_group(D2)
    if G2.h == G1.h:
        return True
    if G2.h != 2 * G1.h:
        return False
    s2 = G2.mul(sigma2, sigma2)
    return s2 != G2.identity and restrict(s2, D1) == G1.identity


def _neighbours(Q: Form) -> list[Form]:
    """Forms with the same fundamental discriminant directly related to Q (GL2-reduced)."""
    D = Q.discriminant
    d, f = arith.fundamental_decomposition(D)
    sigma = reduce_sl2(Q)
    h = class_group(D).h
    out = set()
    # downward: Q is itself a lift of a form of conductor f / r
    for r in range(2, f + 1):
        if f % r:
            continue
        D1 = D // (r * r)
        if related_by_restriction(sigma, D1):
            out.add(reduce_gl2(restrict(sigma, D1)))
    # upward: only indices with h(r^2 D) in {h, 2h} can carry a partner
    for r in (2, 3, 4):
        h2 = h_formula(d, f * r)
        if h2 not in (h, 2 * h):
            continue
        D2 = r * r * D
        for x in lifts(sigma, r):
            if related_by_restriction(x, D):
                out.add(reduce_gl2(x))
    return sorted(out)


def same_d_partners(Q: Form) -> list[Form]:
    """All GL2-reduced Q' != Q with the same fundamental discriminant and Q ~ Q'."""
    if not Q.is_primitive:
        raise DomainError(f"{Q} is not primitive")
    start = reduce_gl2(Q)
    seen = {start}
    todo = [start]
    while todo:
        for nb in _neighbours(todo.pop()):
            if nb not in seen:
                seen.add(nb)
                todo.append(nb)
    seen.discard(start)
    return sorted(seen, key=lambda F: (-F.discriminant, F))


# -------------------------------------------- different fundamental discriminants


def _as_discriminant(item) -> int:
    if isinstance(item, int):
        return item if item < 0 else -item
    if isinstance(item, tuple):
        d, f = item
        return d * f * f
    return item.D


def _checked_discriminants(discs) -> list[int]:
    out = sorted({_as_discriminant(x) for x in discs}, key=abs)
    for D in out:
        if not is_type_dividing_224(class_group(D)):
            raise DomainError(f"class group of {D} is not of type dividing (2,...,2,4)")
    return out


def participants(D: int) -> list[Form]:
    """GL2 classes of discriminant D eligible for a pair with another fundamental discriminant."""
    G = class_group(D)
    if max(G.orders.values()) <= 2:
        return G.gl2_classes
    return sorted({reduce_gl2(x) for x, n in G.orders.items() if n == 4})


@functools.lru_cache(maxsize=None)
def _signature(Q: Form, basis: tuple) -> tuple:
    D = Q.discriminant
    B = genus_basis(*arith.fundamental_decomposition(D))
    sig = signature(Q, B)
    return sig.values, sig.witness_prime


def genus_buckets(discs) -> dict[tuple, list[int]]:
    """Discriminants grouped by the canonical basis of their genus field."""
    buckets: dict[tuple, list[int]] = defaultdict(list)
    for D in _checked_discriminants(discs):
        B = genus_basis(*arith.fundamental_decomposition(D))
        buckets[B.canonical_basis].append(D)
    return dict(buckets)


def discriminant_pairs(discs) -> list[tuple[int, int]]:
    """Pairs (D1, D2) of different fundamental discriminants with equal genus fields."""
    out = []
    for members in genus_buckets(discs).values():
        for D1, D2 in itertools.combinations(members, 2):
            if arith.fundamental_decomposition(D1)[0] != arith.fundamental_decomposition(D2)[0]:
                out.append((D1, D2))
    return sorted(out, key=lambda p: (abs(p[0]), abs(p[1])))


def cross_d_pairs(discs) -> list[tuple[Form, Form]]:
    """All pairs Q1 ~ Q2 with different fundamental discriminants among the given orders."""
    pairs = []
    for basis, members in genus_buckets(discs).items():
        if len({arith.fundamental_decomposition(D)[0] for D in members}) < 2:
            continue
        by_sig = defaultdict(list)
        for D in members:
            d = arith.fundamental_decomposition(D)[0]
            for Q in participants(D):
                vals, p = _signature(Q, basis)
                by_sig[vals].append((d, Q, p))
        for group in by_sig.values():
            for (d1, Q1, p1), (d2, Q2, p2) in itertools.combinations(group, 2):
                if d1 == d2:
                    continue
                # equal restriction to P forces both to fix sqrt(d1) and sqrt(d2)
                assert arith.kronecker(d2, p1) == 1 and arith.kronecker(d1, p2) == 1, (Q1, Q2)
                pairs.append((Q1, Q2) if (abs(Q1.discriminant), Q1) <= (abs(Q2.discriminant), Q2) else (Q2, Q1))
    pairs.sort(key=lambda pq: (abs(pq[0].discriminant), pq[0], abs(pq[1].discriminant), pq[1]))
    return pairs


def same_d_edges(discs) -> list[tuple[Form, Form]]:
    """Pairs Q1 ~ Q2 with equal fundamental discriminant, both discriminants in the list."""
    by_d = defaultdict(list)
    for D in sorted({_as_discriminant(x) for x in discs}, key=abs):
        d, f = arith.fundamental_decomposition(D)
        by_d[d].append((f, D))
    edges = []
    for d, orders in by_d.items():
        for (f1, D1), (f2, D2) in itertools.combinations(orders, 2):
            if f2 % f1:
                continue
            G1, G2 = class_group(D1), class_group(D2)
            if G2.h not in (G1.h, 2 * G1.h):
                continue
            for x in G2:
                if related_by_restriction(x, D1):
                    edges.append((reduce_gl2(restrict(x, D1)), reduce_gl2(x)))
    return sorted(set(edges), key=lambda pq: (abs(pq[0].discriminant), pq[0], abs(pq[1].discriminant), pq[1]))


# ----------------------------------------------------------------- classes


@dataclass(frozen=True)
class Member:
    form: Form
    D: int
    d: int
    f: int
    group_type: GroupType
    order: int
    exceptional: tuple[int, ...] = ()

    def row(self) -> tuple:
        return (str(self.form), abs(self.D), abs(self.d), self.f, str(self.group_type), self.exceptional)


def _member(Q: Form) -> Member:
    D = Q.discriminant
    d, f = arith.fundamental_decomposition(D)
    G = class_group(D)
    return Member(Q, D, d, f, group_type(G), G.orders[reduce_sl2(Q)])


@dataclass
class EquivClass:
    members: list[Member]
    genus: GenusBasis
    exceptional: list[int] = field(default_factory=list)

    @property
    def delta(self) -> frozenset[int]:
        return frozenset(m.d for m in self.members)

    @property
    def Delta(self) -> frozenset[int]:
        return frozenset(m.D for m in self.members)

    @property
    def forms(self) -> list[Form]:
        return [m.form for m in self.members]

    def __len__(self):
        return len(self.members)

    @property
    def table(self) -> int | None:
        """Which of the six class tables this class belongs to."""
        return _TABLE_OF.get((len(self.delta), len(self.members)))

    def sort_key(self):
        return (self.table or 99, [abs(m.D) for m in self.members], self.forms)


_TABLE_OF = {(2, 2): 1, (2, 3): 2, (2, 4): 3, (3, 3): 4, (3, 4): 5, (1, 2): 6, (1, 3): 6}


def order_members(members) -> list[Member]:
    """Group by fundamental discriminant; groups by smallest |D|, members by |D| within a group."""
    groups = defaultdict(list)
    for m in members:
        groups[m.d].append(m)
    for g in groups.values():
        g.sort(key=lambda m: (abs(m.D), m.form))
    ordered = sorted(groups.values(), key=lambda g: (abs(g[0].D), g[0].form))
    return [m for g in ordered for m in g]


def member_exceptional(forms) -> list[tuple[int, ...]]:
    """Per-form exceptional primes: divisors of some D_i that the form represents but another member does not."""
    cands = sorted({p for Q in forms for p in arith.prime_divisors(Q.discriminant)})
    reps = {p: [represents(Q, p) for Q in forms] for p in cands}
    out = []
    for i in range(len(forms)):
        out.append(tuple(p for p in cands if reps[p][i] and not all(reps[p])))
    return out


def exceptional_set(C) -> list[int]:
    """Primes represented by some member of the class but not by all of them."""
    forms = C.forms if isinstance(C, EquivClass) else list(C)
    return sorted({p for e in member_exceptional(forms) for p in e})


def make_class(forms) -> EquivClass:
    members = order_members(_member(Q) for Q in forms)
    ex = member_exceptional([m.form for m in members])
    members = [Member(m.form, m.D, m.d, m.f, m.group_type, m.order, e) for m, e in zip(members, ex)]
    B = genus_basis(members[0].d, members[0].f)
    for m in members[1:]:
        if genus_basis(m.d, m.f) != B:
            raise AssertionError(f"class members with different genus fields: {members[0].form}, {m.form}")
    return EquivClass(members, B, sorted({p for e in ex for p in e}))


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # smaller form wins, so roots are deterministic
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def groups(self):
        out = defaultdict(list)
        for x in list(self.parent):
            out[self.find(x)].append(x)
        return list(out.values())


# d = -3 and d = -4: classes of a maximal order with extra units and one of its suborders
ROOTS_OF_UNITY_CLASSES = (
    (Form(1, 1, 1), Form(1, 0, 3), Form(1, 1, 7)),
    (Form(1, 0, 1), Form(1, 0, 4)),
)


@functools.cache
def check_roots_of_unity_classes() -> bool:
    """The hard-coded d = -3, -4 classes agree with the restriction criterion."""
    for forms in ROOTS_OF_UNITY_CLASSES:
        got = {forms[0], *same_d_partners(forms[0])}
        if got != set(forms):
            raise AssertionError(f"roots-of-unity class {forms} disagrees with computed {sorted(got)}")
    return True


def _is_roots_of_unity_class(C: EquivClass) -> bool:
    return len(C.delta) == 1 and any(m.D in (-3, -4) for m in C.members)


def all_classes(discs) -> list[EquivClass]:
    """Every class with at least two members among the given orders."""
    Ds = _checked_discriminants(discs)
    dsu = _DSU()
    for Q1, Q2 in cross_d_pairs(Ds):
        dsu.union(Q1, Q2)
    for Q1, Q2 in same_d_edges(Ds):
        dsu.union(Q1, Q2)
    classes = [make_class(g) for g in dsu.groups() if len(g) > 1]
    classes.sort(key=EquivClass.sort_key)
    return classes


def build_classes(discs) -> list[EquivClass]:
    """Classes with at least two fundamental discriminants, plus the d = -3, -4 classes."""
    check_roots_of_unity_classes()
    out = [C for C in all_classes(discs) if len(C.delta) >= 2 or _is_roots_of_unity_class(C)]
    out.sort(key=EquivClass.sort_key)
    return out
