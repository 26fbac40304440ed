"""Sieve checks: compare the primes that forms actually represent.

Nothing here uses class group or genus data beyond the expected density, so it
checks the algebraic pipeline independently.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import arith
from .classgrp import class_group
from .errors import DomainError, ResourceError
from .qform import Form, reduce_sl2, represented_primes


@dataclass
class MemberReport:
    form: Form
    count: int
    differences: dict[Form, list[int]] = field(default_factory=dict)
    exceptional: list[int] = field(default_factory=list)


@dataclass
class ClassReport:
    limit: int
    exceptional: list[int]
    members: list[MemberReport]

    @property
    def passed(self) -> bool:
        E = set(self.exceptional)
        return all(set(ps) <= E for m in self.members for ps in m.differences.values())

    def sieve_exceptional(self) -> list[int]:
        return sorted({p for m in self.members for p in m.exceptional})


# one byte per integer per form; beyond this the sieve does not fit comfortably in memory
MAX_LIMIT = 10**9


def _check_limit(limit: int, least: int):
    if limit < least:
        raise DomainError(f"limit must be >= {least}, got {limit}")
    if limit > MAX_LIMIT:
        raise ResourceError(f"limit {limit} exceeds {MAX_LIMIT}")


def _masks(forms, limit, jobs=1):
    table = arith.prime_table(limit)
    if jobs > 1 and len(forms) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_mask_worker, [(Q, limit) for Q in forms]))
    return [represented_primes(Q, limit, table) for Q in forms]


def _mask_worker(args):
    Q, limit = args
    return represented_primes(Q, limit)


def verify_class(C, limit: int = 10**6, jobs: int = 1) -> ClassReport:
    """Sieve every member's primes up to limit and compare them pairwise."""
    _check_limit(limit, 1000)
    forms = C.forms if hasattr(C, "forms") else list(C)
    E = list(getattr(C, "exceptional", []))
    masks = _masks(forms, limit, jobs)
    reports = []
    for i, Q in enumerate(forms):
        diffs = {}
        missed = np.zeros(limit + 1, dtype=bool)
        for j, R in enumerate(forms):
            if i == j:
                continue
            diffs[R] = np.flatnonzero(masks[i] ^ masks[j]).tolist()
            missed |= masks[i] & ~masks[j]
        reports.append(MemberReport(Q, int(masks[i].sum()), diffs, np.flatnonzero(missed).tolist()))
    return ClassReport(limit, E, reports)


def density_check(Q: Form, limit: int = 10**6) -> tuple[float, float]:
    """(observed, expected) share of primes up to limit represented by Q.

    Expected is 1/(2h) when the class of Q is its own inverse, else 1/h.
    """
    _check_limit(limit, 10**5)
    table = arith.prime_table(limit)
    got = int(represented_primes(Q, limit, table).sum())
    total = len(table.upto(limit))
    G = class_group(Q.discriminant)
    order = G.orders[reduce_sl2(Q)]
    expected = 1 / (2 * G.h) if order <= 2 else 1 / G.h
    return got / total, expected


def falsify_pair(Q1: Form, Q2: Form, limit: int = 10**6, count: int = 10) -> list[int]:
    """The first primes up to limit represented by exactly one of the two forms."""
    for Q in (Q1, Q2):
        if not Q.is_primitive:
            raise DomainError(f"{Q} is not primitive")
    _check_limit(limit, 2)
    table = arith.prime_table(limit)
    diff = represented_primes(Q1, limit, table) ^ represented_primes(Q2, limit, table)
    return np.flatnonzero(diff)[:count].tolist()
