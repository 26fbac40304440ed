"""Exhaustive search for imaginary quadratic orders whose class group has type dividing (2,...,2,4).

Fundamental discriminants are generated in blocks with numpy (squarefree sieve
plus the split-prime prefilter), then tested by counting ambiguous reduced
forms: a group of order h has #G^2 <= 2 exactly when h <= 2 #G[2].
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import arith
from .classgrp import GroupType, class_group, group_type, h_formula
from .errors import DomainError
from .genus import genus_basis
from .qform import ambiguous_census

log = logging.getLogger(__name__)

# 4 * 67^4: beyond this |d| at most one further fundamental discriminant can occur
FULL_B = 80604484

BLOCK = 1 << 20

TYPE_TABLES = {
    (): 7,
    (2,): 8,
    (4,): 9,
    (2, 2): 10,
    (2, 4): 11,
    (2, 2, 2): 12,
    (2, 2, 4): 13,
    (2, 2, 2, 2): 14,
    (2, 2, 2, 4): 15,
    (2, 2, 2, 2, 4): 16,
}


@dataclass(frozen=True)
class SearchConfig:
    bound_d: int = 100_000
    f_max: int = 100
    full_B: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.bound_d < 3:
            raise DomainError(f"bound must be >= 3, got {self.bound_d}")
        if self.f_max < 1:
            raise DomainError(f"f_max must be >= 1, got {self.f_max}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")

    @property
    def bound(self) -> int:
        return FULL_B if self.full_B else self.bound_d


@dataclass(frozen=True, order=True)
class Hit:
    d: int
    f: int
    D: int
    type: GroupType

    def sort_key(self):
        return (abs(self.d), abs(self.D))

    def tsv(self) -> str:
        return f"{self.d}\t{self.f}\t{self.D}\t{self.type}"

    @classmethod
    def from_tsv(cls, line: str) -> Hit:
        d, f, D, t = line.rstrip("\n").split("\t")
        return cls(int(d), int(f), int(D), GroupType.parse(t))


def _is_hit(D: int) -> bool:
    h, amb = ambiguous_census(D)
    return h <= 2 * amb


def _make_hit(d: int, f: int) -> Hit:
    D = d * f * f
    return Hit(d, f, D, group_type(class_group(D)))


# ------------------------------------------------------------ prefilter


def expc_prefilter(d: int, c: int = 4) -> bool:
    """Keep d unless some prime p with p^c <= |d|/4 splits, i.e. (d/p) = 1.

    A split prime that small yields a reduced form of order > 4, so no true hit is rejected.
    """
    if c not in (2, 4):
        raise DomainError(f"exponent c must be 2 or 4, got {c}")
    if not arith.is_fundamental(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    n = abs(d)
    p = 2
    while p**c * 4 <= n:
        if arith.kronecker(d, p) == 1:
            return False
        p = _next_prime(p)
    return True


def _next_prime(p: int) -> int:
    q = p + 1
    while not arith.is_prime(q):
        q += 1
    return q


def candidate_block(lo: int, hi: int, c: int = 4) -> np.ndarray:
    """|d| in [lo, hi) with -|d| fundamental and passing the prefilter, ascending."""
    lo = max(lo, 3)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64)
    n = np.arange(lo, hi, dtype=np.int64)
    odd_case = n % 4 == 3
    m = n // 4
    even_case = (n % 4 == 0) & np.isin(m % 4, (1, 2))
    keep = odd_case | even_case
    # prefilter: for each small prime p (p^c <= hi/4) reject split p with p^c <= n/4
    p = 2
    while 4 * p**c <= hi:
        big = 4 * p**c <= n
        if p == 2:
            split = n % 8 == 7
        else:
            squares = np.zeros(p, dtype=bool)
            squares[(np.arange(1, p) ** 2) % p] = True
            split = squares[(-n) % p]
        keep &= ~(big & split)
        p = _next_prime(p)
    n = n[keep]
    # squarefree kernel test on the few survivors
    core = np.where(n % 4 == 3, n, n // 4)
    sf = np.ones(len(n), dtype=bool)
    for p in arith.prime_table(math.isqrt(hi) + 1).upto(math.isqrt(hi)).tolist():
        sf &= core % (p * p) != 0
    return n[sf]


def _fundamental_chunk(args) -> list[int]:
    lo, hi = args
    return [-int(n) for n in candidate_block(lo, hi) if _is_hit(-int(n))]


# ------------------------------------------------------------ checkpoint


class Checkpoint:
    """Append-only TSV: hit rows plus '# range lo hi' markers for finished blocks."""

    def __init__(self, path):
        self.path = Path(path)
        self.done: set[tuple[int, int]] = set()
        self.hits: list[int] = []
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if line.startswith("# range "):
                    _, _, lo, hi = line.split()
                    self.done.add((int(lo), int(hi)))
                elif line and not line.startswith("#"):
                    self.hits.append(int(line.split("\t")[0]))

    def record(self, lo: int, hi: int, ds: list[int]):
        with self.path.open("a", encoding="utf-8", newline="\n") as fh:
            for d in ds:
                fh.write(f"{d}\t1\t{d}\t-\n")
            fh.write(f"# range {lo} {hi}\n")
        self.done.add((lo, hi))
        self.hits.extend(ds)


def _blocks(bound: int, size: int = BLOCK):
    lo = 3
    while lo <= bound:
        hi = min(lo + size, bound + 1)
        yield lo, hi
        lo = hi


def enumerate_fundamental_hits(cfg: SearchConfig, checkpoint=None) -> list[Hit]:
    """Fundamental d with |d| <= bound whose class group has type dividing (2,...,2,4)."""
    size = BLOCK if cfg.full_B else max(4096, cfg.bound // (4 * cfg.workers) + 1)
    blocks = list(_blocks(cfg.bound, size))
    ck = Checkpoint(checkpoint) if checkpoint else None
    todo = [b for b in blocks if not ck or b not in ck.done]
    found = list(ck.hits) if ck else []
    if cfg.workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            for b, ds in zip(todo, ex.map(_fundamental_chunk, todo)):
                if ck:
                    ck.record(*b, ds)
                found.extend(ds)
                log.info("block %d-%d: %d hits", b[0], b[1], len(ds))
    else:
        for b in todo:
            ds = _fundamental_chunk(b)
            if ck:
                ck.record(*b, ds)
            found.extend(ds)
    ds = sorted(set(found), key=abs)
    return [_make_hit(d, 1) for d in ds if abs(d) <= cfg.bound]


# ------------------------------------------------------------ conductors


def _two_rank_bound(d: int, f: int) -> int:
    """log2 of 2 #G[2] for discriminant d f^2, from the genus field."""
    return genus_basis(d, f).rank


def enumerate_order_hits(cfg: SearchConfig, fundamentals) -> list[Hit]:
    """Hits d f^2 with 2 <= f <= f_max for the given fundamental hits."""
    out = []
    for H in fundamentals:
        d = H.d if isinstance(H, Hit) else H
        hd = class_group(d).h
        for f in range(2, cfg.f_max + 1):
            h = h_formula(d, f, hd)
            if h & (h - 1) or h > 1 << _two_rank_bound(d, f):
                continue
            if _is_hit(d * f * f):
                out.append(_make_hit(d, f))
    out.sort(key=Hit.sort_key)
    return out


@dataclass(frozen=True)
class ConductorCertificate:
    d: int
    f_max: int
    f_bound: int
    leftover: tuple[int, ...]
    hits: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.hits


def conductor_certificate(d: int, f_max: int) -> ConductorCertificate:
    """Show there is no hit d f^2 with f > f_max.

    A hit needs h(d f^2) <= 2 #G[2] <= 2^(w + 3), w the number of odd primes dividing
    d f^2. Since h(d f^2) >= h(d) phi(f) / 3 and phi(f) / 2^w(f) >= 0.365 sqrt(f),
    every f beyond f_bound fails; conductors in (f_max, f_bound] are screened with the
    exact class number formula and the genus 2-rank.
    """
    hd = class_group(d).h
    w_d = sum(1 for p in arith.prime_divisors(d) if p > 2)
    f_bound = max(f_max, math.ceil((3 * 2 ** (w_d + 3) / (0.365 * hd)) ** 2))
    if f_bound <= f_max:
        return ConductorCertificate(d, f_max, f_bound, (), ())
    F = f_bound
    # h(d f^2) via a multiplicative sieve over f, and the odd-prime count of f
    ratio = np.arange(F + 1, dtype=np.float64)
    w_f = np.zeros(F + 1, dtype=np.int64)
    for p in arith.prime_table(F).upto(F).tolist():
        ratio[p::p] *= 1 - arith.kronecker(d, p) / p
        if p > 2 and d % p:
            w_f[p::p] += 1
    u = 3 if d == -3 else 2 if d == -4 else 1
    h = np.rint(hd * ratio / u).astype(np.int64)
    f = np.arange(F + 1)
    ok = (f > f_max) & (h > 0) & ((h & (h - 1)) == 0) & (h <= 2.0 ** (w_d + w_f + 3))
    leftover = [int(x) for x in np.flatnonzero(ok)]
    hits = []
    for x in leftover:
        hx = h_formula(d, x, hd)
        if hx & (hx - 1) or hx > 1 << _two_rank_bound(d, x):
            continue
        if _is_hit(d * x * x):
            hits.append(x)
    cert = ConductorCertificate(d, f_max, F, tuple(leftover), tuple(hits))
    if hits:
        log.warning("d=%d: hits beyond f_max=%d at f=%s", d, f_max, hits)
    else:
        log.info("d=%d: no hit with f > %d (screened up to %d, %d leftovers)", d, f_max, F, len(leftover))
    return cert


# ------------------------------------------------------------ driver and report


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FORMPRIME_JOBS", "1")))
    except ValueError:
        return 1


def run_search(cfg: SearchConfig, checkpoint=None) -> list[Hit]:
    """Fundamental and nonmaximal hits, sorted by |d| then |D|."""
    fund = enumerate_fundamental_hits(cfg, checkpoint)
    orders = enumerate_order_hits(cfg, fund)
    return sorted(fund + orders, key=Hit.sort_key)


def emit_tables(hits) -> dict[GroupType, list[Hit]]:
    """Hits grouped by class group type (in table order), each sorted by |d| then |D|."""
    groups: dict[GroupType, list[Hit]] = {}
    for H in sorted(hits, key=Hit.sort_key):
        groups.setdefault(H.type, []).append(H)
    return dict(sorted(groups.items(), key=lambda kv: TYPE_TABLES.get(kv[0].invariant_factors, 99)))


def table_tsv(rows) -> str:
    """TSV with columns |d|, f, |D| (header included)."""
    lines = ["|d|\tf\t|D|"]
    lines += [f"{abs(H.d)}\t{H.f}\t{abs(H.D)}" for H in rows]
    return "\n".join(lines) + "\n"
