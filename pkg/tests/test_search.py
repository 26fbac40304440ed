import pytest

from formprime import arith
from formprime.classgrp import GroupType, class_group, group_type, h_formula, is_type_dividing_224
from formprime.errors import DomainError
from formprime.search import (
    FULL_B,
    Checkpoint,
    Hit,
    SearchConfig,
    candidate_block,
    conductor_certificate,
    emit_tables,
    enumerate_fundamental_hits,
    enumerate_order_hits,
    expc_prefilter,
    run_search,
    table_tsv,
)

import props


def test_config():
    assert SearchConfig().bound == 100_000 and SearchConfig(full_B=True).bound == FULL_B == 4 * 67**4
    for bad in (dict(bound_d=2), dict(f_max=0), dict(workers=0)):
        with pytest.raises(DomainError):
            SearchConfig(**bad)


def test_prefilter_examples():
    assert expc_prefilter(-5460, 4)
    assert expc_prefilter(-47, 4)
    assert not is_type_dividing_224(class_group(-47))
    # a fundamental d = -4 * 10007 * k with 3 split, 3^4 <= |d|/4
    d = next(d for k in range(1, 60) if arith.is_fundamental(d := -4 * 10007 * k) and arith.kronecker(d, 3) == 1)
    assert not expc_prefilter(d, 4) and not expc_prefilter(d, 2)
    with pytest.raises(DomainError):
        expc_prefilter(-47, 3)
    with pytest.raises(DomainError):
        expc_prefilter(-12, 4)


def test_prefilter_soundness():
    for d in props.fundamentals(10**4):
        if is_type_dividing_224(class_group(d)):
            assert expc_prefilter(d, 4), d
    # c = 2 is only sound for exponent 2: Cl(-39) is cyclic of order 4 and 2 splits
    assert is_type_dividing_224(class_group(-39)) and not expc_prefilter(-39, 2)


def test_candidate_block_matches_scalar():
    lo, hi = 3, 30_000
    want = [n for n in range(lo, hi) if arith.is_fundamental(-n) and expc_prefilter(-n, 4)]
    assert candidate_block(lo, hi).tolist() == want
    # a block that does not start at 3 sees the same prefilter
    assert candidate_block(20_000, 30_000).tolist() == [n for n in want if n >= 20_000]
    assert candidate_block(10, 10).tolist() == []


def test_small_bounds():
    assert [H.d for H in enumerate_fundamental_hits(SearchConfig(3))] == [-3]
    ds = [H.d for H in enumerate_fundamental_hits(SearchConfig(200))]
    assert -163 in ds and -195 in ds and -47 not in ds
    assert group_type(class_group(-195)) == GroupType((2, 2))


def test_fundamental_hits_against_plain_scan():
    found = [H.d for H in enumerate_fundamental_hits(SearchConfig(6000))]
    want = [d for d in props.fundamentals(6000) if is_type_dividing_224(class_group(d))]
    assert found == want


def test_census(hits):
    fund = [H for H in hits if H.f == 1]
    assert len(fund) == 226 and len(hits) - len(fund) == 199
    assert max(abs(H.d) for H in fund) == 40755
    assert Hit(-7, 24, -4032, GroupType((2, 2, 4))) in hits
    assert {H.f for H in hits if H.d == -3} >= {1, 2, 3, 4, 5, 7, 8, 11, 13, 16}
    for H in hits:
        assert arith.fundamental_decomposition(H.D) == (H.d, H.f)
        assert H.type.order == h_formula(H.d, H.f) == class_group(H.D).h
        assert H.type.divides_224


def test_larger_f_max_adds_nothing(hits):
    fund = [H for H in hits if H.f == 1]
    more = enumerate_order_hits(SearchConfig(100_000, 60), fund)
    assert more == sorted([H for H in hits if H.f > 1], key=Hit.sort_key)


def test_conductor_certificate():
    for d in (-3, -4, -7, -15, -420):
        cert = conductor_certificate(d, 30)
        assert cert.ok and cert.f_bound >= 30
    cert = conductor_certificate(-3, 10)
    assert cert.hits == (11, 13, 16)


def test_workers_deterministic():
    a = run_search(SearchConfig(20_000, 12, workers=1))
    b = run_search(SearchConfig(20_000, 12, workers=3))
    assert a == b


def test_checkpoint_resume(tmp_path):
    path = tmp_path / "ck.tsv"
    cfg = SearchConfig(20_000, 4)
    full = enumerate_fundamental_hits(cfg, path)
    text = path.read_text()
    assert text.count("# range") >= 2
    # drop the last finished range and resume
    lines = text.splitlines(keepends=True)
    cut = max(i for i, l in enumerate(lines) if l.startswith("# range"))
    prev = max((i for i, l in enumerate(lines[:cut]) if l.startswith("# range")), default=-1)
    path.write_text("".join(lines[: prev + 1]))
    assert enumerate_fundamental_hits(cfg, path) == full
    assert len(Checkpoint(path).done) == text.count("# range")


def test_hit_tsv_round_trip():
    H = Hit(-7, 24, -4032, GroupType((2, 2, 4)))
    assert H.tsv() == "-7\t24\t-4032\t(2, 2, 4)" and Hit.from_tsv(H.tsv()) == H


def test_emit_tables(hits):
    assert emit_tables([]) == {}
    groups = emit_tables(hits)
    assert list(groups)[0] == GroupType(())
    rows = groups[GroupType((2, 2, 2, 2, 4))]
    assert [(abs(H.d), H.f) for H in rows] == [(5460, 4), (9240, 2), (10920, 2), (14280, 2), (19320, 2)]
    assert len(groups[GroupType((2, 2, 2, 2))]) == 4
    assert table_tsv(rows).splitlines()[:2] == ["|d|\tf\t|D|", "5460\t4\t87360"]
