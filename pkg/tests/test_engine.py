import numpy as np
import pytest

from quartsearch.congruence import CaseId, SearchConfig, get_enumerator
from quartsearch.engine import (
    CandidateHit,
    Checkpoint,
    CheckpointMismatchError,
    EngineKind,
    PageCounts,
    WriteStore,
    config_digest,
    eval_form_mod64,
    run,
    run_page,
)
from quartsearch.oracle import exact_search
from conftest import small_config

ALL_KINDS = list(EngineKind)


def test_eval_form_mod64_examples():
    assert eval_form_mod64(CaseId.S, "write", (1, 0)) == 1
    assert eval_form_mod64(CaseId.S, "write", (1, 1)) == 5
    assert eval_form_mod64(CaseId.N, "read", (10, 10)) == 20000
    # negative values wrap mod 2^64
    assert eval_form_mod64(CaseId.N, "read", (10, 0)) == (-20000) % 2**64
    assert eval_form_mod64(CaseId.N, "write", (1, 3)) == (1 - 81) % 2**64


def test_eval_form_matches_enumerator_values():
    cfg = small_config(CaseId.S, bound=60)
    enum = get_enumerator(cfg)
    a, b = enum.write_pairs(17)
    vals = enum.pair_write_values(a, b)
    for ai, bi, v in zip(a.tolist(), b.tolist(), vals.tolist()):
        assert eval_form_mod64(CaseId.S, "write", (ai, bi)) == v


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_trivial_solution_page(kind):
    cfg = small_config(CaseId.N, bound=100)
    hits = run_page(cfg, 0, kind)
    assert any(h.value64 == 0 and h.read_pair == (0, 0) for h in hits)


def test_run_page_rejects_bad_residue():
    cfg = small_config(CaseId.N, bound=100)
    with pytest.raises(ValueError):
        run_page(cfg, 101, EngineKind.H64)


def test_empty_page_no_hits():
    cfg = small_config(CaseId.S, bound=20)
    # find a page with an empty read stream
    enum = get_enumerator(cfg)
    for r in range(cfg.page_prime):
        if len(enum.read_pairs(r)[0]) == 0:
            assert run_page(cfg, r, EngineKind.H64) == []
            return
    pytest.fail("no empty page found")


def test_hit_multisets_match_across_hash_kinds():
    cfg = small_config(CaseId.N, bound=2000, p=101, table_bits=14)
    for r in range(0, 101, 7):
        by_kind = {}
        for kind in (EngineKind.H64, EngineKind.H64B):
            hits = run_page(cfg, r, kind)
            by_kind[kind] = sorted((h.value64, h.probe_hits) for h in hits)
        assert by_kind[EngineKind.H64] == by_kind[EngineKind.H64B]
        # M matches on exact 64-bit values: a subset of the hash hits
        m_hits = sorted((h.value64, h.probe_hits)
                        for h in run_page(cfg, r, EngineKind.M))
        assert set(v for v, _ in m_hits) <= set(v for v, _ in by_kind[EngineKind.H64])


def test_page_counts_populated():
    cfg = small_config(CaseId.N, bound=2000, p=101, table_bits=14)
    counts = PageCounts()
    run_page(cfg, 3, EngineKind.H64B, counts_out=counts)
    assert counts.reads > 0 and counts.writes > 0
    assert counts.probe_total >= counts.hits


@pytest.mark.parametrize("case", [CaseId.N, CaseId.S])
@pytest.mark.parametrize("p", [101, 1009])
def test_write_store_equals_page_enumeration(case, p):
    cfg = SearchConfig(bound=3000, case=case, page_prime=p, table_bits=14)
    enum = get_enumerator(cfg)
    store = WriteStore(cfg)
    total = store.build()
    seen = 0
    for r in range(0, p, 3):
        assert np.array_equal(np.sort(store.values(r)),
                              np.sort(enum.write_values(r)))
        seen += len(store.values(r))
    assert total == sum(len(enum.write_values(r)) for r in range(p))


def test_write_store_disk_backend(tmp_path):
    cfg = SearchConfig(bound=3000, case=CaseId.S, page_prime=101, table_bits=14)
    store = WriteStore(cfg, directory=str(tmp_path), ram_limit_bytes=0)
    assert store.on_disk
    store.build()
    enum = get_enumerator(cfg)
    for r in (0, 1, 50, 100):
        assert np.array_equal(np.sort(store.values(r)),
                              np.sort(enum.write_values(r)))


@pytest.mark.parametrize("kind", ALL_KINDS)
@pytest.mark.parametrize("case", [CaseId.N, CaseId.S])
def test_run_equals_oracle_small(kind, case):
    cfg = small_config(case, bound=100)
    got = {s.quadruple() for s in run(cfg, kind)}
    want = {s.quadruple() for s in exact_search(100).solutions
            if s.case is case}
    assert got == want


def test_page_independence():
    cfg = small_config(CaseId.N, bound=100)
    whole = {s.quadruple() for s in run(cfg, EngineKind.H64)}
    union = set()
    for r in range(cfg.page_prime):
        hits = run_page(cfg, r, EngineKind.H64)
        from quartsearch.verify import verify_page
        union |= {s.quadruple() for s in verify_page(cfg, r, hits)}
    assert whole == union


def test_checkpoint_roundtrip(tmp_path):
    cp = Checkpoint(config_digest="abcd1234", last_completed_page=17,
                    writes=10, reads=200, hits=3)
    path = str(tmp_path / "cp.txt")
    cp.save(path)
    with open(path) as f:
        lines = f.read().splitlines()
    assert lines[0] == "digest=abcd1234"
    assert lines[1] == "last_completed_page=17"
    assert lines[2] == "writes=10 reads=200 hits=3"
    assert Checkpoint.load(path) == cp


def test_checkpoint_digest_mismatch():
    cfg = small_config(CaseId.N, bound=100)
    bad = Checkpoint(config_digest="ffff")
    with pytest.raises(CheckpointMismatchError):
        run(cfg, EngineKind.H64, bad)
    other = small_config(CaseId.S, bound=100)
    assert config_digest(cfg) != config_digest(other)


def test_resume_equals_uninterrupted(tmp_path):
    cfg = small_config(CaseId.N, bound=500, p=101, table_bits=14)
    full = {s.quadruple() for s in run(cfg, EngineKind.H64B)}

    # interrupt after page q, then resume from a fresh checkpoint
    q = 40
    prefix_cfg = small_config(CaseId.N, bound=500, p=101, table_bits=14,
                              page_range=(0, q))
    prefix = {s.quadruple() for s in run(prefix_cfg, EngineKind.H64B)}
    cp = Checkpoint(config_digest=config_digest(cfg), last_completed_page=q)
    rest = {s.quadruple() for s in run(cfg, EngineKind.H64B, cp)}
    assert cp.last_completed_page == 100
    assert prefix | rest == full


def test_resume_past_end_is_noop():
    cfg = small_config(CaseId.N, bound=100)
    cp = Checkpoint(config_digest=config_digest(cfg), last_completed_page=100)
    assert run(cfg, EngineKind.H64, cp) == []


def test_workers_match_single(tmp_path):
    cfg = small_config(CaseId.N, bound=500, p=101, table_bits=14)
    single = [s.quadruple() for s in run(cfg, EngineKind.H64B)]
    multi = [s.quadruple() for s in run(cfg, EngineKind.H64B, workers=2)]
    assert single == multi


def test_h64b_degenerate_bucket_page_still_succeeds():
    # page 0 holds every x = z pair (value 0); they all share one bucket and
    # exceed its capacity, which must not abort the search
    cfg = small_config(CaseId.N, bound=2000, p=101, table_bits=14,
                       bucket_count_bits=4, bucket_capacity_bits=6)
    counts = PageCounts()
    hits = run_page(cfg, 0, EngineKind.H64B, counts_out=counts)
    assert counts.bucket_fill_max > 1 << cfg.bucket_capacity_bits
    h64 = run_page(cfg, 0, EngineKind.H64)
    assert sorted((h.value64, h.probe_hits) for h in hits) \
        == sorted((h.value64, h.probe_hits) for h in h64)
