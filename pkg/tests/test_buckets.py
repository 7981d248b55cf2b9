import numpy as np
import pytest

from quartsearch.buckets import (
    BucketOverflowError,
    BucketSet,
    bucket_index,
    bucket_indices,
)
from quartsearch.hashtable import HashTable, control_value, default_slice_spec, hash_value


def test_bucket_index_examples():
    spec = default_slice_spec(27)
    assert bucket_index(0, spec, 10) == 0
    v_top = 1 << (26 + 4)                # hash_value = 2^26 -> bucket 512
    assert bucket_index(v_top, spec, 10) == 512
    v_one = 1 << (17 + 4)                # hash_value = 2^17 -> bucket 1
    assert bucket_index(v_one, spec, 10) == 1
    with pytest.raises(ValueError):
        bucket_index(0, default_slice_spec(8), 10)


def test_push_write_order_and_overflow():
    spec = default_slice_spec(10)
    bs = BucketSet(spec, count_bits=4, capacity_bits=2)
    v = 16                               # hash 1 -> bucket 0
    for _ in range(4):
        bs.push_write(v)
    assert bs.fill[0] == 4
    assert list(bs.arrays[0, :4]) == [v] * 4
    with pytest.raises(BucketOverflowError):
        bs.push_write(v)


def test_fresh_bucketset_empty():
    bs = BucketSet(default_slice_spec(10), count_bits=4, capacity_bits=4)
    assert int(bs.fill.sum()) == 0


def _random_values(rng, n):
    return rng.integers(0, 2**63, size=n, dtype=np.uint64) << np.uint64(1)


def test_drain_writes_equals_direct_inserts(rng):
    spec = default_slice_spec(10)
    vals = _random_values(rng, 400)
    bs = BucketSet(spec, count_bits=4, capacity_bits=6)
    t_bucketed, t_direct = HashTable(10), HashTable(10)
    for v in vals.tolist():
        bs.push_write(v)
    bs.drain_writes(t_bucketed)
    assert int(bs.fill.sum()) == 0
    t_direct.insert_many(hash_value(vals, spec), control_value(vals, spec))
    assert t_bucketed.occupied == t_direct.occupied == len(vals)
    # probe-equivalent for every inserted value
    hs, cs = hash_value(vals, spec), control_value(vals, spec)
    assert np.array_equal(t_bucketed.probe_many(hs, cs), t_direct.probe_many(hs, cs))


def test_push_read_flushes_full_bucket(rng):
    spec = default_slice_spec(10)
    cap_bits = 3
    bs = BucketSet(spec, count_bits=4, capacity_bits=cap_bits)
    table = HashTable(10)
    v = 16                               # bucket 0 throughout
    table.insert(hash_value(v, spec), control_value(v, spec))
    hits = []
    for _ in range(1 << cap_bits):
        bs.push_read(v, table, hits.append)
    assert not hits                      # deferral: no probing yet
    bs.push_read(v, table, lambda val, n: hits.append((val, n)))
    assert hits == [(v, 1)] * (1 << cap_bits)
    assert bs.fill[0] == 1               # overflowing value buffered after flush


def test_end_to_end_equivalence_with_direct(rng):
    """Bucketed write+read pipeline reports the same hit multiset as H64."""
    spec = default_slice_spec(8)
    writes = _random_values(rng, 150)
    reads = np.concatenate([_random_values(rng, 300), writes[:40]])
    rng.shuffle(reads)

    t_direct = HashTable(8)
    t_direct.insert_many(hash_value(writes, spec), control_value(writes, spec))
    counts = t_direct.probe_many(hash_value(reads, spec), control_value(reads, spec))
    direct_hits = sorted((int(v), int(n))
                         for v, n in zip(reads, counts) if n > 0)

    t = HashTable(8)
    bs = BucketSet(spec, count_bits=3, capacity_bits=6)
    for v in writes.tolist():
        bs.push_write(v)
    bs.drain_writes(t)
    bucketed_hits = []
    sink = lambda v, n: bucketed_hits.append((v, n))
    for v in reads.tolist():
        bs.push_read(v, t, sink)
    bs.flush_all(t, sink)
    assert sorted(bucketed_hits) == direct_hits


def test_flush_all_empties_everything(rng):
    spec = default_slice_spec(10)
    bs = BucketSet(spec, count_bits=4, capacity_bits=6)
    table = HashTable(10)
    for v in _random_values(rng, 100).tolist():
        bs.push_read(v, table, lambda *_: None)
    bs.flush_all(table, lambda *_: None)
    assert int(bs.fill.sum()) == 0


def test_bucket_residency(rng):
    spec = default_slice_spec(10)
    bs = BucketSet(spec, count_bits=4, capacity_bits=6)
    vals = _random_values(rng, 200)
    for v in vals.tolist():
        bs.push_write(v)
    for i in range(bs.n_buckets):
        stored = bs.arrays[i, : bs.fill[i]]
        assert np.all(bucket_indices(stored, spec, 4) == i)
