"""Partial-presorting buffers: fixed arrays keyed by the top bits of the hash.

Values headed for (or probed against) the hash table are first appended to
one of 2^nb auxiliary arrays selected by the top nb bits of their hash
value.  Draining one bucket then touches only a contiguous 1/2^nb slice of
the table, which is what makes the bucketed engine cache-friendly at scale.

Write-side overflow is a fatal configuration error; read-side overflow
flushes the affected bucket mid-stream and continues.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .hashtable import HashTable, SliceSpec, control_value, hash_value

HitSink = Callable[[int, int], None]   # (value64, hit_count)


class BucketOverflowError(RuntimeError):
    """A write-side bucket ran out of space; the run must abort."""


def bucket_index(v: int, spec: SliceSpec, count_bits: int) -> int:
    """Top `count_bits` bits of the hash value."""
    if count_bits > spec.h_bits:
        raise ValueError("bucket index wider than the hash value")
    return hash_value(v, spec) >> (spec.h_bits - count_bits)


def bucket_indices(v: np.ndarray, spec: SliceSpec, count_bits: int) -> np.ndarray:
    return hash_value(v, spec) >> np.int64(spec.h_bits - count_bits)


class BucketSet:
    """2^count_bits unordered arrays of 64-bit values, fixed capacity each."""

    def __init__(self, spec: SliceSpec, count_bits: int = 10, capacity_bits: int = 17):
        self.spec = spec
        self.count_bits = count_bits
        self.capacity = 1 << capacity_bits
        self.n_buckets = 1 << count_bits
        self.arrays = np.zeros((self.n_buckets, self.capacity), dtype=np.uint64)
        self.fill = np.zeros(self.n_buckets, dtype=np.int64)

    def push_write(self, v: int) -> None:
        i = bucket_index(v, self.spec, self.count_bits)
        f = self.fill[i]
        if f >= self.capacity:
            raise BucketOverflowError(
                f"write bucket {i} overflowed (capacity {self.capacity}); "
                "raise bucket_capacity_bits or use a larger page prime"
            )
        self.arrays[i, f] = v
        self.fill[i] = f + 1

    def drain_writes(self, table: HashTable) -> None:
        """Store every buffered value into the table, bucket by bucket."""
        for i in range(self.n_buckets):
            f = int(self.fill[i])
            if f == 0:
                continue
            vals = self.arrays[i, :f]
            table.insert_many(hash_value(vals, self.spec), control_value(vals, self.spec))
        self.fill[:] = 0

    def push_read(self, v: int, table: HashTable, sink: HitSink) -> None:
        """Buffer a lookup; on a full bucket, flush it first, then buffer."""
        i = bucket_index(v, self.spec, self.count_bits)
        if self.fill[i] >= self.capacity:
            self.flush_bucket(i, table, sink)
        f = self.fill[i]
        self.arrays[i, f] = v
        self.fill[i] = f + 1

    def flush_bucket(self, i: int, table: HashTable, sink: HitSink) -> None:
        """Probe every buffered value of bucket i in order, then empty it."""
        f = int(self.fill[i])
        if f:
            vals = self.arrays[i, :f]
            counts = table.probe_many(hash_value(vals, self.spec),
                                      control_value(vals, self.spec))
            for v, n in zip(vals.tolist(), counts.tolist()):
                if n > 0:
                    sink(v, n)
        self.fill[i] = 0

    def flush_all(self, table: HashTable, sink: HitSink) -> None:
        for i in range(self.n_buckets):
            self.flush_bucket(i, table, sink)
