"""Open-addressing hash table with linear probing over bit-sliced 64-bit values.

A stored record is nothing but a 31-bit control value; the k-bit hash value
only chooses the starting slot.  The all-ones 32-bit pattern marks an empty
slot, so control values never collide with it.  Per-page lifecycle is
build -> read -> clear; there is no deletion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

EMPTY = np.uint32(0xFFFFFFFF)


class TableFullError(RuntimeError):
    """Raised when an insert would push occupancy past the load limit."""


@dataclass(frozen=True)
class SliceSpec:
    """Which bits of a 64-bit value feed the hash (h) and control (c) slices."""

    h_low_bit: int
    h_bits: int
    c_low_bit: int = 31
    c_bits: int = 31

    def __post_init__(self) -> None:
        h_range = range(self.h_low_bit, self.h_low_bit + self.h_bits)
        c_range = range(self.c_low_bit, self.c_low_bit + self.c_bits)
        if h_range.start < 4 or c_range.start < 4:
            raise ValueError("bits 0-3 must not be selected (constant per case)")
        if h_range.stop > 64 or c_range.stop > 64:
            raise ValueError("bit slices must lie within [4, 64)")
        if set(h_range) & set(c_range):
            raise ValueError("hash and control slices must be disjoint")


def default_slice_spec(k: int) -> SliceSpec:
    """h = bits [4, 4+k), c = bits [31, 62).  Valid for k <= 27."""
    if not 1 <= k <= 27:
        raise ValueError("default slice layout supports k in [1, 27]")
    return SliceSpec(h_low_bit=4, h_bits=k, c_low_bit=31, c_bits=31)


def hash_value(v, spec: SliceSpec):
    """Extract the k-bit hash slice; works on ints and uint64 arrays."""
    if isinstance(v, np.ndarray):
        return ((v >> np.uint64(spec.h_low_bit))
                & np.uint64((1 << spec.h_bits) - 1)).astype(np.int64)
    return (int(v) >> spec.h_low_bit) & ((1 << spec.h_bits) - 1)


def control_value(v, spec: SliceSpec):
    """Extract the 31-bit control slice; works on ints and uint64 arrays."""
    if isinstance(v, np.ndarray):
        return ((v >> np.uint64(spec.c_low_bit))
                & np.uint64((1 << spec.c_bits) - 1)).astype(np.uint32)
    return (int(v) >> spec.c_low_bit) & ((1 << spec.c_bits) - 1)


@njit(cache=True)
def _insert_kernel(slots, hs, cs, occupied, limit, touched):  # pragma: no cover
    n = hs.shape[0]
    size = slots.shape[0]
    mask = size - 1
    for i in range(n):
        if occupied >= limit:
            return -1
        j = hs[i]
        while slots[j] != EMPTY:
            j = (j + 1) & mask
        slots[j] = cs[i]
        touched[i] = j
        occupied += 1
    return occupied


@njit(cache=True)
def _probe_kernel(slots, hs, cs, sel, out):  # pragma: no cover
    size = slots.shape[0]
    mask = size - 1
    for t in range(sel.shape[0]):
        i = sel[t]
        j = hs[i]
        hits = 0
        while slots[j] != EMPTY:
            if slots[j] == cs[i]:
                hits += 1
            j = (j + 1) & mask
        out[i] = hits


class HashTable:
    """2^k slots of uint32, linear forward probing, multiset semantics."""

    def __init__(self, k: int):
        if not 1 <= k <= 30:
            raise ValueError("table exponent k must be in [1, 30]")
        self.k = k
        self.size = 1 << k
        self.slots = np.full(self.size, EMPTY, dtype=np.uint32)
        self.occupied = 0
        self.load_limit = 7 * self.size // 8
        self._touched: list[np.ndarray] = []

    # -- bulk operations (the hot path) -------------------------------------

    def insert_many(self, hs: np.ndarray, cs: np.ndarray) -> None:
        hs = np.ascontiguousarray(hs, dtype=np.int64)
        cs = np.ascontiguousarray(cs, dtype=np.uint32)
        touched = np.empty(len(hs), dtype=np.int64)
        occ = _insert_kernel(self.slots, hs, cs, self.occupied, self.load_limit, touched)
        if occ < 0:
            raise TableFullError(
                f"hash table load limit {self.load_limit} reached at 2^{self.k} slots; "
                "raise table_bits or use a larger page prime"
            )
        self.occupied = int(occ)
        if len(touched):
            self._touched.append(touched)

    def probe_many(self, hs: np.ndarray, cs: np.ndarray) -> np.ndarray:
        """Hit counts per (h, c) query; scans from h to the next empty slot."""
        hs = np.ascontiguousarray(hs, dtype=np.int64)
        cs = np.ascontiguousarray(cs, dtype=np.uint32)
        out = np.zeros(len(hs), dtype=np.int64)
        if self.occupied == 0 or len(hs) == 0:
            return out
        first = self.slots[hs]
        sel = np.nonzero(first != EMPTY)[0]
        if len(sel):
            _probe_kernel(self.slots, hs, cs, sel, out)
        return out

    # -- scalar contract operations ------------------------------------------

    def insert(self, h: int, c: int) -> None:
        self.insert_many(np.array([h], dtype=np.int64), np.array([c], dtype=np.uint32))

    def probe(self, h: int, c: int) -> int:
        return int(self.probe_many(np.array([h], dtype=np.int64),
                                   np.array([c], dtype=np.uint32))[0])

    def clear(self) -> None:
        # Resetting only the touched slots beats a 2^k memset when pages are
        # sparse, which is the normal per-page regime.
        total = sum(len(t) for t in self._touched)
        if total * 8 < self.size:
            for t in self._touched:
                self.slots[t] = EMPTY
        else:
            self.slots.fill(EMPTY)
        self._touched.clear()
        self.occupied = 0
