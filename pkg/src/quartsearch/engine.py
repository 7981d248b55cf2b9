"""Page loop and the three per-page matching strategies (H64, H64B, M).

A run proceeds page by page: build the set of write-side form values of
page r, then stream the page's read-side values against it.  The three
strategies only differ in the matching mechanism:

  H64   insert/probe a shared hash table directly, in stream order;
  H64B  same table, but values are grouped by their presort-bucket index
        (top bits of the hash) before touching the table;
  M     exact 64-bit sort-and-merge, no hash table.

For production-size runs the write side is not re-derived per page: a
one-time sweep enumerates every admissible write pair, tags it with its
page residue and partitions the (residue, value) records into page-block
buckets (on disk when they would not fit in memory).  Each page then
fetches its values with a slice lookup.
"""

from __future__ import annotations

import hashlib
import logging
import os
import shutil
import tempfile
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

import numpy as np

from . import verify
from .buckets import bucket_indices
from .congruence import CaseId, SearchConfig, PageEnumerator, get_enumerator, _pow4_u64
from .hashtable import HashTable, default_slice_spec, hash_value, control_value

log = logging.getLogger(__name__)

U64 = np.uint64


class EngineKind(Enum):
    H64 = "h64"
    H64B = "h64b"
    M = "merge"


@dataclass
class CandidateHit:
    """A control-value match; only exact recomputation makes it a solution."""

    case: CaseId
    page: int
    value64: int
    read_pair: tuple[int, int] | None
    probe_hits: int


@dataclass
class PageCounts:
    writes: int = 0
    reads: int = 0
    hits: int = 0
    probe_total: int = 0
    bucket_fill_max: int = 0
    bucket_fill_mean: float = 0.0


class CheckpointMismatchError(RuntimeError):
    pass


@dataclass
class Checkpoint:
    config_digest: str
    last_completed_page: int = -1
    writes: int = 0
    reads: int = 0
    hits: int = 0

    def save(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as f:
            f.write(f"digest={self.config_digest}\n")
            f.write(f"last_completed_page={self.last_completed_page}\n")
            f.write(f"writes={self.writes} reads={self.reads} hits={self.hits}\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        with open(path) as f:
            lines = f.read().splitlines()
        digest = lines[0].split("=", 1)[1]
        last = int(lines[1].split("=", 1)[1])
        counters = dict(kv.split("=") for kv in lines[2].split())
        return cls(config_digest=digest, last_completed_page=last,
                   writes=int(counters["writes"]), reads=int(counters["reads"]),
                   hits=int(counters["hits"]))


def config_digest(cfg: SearchConfig) -> str:
    return hashlib.sha256(cfg.canonical_string().encode()).hexdigest()[:16]


def eval_form_mod64(case: CaseId, side: str, pair: tuple[int, int]) -> int:
    """The case's form value reduced mod 2^64 (wrap-around semantics)."""
    mask = (1 << 64) - 1

    def p4(v: int) -> int:
        sq = (v * v) & mask
        return (sq * sq) & mask

    a, b = pair
    if case is CaseId.N:
        if side == "write":      # f_N(x, z) = x^4 - z^4
            return (p4(a) - p4(b)) & mask
        return (4 * p4(b) - 2 * p4(a)) & mask    # g_N(y, w) = 4w^4 - 2y^4
    if side == "write":          # f_S(z, w) = z^4 + 4w^4
        return (p4(a) + 4 * p4(b)) & mask
    return (p4(a) + 2 * p4(b)) & mask            # g_S(x, y) = x^4 + 2y^4


# ---------------------------------------------------------------------------
# Write-side sweep and page-block store
# ---------------------------------------------------------------------------

_STORE_DTYPE = np.dtype([("r", "<u4"), ("val", "<u8")])

# Write-pair density per coordinate-square, used only to size the store.
_WRITE_DENSITY = {
    CaseId.N: 0.25 * (2000 / 625**2) * 0.5 * (112 / 243),
    CaseId.S: 0.25 * (2000 / 625**2),
}


def iter_write_value_chunks(cfg: SearchConfig,
                            chunk_outer: int = 256) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Sweep all admissible write pairs once, yielding (page, value) chunks.

    The union of the yielded records over all chunks covers every page
    exactly; per-page order is not meaningful here.
    """
    enum = get_enumerator(cfg)
    B, p = cfg.bound, cfg.page_prime
    cls_mod = enum.cls_mod
    nz = B // cls_mod + 1
    step = np.arange(nz, dtype=np.int64) * cls_mod
    pow4_p = enum.pow4_p
    filt = cfg.filters_13_17
    n = len(enum.wout)
    for i in range(0, n, chunk_outer):
        sl = slice(i, min(i + chunk_outer, n))
        z = enum.wout_cls[sl][:, :, None] + step          # (c, ncls, nz)
        mask = z <= B
        if cfg.case is CaseId.N:
            mask &= enum.keep81[enum.wout_m81[sl][:, None, None] + z % 81]
            if filt:
                mask &= ~enum.skip13[enum.wout_m13[sl][:, None, None] + z % 13]
        elif filt:
            mask &= ~enum.skip13[(z % 13) * 13 + enum.wout_m13[sl][:, None, None]]
        zf = z[mask]
        if len(zf) == 0:
            continue
        src = np.broadcast_to(np.arange(sl.start, sl.stop)[:, None, None], mask.shape)[mask]
        zp4 = pow4_p[zf % p]
        if cfg.case is CaseId.N:
            r = (enum.wout_p4[src] - zp4) % p             # f_N = x^4 - z^4
            val = enum.wout_val[src] - _pow4_u64(zf)
        else:
            r = (zp4 + enum.wout_p4[src]) % p             # f_S = z^4 + 4w^4
            val = _pow4_u64(zf) + enum.wout_val[src]
        yield r.astype(np.uint32), val


class WriteStore:
    """Page-block partitioned (residue, value64) records for the write side."""

    def __init__(self, cfg: SearchConfig, directory: str | None = None,
                 ram_limit_bytes: int = 192 << 20):
        self.cfg = cfg
        est_pairs = int(_WRITE_DENSITY[cfg.case] * (cfg.bound + 1) ** 2 * 1.2) + 1024
        est_bytes = est_pairs * _STORE_DTYPE.itemsize
        self.on_disk = est_bytes > ram_limit_bytes
        self.dir = directory
        self._own_dir = False
        if self.on_disk and directory is None:
            self.dir = tempfile.mkdtemp(prefix="quartsearch_store_")
            self._own_dir = True
        p = cfg.page_prime
        n_blocks = max(1, min(4096, est_bytes // (48 << 20) + 1))
        self.block_width = -(-p // n_blocks)
        self._ram_blocks: dict[int, list[np.ndarray]] = {}
        self._flush_threshold = 512 << 10
        self._buffered: dict[int, int] = {}
        self._cached_bid = -1
        self._cached: np.ndarray | None = None
        self._built = False

    # -- build ---------------------------------------------------------------

    def build(self, progress_every: int = 0) -> int:
        """Run the sweep; returns the total number of stored records."""
        lo, hi = self.cfg.page_range
        total = 0
        for r, val in iter_write_value_chunks(self.cfg):
            if (lo, hi) != (0, self.cfg.page_prime - 1):
                keep = (r >= lo) & (r <= hi)
                r, val = r[keep], val[keep]
            if len(r) == 0:
                continue
            total += len(r)
            self._add(r, val)
            if progress_every and total // progress_every != (total - len(r)) // progress_every:
                log.info("write sweep: %d pairs stored", total)
        self._flush_all()
        self._built = True
        return total

    def _add(self, r: np.ndarray, val: np.ndarray) -> None:
        bid = r // self.block_width
        order = np.argsort(bid, kind="stable")
        bid_s = bid[order]
        rec = np.empty(len(r), dtype=_STORE_DTYPE)
        rec["r"] = r[order]
        rec["val"] = val[order]
        bounds = np.nonzero(np.diff(bid_s))[0] + 1
        starts = [0] + bounds.tolist()
        ends = bounds.tolist() + [len(r)]
        for s, e in zip(starts, ends):
            b = int(bid_s[s])
            self._ram_blocks.setdefault(b, []).append(rec[s:e])
            if self.on_disk:
                self._buffered[b] = self._buffered.get(b, 0) + (e - s) * rec.itemsize
                if self._buffered[b] >= self._flush_threshold:
                    self._flush_block(b)

    def _block_path(self, bid: int) -> str:
        return os.path.join(self.dir, f"block_{bid:05d}.bin")

    def _flush_block(self, bid: int) -> None:
        parts = self._ram_blocks.pop(bid, [])
        if not parts:
            return
        with open(self._block_path(bid), "ab") as f:
            for part in parts:
                f.write(part.tobytes())
        self._buffered[bid] = 0

    def _flush_all(self) -> None:
        if self.on_disk:
            for bid in list(self._ram_blocks):
                self._flush_block(bid)

    # -- lookup ----------------------------------------------------------------

    def _load_block(self, bid: int) -> np.ndarray:
        if self.on_disk:
            path = self._block_path(bid)
            if not os.path.exists(path):
                return np.empty(0, dtype=_STORE_DTYPE)
            rec = np.fromfile(path, dtype=_STORE_DTYPE)
        else:
            parts = self._ram_blocks.get(bid, [])
            if not parts:
                return np.empty(0, dtype=_STORE_DTYPE)
            rec = np.concatenate(parts)
        order = np.argsort(rec["r"], kind="stable")
        return rec[order]

    def values(self, r: int) -> np.ndarray:
        if not self._built:
            raise RuntimeError("WriteStore.build() must run first")
        bid = r // self.block_width
        if bid != self._cached_bid:
            self._cached = self._load_block(bid)
            self._cached_bid = bid
        rec = self._cached
        lo = np.searchsorted(rec["r"], r, side="left")
        hi = np.searchsorted(rec["r"], r, side="right")
        return rec["val"][lo:hi].copy()

    def cleanup(self) -> None:
        if self.on_disk and self._own_dir and self.dir and os.path.isdir(self.dir):
            shutil.rmtree(self.dir, ignore_errors=True)


# ---------------------------------------------------------------------------
# Per-page strategies
# ---------------------------------------------------------------------------

def _page_hits(cfg: SearchConfig, r: int, kind: EngineKind,
               enum: PageEnumerator, table: HashTable | None,
               write_values: np.ndarray, counts_out: PageCounts | None = None,
               ) -> list[CandidateHit]:
    spec = default_slice_spec(cfg.table_bits)
    ra, rb = enum.read_pairs(r, sort=False)
    rvals = enum.pair_read_values(ra, rb)

    if kind is EngineKind.M:
        wsorted = np.sort(write_values)
        lo = np.searchsorted(wsorted, rvals, side="left")
        hi = np.searchsorted(wsorted, rvals, side="right")
        counts = (hi - lo).astype(np.int64)
    else:
        h_w = hash_value(write_values, spec)
        c_w = control_value(write_values, spec)
        h_r = hash_value(rvals, spec)
        c_r = control_value(rvals, spec)
        if kind is EngineKind.H64B:
            # Group by presort bucket before touching the table; identical
            # to pushing through the auxiliary arrays, minus the copies.
            nb = cfg.bucket_count_bits
            wb = bucket_indices(write_values, spec, nb)
            if len(wb):
                fills = np.bincount(wb, minlength=1 << nb)
                if fills.max() > (1 << cfg.bucket_capacity_bits):
                    # Degenerate page: one bucket cannot hold its share (the
                    # page-0 cluster of equal-value pairs is the known case).
                    # Skipping the presort changes only insertion order, and
                    # linear-probing occupancy and probe counts are
                    # order-independent, so hits are unaffected.
                    log.warning(
                        "page %d: write bucket fill %d exceeds capacity 2^%d; "
                        "presort skipped for this page",
                        r, int(fills.max()), cfg.bucket_capacity_bits)
                else:
                    worder = np.argsort(wb, kind="stable")
                    h_w, c_w = h_w[worder], c_w[worder]
                if counts_out is not None:
                    counts_out.bucket_fill_max = int(fills.max())
                    counts_out.bucket_fill_mean = float(fills.mean())
            table.insert_many(h_w, c_w)
            rorder = np.argsort(bucket_indices(rvals, spec, nb), kind="stable")
            counts = np.zeros(len(rvals), dtype=np.int64)
            counts[rorder] = table.probe_many(h_r[rorder], c_r[rorder])
        else:
            table.insert_many(h_w, c_w)
            counts = table.probe_many(h_r, c_r)
        table.clear()

    sel = np.nonzero(counts > 0)[0]
    hits = [
        CandidateHit(case=cfg.case, page=r, value64=int(rvals[i]),
                     read_pair=(int(ra[i]), int(rb[i])), probe_hits=int(counts[i]))
        for i in sel
    ]
    if counts_out is not None:
        counts_out.writes = len(write_values)
        counts_out.reads = len(rvals)
        counts_out.hits = len(hits)
        counts_out.probe_total = int(counts.sum())
    return hits


def run_page(cfg: SearchConfig, r: int, kind: EngineKind, *,
             table: HashTable | None = None,
             write_values: np.ndarray | None = None,
             counts_out: PageCounts | None = None) -> list[CandidateHit]:
    """Execute writing + reading for one page, returning candidate hits."""
    if not 0 <= r < cfg.page_prime:
        raise ValueError(f"page residue {r} outside [0, {cfg.page_prime})")
    enum = get_enumerator(cfg)
    if write_values is None:
        write_values = enum.write_values(r)
    own_table = table is None and kind is not EngineKind.M
    if own_table:
        table = HashTable(cfg.table_bits)
    return _page_hits(cfg, r, kind, enum, table, write_values, counts_out)


def run(cfg: SearchConfig, kind: EngineKind,
        checkpoint: Checkpoint | None = None, *,
        checkpoint_path: str | None = None,
        store: WriteStore | None = None,
        store_dir: str | None = None,
        progress: Callable[[int, Checkpoint], None] | None = None,
        progress_every: int = 1000,
        workers: int = 1,
        on_solution: Callable[[verify.Solution], None] | None = None,
        ) -> list[verify.Solution]:
    """Search all pages in cfg.page_range, returning verified solutions.

    Resumes after checkpoint.last_completed_page when a checkpoint is given;
    only solutions of pages processed by this call are returned.
    """
    digest = config_digest(cfg)
    if checkpoint is not None and checkpoint.config_digest != digest:
        raise CheckpointMismatchError(
            f"checkpoint digest {checkpoint.config_digest} does not match config {digest}"
        )
    cp = checkpoint or Checkpoint(config_digest=digest)
    lo, hi = cfg.page_range
    start = max(lo, cp.last_completed_page + 1)
    if start > hi:
        return []

    own_store = store is None
    if own_store:
        store = WriteStore(cfg, directory=store_dir)
        log.info("sweeping write pairs (case %s, B=%d, %s store)",
                 cfg.case, cfg.bound, "disk" if store.on_disk else "ram")
        n = store.build(progress_every=5_000_000)
        log.info("write sweep done: %d pairs", n)

    try:
        if workers > 1:
            solutions = _run_parallel(cfg, kind, store, cp, start, hi, workers,
                                      checkpoint_path, progress, on_solution)
        else:
            solutions = _run_span(cfg, kind, store, cp, start, hi, checkpoint_path,
                                  progress, progress_every, on_solution)
    finally:
        if own_store:
            store.cleanup()
    return _normalize(solutions)


def _run_span(cfg, kind, store, cp, start, end, checkpoint_path,
              progress, progress_every, on_solution=None) -> list[verify.Solution]:
    enum = get_enumerator(cfg)
    table = HashTable(cfg.table_bits) if kind is not EngineKind.M else None
    solutions: list[verify.Solution] = []
    counts = PageCounts()
    for r in range(start, end + 1):
        wvals = store.values(r)
        hits = _page_hits(cfg, r, kind, enum, table, wvals, counts)
        if hits:
            sols = verify.verify_page(cfg, r, hits)
            solutions.extend(sols)
            if on_solution is not None:
                for s in sols:
                    on_solution(s)
        cp.last_completed_page = r
        cp.writes += counts.writes
        cp.reads += counts.reads
        cp.hits += counts.hits
        if checkpoint_path is not None:
            Checkpoint.save(cp, checkpoint_path)
        if progress is not None and (r - start) % progress_every == 0:
            progress(r, cp)
    return solutions


def _run_parallel(cfg, kind, store, cp, start, end, workers,
                  checkpoint_path, progress, on_solution=None) -> list[verify.Solution]:
    import multiprocessing as mp

    spans = []
    chunk = max(64, (end - start + 1) // (workers * 8) + 1)
    r = start
    while r <= end:
        spans.append((r, min(r + chunk - 1, end)))
        r += chunk
    ctx = mp.get_context("fork")
    solutions: list[verify.Solution] = []
    with ctx.Pool(workers) as pool:
        args = [(cfg, kind, store, s, e) for s, e in spans]
        for (s, e), (sols, counters) in zip(spans, pool.imap(_span_worker, args)):
            solutions.extend(sols)
            if on_solution is not None:
                for sol in sols:
                    on_solution(sol)
            cp.last_completed_page = e
            cp.writes += counters[0]
            cp.reads += counters[1]
            cp.hits += counters[2]
            if checkpoint_path is not None:
                Checkpoint.save(cp, checkpoint_path)
            if progress is not None:
                progress(e, cp)
    return solutions


def _span_worker(args):
    cfg, kind, store, s, e = args
    sub = Checkpoint(config_digest="")
    sols = _run_span(cfg, kind, store, sub, s, e, None, None, 0)
    return sols, (sub.writes, sub.reads, sub.hits)


def _normalize(solutions: list[verify.Solution]) -> list[verify.Solution]:
    seen = {}
    for s in solutions:
        seen[(s.case.value, s.x, s.y, s.z, s.w)] = s
    return [seen[k] for k in sorted(seen)]
