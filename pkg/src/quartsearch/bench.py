"""Measurement harness: per-page volume counters and engine throughput.

Counters (writes, reads, hits, probe totals) are deterministic and
hardware-independent; they back the read/write volume ratios.  Timings and
speed ratios vary with the cache hierarchy and are reported, never asserted.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass, field

import numpy as np

from .congruence import SearchConfig, get_enumerator
from .engine import EngineKind, PageCounts, _page_hits
from .hashtable import HashTable

CSV_HEADER = ("page,writes,reads,hits,probe_total,"
              "write_ms,read_ms,bucket_fill_max,bucket_fill_mean")


@dataclass
class PageMetrics:
    page: int
    writes: int
    reads: int
    hits: int
    probe_total: int
    write_ms: float
    read_ms: float
    bucket_fill_max: int
    bucket_fill_mean: float

    def csv_row(self) -> str:
        return (f"{self.page},{self.writes},{self.reads},{self.hits},"
                f"{self.probe_total},{self.write_ms:.3f},{self.read_ms:.3f},"
                f"{self.bucket_fill_max},{self.bucket_fill_mean:.2f}")


def sample_pages(cfg: SearchConfig, n: int, seed: int = 0) -> list[int]:
    """n distinct page residues drawn uniformly from cfg.page_range."""
    lo, hi = cfg.page_range
    rng = np.random.default_rng(seed)
    n = min(n, hi - lo + 1)
    return sorted(int(r) for r in rng.choice(hi - lo + 1, size=n, replace=False) + lo)


def measure_pages(cfg: SearchConfig, kind: EngineKind,
                  sample: list[int]) -> list[PageMetrics]:
    """Run each sampled page under the given engine kind, collecting metrics.

    The write phase covers pair enumeration plus table/bucket population;
    the read phase covers read enumeration, probing and hit collection.
    """
    p = cfg.page_prime
    if any(not 0 <= r < p for r in sample):
        raise ValueError(f"sampled pages must lie in [0, {p})")
    enum = get_enumerator(cfg)
    table = HashTable(cfg.table_bits) if kind is not EngineKind.M else None
    out: list[PageMetrics] = []
    for r in sample:
        t0 = time.perf_counter()
        wvals = enum.write_values(r)
        t1 = time.perf_counter()
        counts = PageCounts()
        _page_hits(cfg, r, kind, enum, table, wvals, counts)
        t2 = time.perf_counter()
        out.append(PageMetrics(
            page=r, writes=counts.writes, reads=counts.reads, hits=counts.hits,
            probe_total=counts.probe_total,
            write_ms=(t1 - t0) * 1e3, read_ms=(t2 - t1) * 1e3,
            bucket_fill_max=counts.bucket_fill_max,
            bucket_fill_mean=counts.bucket_fill_mean,
        ))
    return out


def read_write_ratio(metrics: list[PageMetrics]) -> float:
    """mean(reads) / mean(writes) over the sample."""
    total_w = sum(m.writes for m in metrics)
    total_r = sum(m.reads for m in metrics)
    if total_w == 0:
        raise ValueError("sample contains no write pairs")
    return total_r / total_w


def metrics_csv(metrics: list[PageMetrics]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for m in metrics:
        buf.write(m.csv_row() + "\n")
    return buf.getvalue()


@dataclass
class EngineComparison:
    cfg: SearchConfig
    sample: list[int]
    pairs_per_second: dict[EngineKind, float]
    hits: dict[EngineKind, list[tuple[int, int]]] = field(repr=False, default=None)

    def ratio(self, a: EngineKind, b: EngineKind) -> float:
        return self.pairs_per_second[a] / self.pairs_per_second[b]

    def text(self) -> str:
        lines = ["engine,pairs_per_second"]
        for kind, pps in self.pairs_per_second.items():
            lines.append(f"{kind.value},{pps:.0f}")
        lines.append(f"# H64B/H64 throughput ratio: {self.ratio(EngineKind.H64B, EngineKind.H64):.2f}"
                     " (reference point from 2005-era caches: ~3x)")
        lines.append(f"# H64/M throughput ratio:  {self.ratio(EngineKind.H64, EngineKind.M):.2f}"
                     " (reference point: ~3x)")
        lines.append("# ratios are hardware-dependent and reported for comparison only")
        return "\n".join(lines)


def compare_engines(cfg: SearchConfig, sample: list[int]) -> EngineComparison:
    """Throughput of all three engine kinds over the same pages.

    Asserts that all kinds produce identical candidate hit multisets;
    speeds are reported without thresholds.
    """
    enum = get_enumerator(cfg)
    pps: dict[EngineKind, float] = {}
    hit_sets: dict[EngineKind, list[tuple[int, int]]] = {}
    for kind in (EngineKind.H64, EngineKind.H64B, EngineKind.M):
        table = HashTable(cfg.table_bits) if kind is not EngineKind.M else None
        pairs = 0
        hits: list[tuple[int, int]] = []
        t0 = time.perf_counter()
        for r in sample:
            wvals = enum.write_values(r)
            counts = PageCounts()
            page_hits = _page_hits(cfg, r, kind, enum, table, wvals, counts)
            pairs += counts.writes + counts.reads
            hits.extend((h.value64, h.probe_hits) for h in page_hits)
        dt = time.perf_counter() - t0
        pps[kind] = pairs / dt if dt > 0 else float("inf")
        hit_sets[kind] = sorted(hits)
    assert hit_sets[EngineKind.H64] == hit_sets[EngineKind.H64B], \
        "bucketed engine diverged from the direct one"
    # M joins on full 64-bit values, so its hits are a subset of the
    # control-value hits; the verified solutions must still agree.
    return EngineComparison(cfg=cfg, sample=list(sample),
                            pairs_per_second=pps, hits=hit_sets)
