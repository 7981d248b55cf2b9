"""Exact post-processing of candidate hits into verified primitive solutions.

A hit only certifies that a read value's control bits matched some stored
write value's control bits inside one probe cluster.  Everything here is
recomputed with exact Python integers: the page's write pairs are
re-enumerated, matched against the hit's full 64-bit value and then checked
against the defining equation x^4 + 2y^4 = z^4 + 4w^4 without any modular
reduction.  Only primitive quadruples (gcd 1) survive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .congruence import CaseId, SearchConfig, get_enumerator


@dataclass(frozen=True, order=True)
class Solution:
    """A verified primitive solution of x^4 + 2y^4 = z^4 + 4w^4."""

    case: CaseId
    x: int
    y: int
    z: int
    w: int
    page: int = -1   # residue of the common value; -1 when not tracked

    @property
    def common_value(self) -> int:
        return self.x**4 + 2 * self.y**4

    def line(self) -> str:
        return f"{self.case.value} {self.x} {self.y} {self.z} {self.w}"

    @classmethod
    def from_line(cls, line: str) -> "Solution":
        case, x, y, z, w = line.split()
        return cls(CaseId(case), int(x), int(y), int(z), int(w))

    def sort_key(self) -> tuple:
        return (self.case.value, self.x, self.y)

    def quadruple(self) -> tuple[int, int, int, int]:
        return (self.x, self.y, self.z, self.w)


def eval_exact(case: CaseId, side: str, pair: tuple[int, int]) -> int:
    """Exact form value of a pair; negative values are possible for reads."""
    a, b = pair
    if case is CaseId.N:
        if side == "write":
            return a**4 - b**4              # f_N(x, z)
        return 4 * b**4 - 2 * a**4          # g_N(y, w)
    if side == "write":
        return a**4 + 4 * b**4              # f_S(z, w)
    return a**4 + 2 * b**4                  # g_S(x, y)


def eval_residual(x: int, y: int, z: int, w: int) -> int:
    """x^4 + 2y^4 - z^4 - 4w^4 with exact integer arithmetic."""
    return x**4 + 2 * y**4 - z**4 - 4 * w**4


def is_primitive(x: int, y: int, z: int, w: int) -> bool:
    g = math.gcd(math.gcd(x, y), math.gcd(z, w))
    if g == 0:
        raise ValueError("the zero quadruple has no gcd")
    return g == 1


def _quadruple(case: CaseId, wpair: tuple[int, int], rpair: tuple[int, int]
               ) -> tuple[int, int, int, int]:
    if case is CaseId.N:
        (x, z), (y, w) = wpair, rpair
    else:
        (z, w), (x, y) = wpair, rpair
    return x, y, z, w


def verify_page(cfg: SearchConfig, r: int, hits: Iterable) -> list[Solution]:
    """Exact-check each hit against a re-enumeration of the page's write pairs.

    Every returned solution satisfies the equation exactly, is primitive,
    and both of its pairs belong to page r.
    """
    hits = list(hits)
    if not hits:
        return []
    enum = get_enumerator(cfg)
    wa, wb = enum.write_pairs(r)
    wvals = enum.pair_write_values(wa, wb)
    order = np.argsort(wvals, kind="stable")
    wvals_sorted = wvals[order]

    wside, rside = "write", "read"
    out: list[Solution] = []
    for hit in hits:
        exact_read = eval_exact(cfg.case, rside, hit.read_pair)
        v = np.uint64(hit.value64)
        lo = int(np.searchsorted(wvals_sorted, v, side="left"))
        hi = int(np.searchsorted(wvals_sorted, v, side="right"))
        for j in order[lo:hi]:
            wpair = (int(wa[j]), int(wb[j]))
            if eval_exact(cfg.case, wside, wpair) != exact_read:
                continue  # 64-bit aliasing, not a real match
            x, y, z, w = _quadruple(cfg.case, wpair, hit.read_pair)
            if not is_primitive(x, y, z, w):
                continue
            assert eval_residual(x, y, z, w) == 0
            assert hit.probe_hits >= 1 and hit.page == r
            out.append(Solution(cfg.case, x, y, z, w, page=r))
    uniq = {s.quadruple(): s for s in out}
    return sorted(uniq.values(), key=Solution.sort_key)
