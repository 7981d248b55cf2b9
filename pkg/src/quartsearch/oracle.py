"""Independent reference implementations used to cross-check the engine.

Nothing here shares sieve or paging code with the search path: the oracles
enumerate coordinates directly and evaluate the equation exactly, so a bug
in the congruence tables or the hash machinery cannot hide in both.

Also houses the residue-claims report: the exhaustively checkable modular
facts that every sieve rule rests on (fourth roots mod 625, admissible-pair
counts, spectrum gaps mod 13/17, full spectra at other small primes, and
the mod-81 divisibility implication behind the 131/243 write filter).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .congruence import (
    CaseId,
    ROOTS_OF_MINUS4_625,
    ROOTS_OF_UNITY_625,
    SKIP_MOD13_N_WRITE,
    SKIP_MOD13_S_WRITE,
    SKIP_MOD17_READ,
    _keep81_N,
    build_root_table,
    count_admissible_mod625,
    residue_spectrum,
)
from .verify import Solution, eval_residual, is_primitive

EXACT_SEARCH_MAX_BOUND = 10_000   # rhs table is (B+1)^2 int64: ~0.8 GB at the cap
QUADRUPLE_SCAN_MAX_BOUND = 60

FULL_SPECTRUM_PRIMES = (3, 7, 11, 19, 23, 29, 31, 37, 41)


@dataclass(frozen=True)
class OracleResult:
    bound: int
    solutions: tuple[Solution, ...]

    def quadruples(self) -> set[tuple[int, int, int, int]]:
        return {s.quadruple() for s in self.solutions}


def classify_case(x: int, y: int, z: int, w: int) -> CaseId:
    """Case of a primitive solution from the mod-5 divisibility pattern."""
    if w % 5 == 0 and x % 5 != 0 and z % 5 != 0:
        return CaseId.N
    if x % 5 == 0 and z % 5 != 0 and w % 5 != 0:
        return CaseId.S
    raise ValueError(f"({x},{y},{z},{w}) fits neither divisibility case; "
                     "this contradicts the mod-5 analysis")


def exact_search(bound: int) -> OracleResult:
    """All primitive non-negative solutions with coordinates <= bound.

    Sorted-array join on exact int64 values; no congruence sieves, no
    paging, no hashing.  Memory grows as (bound+1)^2.
    """
    if not 1 <= bound <= EXACT_SEARCH_MAX_BOUND:
        raise ValueError(f"bound must be in [1, {EXACT_SEARCH_MAX_BOUND}]")
    n = bound + 1
    c = np.arange(n, dtype=np.int64)
    p4 = c * c * c * c
    rhs = (p4[:, None] + 4 * p4[None, :]).ravel()        # z^4 + 4w^4
    order = np.argsort(rhs, kind="stable")
    rhs_sorted = rhs[order]
    del rhs

    found: set[Solution] = set()
    for x in range(n):
        lhs = p4[x] + 2 * p4                              # x^4 + 2y^4 over all y
        lo = np.searchsorted(rhs_sorted, lhs, side="left")
        hi = np.searchsorted(rhs_sorted, lhs, side="right")
        for y in np.nonzero(hi > lo)[0]:
            for idx in order[lo[y]:hi[y]]:
                z, w = int(idx) // n, int(idx) % n
                if (x, int(y), z, w) == (0, 0, 0, 0):
                    continue
                assert eval_residual(x, int(y), z, w) == 0
                if is_primitive(x, int(y), z, w):
                    found.add(Solution(classify_case(x, int(y), z, w),
                                       x, int(y), z, w))
    return OracleResult(bound, tuple(sorted(found, key=Solution.sort_key)))


def quadruple_scan(bound: int) -> OracleResult:
    """Brute-force 4D scan; independent of exact_search's join logic."""
    if not 1 <= bound <= QUADRUPLE_SCAN_MAX_BOUND:
        raise ValueError(f"bound must be in [1, {QUADRUPLE_SCAN_MAX_BOUND}]")
    n = bound + 1
    c = np.arange(n, dtype=np.int64)
    p4 = c * c * c * c
    res = (p4[:, None, None, None] + 2 * p4[None, :, None, None]
           - p4[None, None, :, None] - 4 * p4[None, None, None, :])
    sols = []
    for x, y, z, w in zip(*np.nonzero(res == 0)):
        q = (int(x), int(y), int(z), int(w))
        if q == (0, 0, 0, 0) or not is_primitive(*q):
            continue
        sols.append(Solution(classify_case(*q), *q))
    return OracleResult(bound, tuple(sorted(set(sols), key=Solution.sort_key)))


# ---------------------------------------------------------------------------
# Residue-claims report
# ---------------------------------------------------------------------------

@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class ResidueClaimsReport:
    results: list[ClaimResult]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results)

    def text(self) -> str:
        return "\n".join(r.line() for r in self.results)


def _p4_mod(a: int, m: int) -> int:
    return pow(a, 4, m)


def _mod81_implication(ca: int, cb: int) -> tuple[bool, str]:
    """Check: for (a,b) not both divisible by 3, 3 | ca*a^4+cb*b^4 ⇒ 81 | it."""
    bad = []
    for a in range(81):
        for b in range(81):
            if a % 3 == 0 and b % 3 == 0:
                continue
            v = (ca * _p4_mod(a, 81) + cb * _p4_mod(b, 81)) % 81
            if v % 3 == 0 and v != 0:
                bad.append((a, b, v))
    return not bad, f"{len(bad)} violations" if bad else "holds on all of (Z/81)^2"


def verify_residue_claims() -> ResidueClaimsReport:
    """Exhaustively check every modular fact the sieves depend on."""
    results: list[ClaimResult] = []

    def check(name: str, passed: bool, detail: str) -> None:
        results.append(ClaimResult(name, passed, detail))

    rt = build_root_table(625)
    r1 = tuple(sorted(rt.root_list(1)))
    r4 = tuple(sorted(rt.root_list((-4) % 625)))
    check("fourth roots of 1 mod 625", r1 == ROOTS_OF_UNITY_625, f"{r1}")
    check("fourth roots of -4 mod 625", r4 == ROOTS_OF_MINUS4_625, f"{r4}")

    for case in CaseId:
        cnt = count_admissible_mod625(case)
        check(f"admissible mod-625 pairs, case {case}", cnt == 2000,
              f"{cnt} (expected 4*phi(625)/... = 2000)")

    spec17_w = residue_spectrum("fN", 17) | residue_spectrum("fS", 17)
    gap17 = set(range(17)) - spec17_w
    check("mod-17 spectrum gap of f_N, f_S", gap17 == set(SKIP_MOD17_READ),
          f"missing classes {sorted(gap17)}")
    gap13_n = set(range(13)) - residue_spectrum("gN", 13)
    check("mod-13 spectrum gap of g_N", gap13_n == set(SKIP_MOD13_N_WRITE),
          f"missing classes {sorted(gap13_n)}")
    gap13_s = set(range(13)) - residue_spectrum("gS", 13)
    check("mod-13 spectrum gap of g_S", gap13_s == set(SKIP_MOD13_S_WRITE),
          f"missing classes {sorted(gap13_s)}")

    for p in FULL_SPECTRUM_PRIMES:
        full = all(len(residue_spectrum(f, p)) == p for f in ("fN", "gN", "fS", "gS"))
        check(f"full spectra of all four forms mod {p}", full,
              "every residue attained" if full else "gap found")

    ok_n, d_n = _mod81_implication(-2, 4)     # g_N(y, w) = 4w^4 - 2y^4
    check("mod-81 implication for g_N (3|g ⇒ 81|g)", ok_n, d_n)
    ok_s, d_s = _mod81_implication(1, 4)      # f_S(z, w) = z^4 + 4w^4
    check("mod-81 implication for f_S (3|f ⇒ 81|f)", ok_s, d_s)

    # The write-keep rule's exact removal rate over uniform residues mod 81.
    keep = _keep81_N()
    removed = 1 - keep.mean()
    expected = 131 / 243
    check("mod-81 write filter removal fraction", math.isclose(removed, expected),
          f"{removed:.6f} vs 131/243 = {expected:.6f}")

    return ResidueClaimsReport(results)
