"""Modular sieves and admissible-pair enumeration for x^4 + 2y^4 = z^4 + 4w^4.

Every primitive solution falls into exactly one of two cases decided mod 5:

  case N (5 | w):  write pairs (x, z) with f_N = x^4 - z^4,
                   read pairs (y, w) with g_N = 4w^4 - 2y^4.
  case S (5 | x):  write pairs (z, w) with f_S = z^4 + 4w^4,
                   read pairs (x, y) with g_S = x^4 + 2y^4.

The write side is shrunk aggressively by congruences mod 625, 8 and 81; the
read side carries the mod-10 divisibilities (and, in case S, a mod-81 skip
rule).  The search space is partitioned into pages by a page prime p: page r
holds the pairs whose form value is congruent to r mod p.

This module owns all residue tables and provides two enumeration flavours:
a per-page vectorised path (`PageEnumerator`) used by the engine, verifier
and benchmarks, and generator wrappers yielding `AdmissiblePair` records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

ROOT_TABLE_MAX_MODULUS = 1 << 24
SPECTRUM_MAX_MODULUS = 10_000

# Fourth roots of 1 and of -4 modulo 625; the backbone of both cases'
# mod-625 write sieves (z = rho * partner mod 625).
ROOTS_OF_UNITY_625 = (1, 182, 443, 624)
ROOTS_OF_MINUS4_625 = (181, 183, 442, 444)

# Residue classes provably unreachable by the opposite side (optional filters).
SKIP_MOD13_N_WRITE = frozenset({1, 3, 9})     # values g_N never takes mod 13
SKIP_MOD13_S_WRITE = frozenset({4, 10, 12})   # values g_S never takes mod 13
SKIP_MOD17_READ = frozenset({6, 7, 10, 11})   # values f_N/f_S never take mod 17


class CaseId(Enum):
    """The two exclusive divisibility cases of a primitive solution."""

    N = "N"  # 5 | w, 5 does not divide x or z
    S = "S"  # 5 | x, 5 does not divide z or w

    def __str__(self) -> str:
        return self.value


class PairRole(Enum):
    WRITE_N = "write_n"  # (x, z)
    READ_N = "read_n"    # (y, w)
    WRITE_S = "write_s"  # (z, w)
    READ_S = "read_s"    # (x, y)


class AdmissiblePair(NamedTuple):
    a: int
    b: int
    role: PairRole


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class SearchConfig:
    """Everything a search run needs: bound, case, page prime and sizing."""

    bound: int
    case: CaseId
    page_prime: int = 200_003
    table_bits: int = 27
    bucket_count_bits: int = 10
    bucket_capacity_bits: int = 17
    filters_13_17: bool = False
    page_range: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be >= 1")
        p = self.page_prime
        if p in (2, 3, 5) or not is_probable_prime(p):
            raise ValueError(f"page prime must be an odd prime not in {{2,3,5}}, got {p}")
        if p >= ROOT_TABLE_MAX_MODULUS:
            raise ValueError(f"page prime {p} too large for in-memory root tables")
        if not 10 <= self.table_bits <= 27:
            # The default bit layout (h in [4, 4+k), c in [31, 62)) only
            # stretches to k = 27; larger tables would need a custom slice.
            raise ValueError("table_bits must be in [10, 27]")
        if self.page_range is None:
            object.__setattr__(self, "page_range", (0, p - 1))
        lo, hi = self.page_range
        if not (0 <= lo <= hi <= p - 1):
            raise ValueError(f"page_range {self.page_range} not within [0, {p - 1}]")

    def pages(self) -> range:
        lo, hi = self.page_range
        return range(lo, hi + 1)

    def canonical_string(self) -> str:
        return (
            f"case={self.case.value} bound={self.bound} page_prime={self.page_prime} "
            f"table_bits={self.table_bits} bucket_count_bits={self.bucket_count_bits} "
            f"bucket_capacity_bits={self.bucket_capacity_bits} "
            f"filters_13_17={int(self.filters_13_17)} "
            f"pages={self.page_range[0]}..{self.page_range[1]}"
        )


def pow4_mod(a: int, m: int) -> int:
    """a^4 mod m without intermediate overflow."""
    if m < 1:
        raise ValueError("modulus must be positive")
    return pow(a, 4, m)


def _pow4_table(m: int) -> np.ndarray:
    """Array of a^4 mod m for a in [0, m).  Requires m <= 2^24 (int64-safe)."""
    a = np.arange(m, dtype=np.int64)
    sq = (a * a) % m
    return (sq * sq) % m


@dataclass
class RootTable:
    """Fourth-root lookup for a fixed modulus: roots(a) = {t : t^4 = a mod m}."""

    modulus: int
    pow4: np.ndarray
    roots: dict[int, list[int]]

    _matrix: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def root_list(self, a: int) -> list[int]:
        return self.roots.get(a % self.modulus, [])

    def root_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense form: (counts uint8[m], mat int64[max_roots, m], -1 padded).

        Only sensible when the maximal root count is small (prime moduli).
        """
        if self._matrix is None:
            m = self.modulus
            maxr = max((len(v) for v in self.roots.values()), default=0)
            if maxr > 8:
                raise ValueError(f"modulus {m} has residues with {maxr} roots; too wide")
            cnt = np.zeros(m, dtype=np.uint8)
            mat = np.full((maxr, m), -1, dtype=np.int64)
            for a, ts in self.roots.items():
                cnt[a] = len(ts)
                for j, t in enumerate(ts):
                    mat[j, a] = t
            self._matrix = (cnt, mat)
        return self._matrix


@lru_cache(maxsize=32)
def build_root_table(m: int) -> RootTable:
    if m < 1:
        raise ValueError("modulus must be positive")
    if m > ROOT_TABLE_MAX_MODULUS:
        raise ValueError(f"modulus {m} exceeds root-table cap {ROOT_TABLE_MAX_MODULUS}")
    pow4 = _pow4_table(m)
    order = np.argsort(pow4, kind="stable")
    roots: dict[int, list[int]] = {}
    vals = pow4[order]
    bounds = np.nonzero(np.diff(vals))[0] + 1
    start = 0
    for end in list(bounds) + [m]:
        roots[int(vals[start])] = [int(t) for t in order[start:end]]
        start = end
    return RootTable(modulus=m, pow4=pow4, roots=roots)


def crt_combine(pairs: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences (residue, modulus) with pairwise coprime moduli."""
    r, m = 0, 1
    for ri, mi in pairs:
        if mi < 1:
            raise ValueError("moduli must be positive")
        if math.gcd(m, mi) != 1:
            raise ValueError("moduli are not pairwise coprime")
        inv = pow(m % mi, -1, mi)
        r = r + m * (((ri - r) * inv) % mi)
        m *= mi
    return r % m, m


def mod81_write_keep_N(x: int, z: int) -> bool:
    """Keep rule for case-N write pairs; False means f_N(x,z) need not be stored."""
    x81, z81 = x % 81, z % 81
    if x81 % 3 == 0 and z81 % 3 == 0:
        return False
    f = (pow(x81, 4, 81) - pow(z81, 4, 81)) % 81
    return not (f % 3 == 0 and f != 0)


def mod3_read_skip_S(x: int, y: int) -> bool:
    """True when g_S(x,y) cannot meet any stored value and should be skipped."""
    x81, y81 = x % 81, y % 81
    if x81 % 3 == 0 and y81 % 3 == 0:
        return True
    g = (pow(x81, 4, 81) + 2 * pow(y81, 4, 81)) % 81
    return g % 3 == 0 and g != 0


class QuadraticFormId(Enum):
    q1 = "a^2+b^2"
    q2 = "a^2-2b^2"
    q3 = "a^2+2b^2"


_QUARTIC_FORMS = {
    "fN": (1, -1, 4),   # coeff_a * a^4 + coeff_b * b^4 (quartic)
    "gN": (-2, 4, 4),   # g_N(y, w) = 4w^4 - 2y^4, args in (y, w) order
    "fS": (1, 4, 4),
    "gS": (1, 2, 4),
}
_QUADRATIC_FORMS = {
    QuadraticFormId.q1: (1, 1),
    QuadraticFormId.q2: (1, -2),
    QuadraticFormId.q3: (1, 2),
}


def residue_spectrum(form: str | QuadraticFormId, m: int) -> set[int]:
    """Exact set of residues mod m attained by the form over (Z/m)^2."""
    if m < 1 or m > SPECTRUM_MAX_MODULUS:
        raise ValueError(f"modulus must be in [1, {SPECTRUM_MAX_MODULUS}]")
    a = np.arange(m, dtype=np.int64)
    if isinstance(form, QuadraticFormId):
        ca, cb = _QUADRATIC_FORMS[form]
        ua = np.unique((ca * a * a) % m)
        ub = np.unique((cb * a * a) % m)
    else:
        ca, cb, _ = _QUARTIC_FORMS[form]
        p4 = _pow4_table(m)
        ua = np.unique((ca * p4) % m)
        ub = np.unique((cb * p4) % m)
    seen = np.zeros(m, dtype=bool)
    chunk = max(1, (1 << 22) // max(1, len(ub)))
    for i in range(0, len(ua), chunk):
        vals = (ua[i : i + chunk, None] + ub[None, :]) % m
        seen[vals.ravel()] = True
    return {int(v) for v in np.nonzero(seen)[0]}


def count_admissible_mod625(case: CaseId) -> int:
    """Pairs in (Z/625)^2 meeting the case's mod-625 condition, coprime to 5."""
    p4 = _pow4_table(625)
    units = np.arange(625) % 5 != 0
    if case is CaseId.N:
        # x^4 = z^4 (mod 625) with 5 ∤ x, 5 ∤ z
        lhs = p4[units]
        counts = np.bincount(lhs, minlength=625)
        return int(np.sum(counts[p4[units]]))
    # z^4 = -4 w^4 (mod 625) with 5 ∤ z, 5 ∤ w
    rhs = (-4 * p4[units]) % 625
    counts = np.bincount(p4[units], minlength=625)
    return int(np.sum(counts[rhs]))


# ---------------------------------------------------------------------------
# Static class tables (independent of bound and page prime)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _class_table_N() -> np.ndarray:
    """For x mod 5000 (x odd, 5∤x): the 8 admissible z classes mod 5000.

    z = rho*x (mod 625) for the four fourth roots of unity, combined with
    z = ±x (mod 8).  Rows for inadmissible x are zero-filled and unused.
    """
    table = np.zeros((5000, 8), dtype=np.int64)
    for xm in range(5000):
        if xm % 2 == 0 or xm % 5 == 0:
            continue
        cols = []
        for rho in ROOTS_OF_UNITY_625:
            z625 = rho * xm % 625
            for s in (1, 7):
                z8 = s * xm % 8
                cols.append(crt_combine([(z625, 625), (z8, 8)])[0])
        table[xm] = cols
    return table


@lru_cache(maxsize=1)
def _class_table_S() -> np.ndarray:
    """For w mod 1250 (w even, 5∤w): the 4 admissible z classes mod 1250."""
    table = np.zeros((1250, 4), dtype=np.int64)
    for wm in range(1250):
        if wm % 2 == 1 or wm % 5 == 0:
            continue
        cols = []
        for rho in ROOTS_OF_MINUS4_625:
            z625 = rho * wm % 625
            cols.append(crt_combine([(z625, 625), (1, 2)])[0])
        table[wm] = cols
    return table


@lru_cache(maxsize=1)
def _keep81_N() -> np.ndarray:
    """Flat 81x81 bool: keep f_N(x,z) given (x mod 81, z mod 81)."""
    t = np.zeros(81 * 81, dtype=bool)
    for x in range(81):
        for z in range(81):
            t[x * 81 + z] = mod81_write_keep_N(x, z)
    return t


@lru_cache(maxsize=1)
def _keep81_S() -> np.ndarray:
    """Flat 81x81 bool: keep (do not skip) g_S(x,y) given residues mod 81."""
    t = np.zeros(81 * 81, dtype=bool)
    for x in range(81):
        for y in range(81):
            t[x * 81 + y] = not mod3_read_skip_S(x, y)
    return t


def _skip_table(coeff_a: int, coeff_b: int, m: int, skip: frozenset[int]) -> np.ndarray:
    """Flat m*m bool: True where coeff_a*a^4 + coeff_b*b^4 mod m is in skip."""
    p4 = _pow4_table(m)
    vals = (coeff_a * p4[:, None] + coeff_b * p4[None, :]) % m
    return np.isin(vals, list(skip)).ravel()


@lru_cache(maxsize=8)
def _filter_tables(case: CaseId) -> tuple[np.ndarray, np.ndarray]:
    """(write-skip mod 13 table, read-skip mod 17 table) for the case."""
    if case is CaseId.N:
        w13 = _skip_table(1, -1, 13, SKIP_MOD13_N_WRITE)        # f_N(x, z)
        r17 = _skip_table(-2, 4, 17, SKIP_MOD17_READ)           # g_N(y, w)
    else:
        w13 = _skip_table(1, 4, 13, SKIP_MOD13_S_WRITE)         # f_S(z, w)
        r17 = _skip_table(1, 2, 17, SKIP_MOD17_READ)            # g_S(x, y)
    return w13, r17


def _pow4_u64(v: np.ndarray) -> np.ndarray:
    u = v.astype(np.uint64)
    sq = u * u
    return sq * sq


# ---------------------------------------------------------------------------
# Per-page enumeration
# ---------------------------------------------------------------------------

class PageEnumerator:
    """Vectorised per-page pair enumeration for one (case, bound, prime) setup.

    Precomputes every residue/root table once; `write_pairs(r)` and
    `read_pairs(r)` then cost work proportional to the outer coordinate
    range, independent of the number of pages.
    """

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        B, p = cfg.bound, cfg.page_prime
        self.p = p
        rt = build_root_table(p)
        self.root_cnt, self.root_mat = rt.root_matrix()
        self.pow4_p = rt.pow4  # int64[p]

        if cfg.case is CaseId.N:
            self._init_N()
        else:
            self._init_S()

    # -- case N ------------------------------------------------------------

    def _init_N(self) -> None:
        B, p = self.cfg.bound, self.p
        x = np.arange(1, B + 1, 2, dtype=np.int64)
        x = x[x % 5 != 0]
        self.wout = x                       # write outer coordinate (x)
        self.wout_p4 = self.pow4_p[x % p]   # x^4 mod p
        self.wout_cls = _class_table_N()[x % 5000]      # (n, 8) z classes
        self.wout_m81 = (x % 81) * 81
        self.keep81 = _keep81_N()
        self.cls_mod = 5000
        self.inv_p_cls = pow(p % 5000, -1, 5000)
        self.wout_val = _pow4_u64(x)        # x^4 mod 2^64
        self.write_sign = -1                # f_N = x^4 - z^4
        if self.cfg.filters_13_17:
            w13, r17 = _filter_tables(CaseId.N)
            self.skip13, self.skip17 = w13, r17
            self.wout_m13 = (x % 13) * 13

        # read side: y = 10a, w = 10b
        bmax = B // 10
        a = np.arange(0, bmax + 1, dtype=np.int64)
        self.rout = a
        self.read_bmax = bmax
        inv = pow(40000 % p, -1, p)
        self.read_rmul = inv                # t = (r + 20000 a^4) * inv40000
        self.rout_base = (self.pow4_p[(10 * a) % p] * 2 % p) * inv % p
        self.read_y = 10 * a
        self.rval_a = (np.uint64(2) * _pow4_u64(10 * a))    # 2 y^4 mod 2^64
        self.rval_b = (np.uint64(4) * _pow4_u64(10 * a))    # 4 w^4 (same index grid)
        if self.cfg.filters_13_17:
            self.rout_m17 = ((10 * a) % 17) * 17
            self.rb_m17 = (10 * a) % 17

    # -- case S ------------------------------------------------------------

    def _init_S(self) -> None:
        B, p = self.cfg.bound, self.p
        w = np.arange(2, B + 1, 2, dtype=np.int64)
        w = w[w % 5 != 0]
        self.wout = w                       # write outer coordinate (w)
        self.wout_p4 = (4 * self.pow4_p[w % p]) % p     # 4 w^4 mod p
        self.wout_cls = _class_table_S()[w % 1250]      # (n, 4) z classes
        self.cls_mod = 1250
        self.inv_p_cls = pow(p % 1250, -1, 1250)
        self.wout_val = np.uint64(4) * _pow4_u64(w)     # 4 w^4 mod 2^64
        self.write_sign = +1                # f_S = z^4 + 4w^4
        if self.cfg.filters_13_17:
            w13, r17 = _filter_tables(CaseId.S)
            self.skip13, self.skip17 = w13, r17
            self.wout_m13 = w % 13          # column index (f_S(z, w))

        # read side: x = 10a + 5, y = 10b
        xs = np.arange(5, B + 1, 10, dtype=np.int64)
        self.rout = xs
        bmax = B // 10
        self.read_bmax = bmax
        inv = pow(20000 % p, -1, p)
        self.read_rmul = inv                # t = (r - x^4) * inv20000
        self.rout_base = (-self.pow4_p[xs % p] % p) * inv % p
        self.rout_m81 = (xs % 81) * 81
        self.keep81 = _keep81_S()
        bs = np.arange(0, bmax + 1, dtype=np.int64)
        self.rb_m81 = (10 * bs) % 81
        self.rval_a = _pow4_u64(xs)                     # x^4 mod 2^64
        self.rval_b = np.uint64(2) * _pow4_u64(10 * bs)  # 2 y^4 mod 2^64
        if self.cfg.filters_13_17:
            self.rout_m17 = (xs % 17) * 17
            self.rb_m17 = (10 * bs) % 17

    # -- write side ----------------------------------------------------------

    def write_pairs(self, r: int, sort: bool = True) -> tuple[np.ndarray, np.ndarray]:
        """All admissible write pairs of page r, lexicographically sorted.

        Returns (x, z) for case N and (z, w) for case S.  sort=False keeps
        the (deterministic) enumeration order; the sort only matters for
        presentation and costs more than the enumeration itself.
        """
        cfg, p = self.cfg, self.p
        if self.write_sign < 0:
            t = (self.wout_p4 - r) % p      # z^4 = x^4 - r  (case N)
        else:
            t = (r - self.wout_p4) % p      # z^4 = r - 4w^4 (case S)
        B = cfg.bound
        L = p * self.cls_mod
        outs_u: list[np.ndarray] = []
        outs_z: list[np.ndarray] = []
        nroots = self.root_mat.shape[0]
        for j in range(nroots):
            zp = self.root_mat[j, t]
            sel = np.nonzero(zp >= 0)[0]
            if len(sel) == 0:
                continue
            zp_s = zp[sel]
            cls = self.wout_cls[sel]
            for e in range(cls.shape[1]):
                c = cls[:, e]
                q = ((c - zp_s) * self.inv_p_cls) % self.cls_mod
                z0 = zp_s + p * q
                for m0 in range(0, B // L + 1):
                    z = z0 + m0 * L
                    mask = z <= B
                    if cfg.case is CaseId.N:
                        mask &= self.keep81[self.wout_m81[sel] + z % 81]
                    if cfg.filters_13_17:
                        if cfg.case is CaseId.N:
                            mask &= ~self.skip13[self.wout_m13[sel] + z % 13]
                        else:
                            mask &= ~self.skip13[(z % 13) * 13 + self.wout_m13[sel]]
                    idx = sel[mask]
                    if len(idx):
                        outs_u.append(self.wout[idx])
                        outs_z.append(z[mask])
        if not outs_u:
            e = np.empty(0, dtype=np.int64)
            return e, e.copy()
        u = np.concatenate(outs_u)
        z = np.concatenate(outs_z)
        if cfg.case is CaseId.N:
            a, b = u, z      # (x, z)
        else:
            a, b = z, u      # (z, w)
        if not sort:
            return a, b
        order = np.lexsort((b, a))
        return a[order], b[order]

    def write_values(self, r: int) -> np.ndarray:
        """64-bit form values of the page's write pairs (pair order)."""
        a, b = self.write_pairs(r)
        return self.pair_write_values(a, b)

    def pair_write_values(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.cfg.case is CaseId.N:
            return _pow4_u64(a) - _pow4_u64(b)
        return _pow4_u64(a) + np.uint64(4) * _pow4_u64(b)

    # -- read side -----------------------------------------------------------

    def read_pairs(self, r: int, sort: bool = True) -> tuple[np.ndarray, np.ndarray]:
        """All admissible read pairs of page r, lexicographically sorted.

        Returns (y, w) for case N and (x, y) for case S.  sort=False keeps
        the (deterministic) enumeration order, which is much cheaper.
        """
        cfg, p = self.cfg, self.p
        t = self.rout_base + (r * self.read_rmul % p)
        t[t >= p] -= p
        bmax = self.read_bmax
        K = bmax // p + 1
        outs_a: list[np.ndarray] = []
        outs_b: list[np.ndarray] = []
        nroots = self.root_mat.shape[0]
        for j in range(nroots):
            b0 = self.root_mat[j, t]
            sel = np.nonzero(b0 >= 0)[0]
            if len(sel) == 0:
                continue
            b0_s = b0[sel]
            for k in range(K):
                b = b0_s + k * p
                mask = b <= bmax
                if cfg.case is CaseId.S:
                    mask &= self.keep81[self.rout_m81[sel] + self.rb_m81[b % (bmax + 1)]]
                if cfg.filters_13_17:
                    mask &= ~self.skip17[self.rout_m17[sel] + self.rb_m17[b % (bmax + 1)]]
                idx = sel[mask]
                if len(idx):
                    outs_a.append(idx)
                    outs_b.append(b[mask])
        if not outs_a:
            e = np.empty(0, dtype=np.int64)
            return e, e.copy()
        ai = np.concatenate(outs_a)
        b = np.concatenate(outs_b)
        if cfg.case is CaseId.N:
            a_val, b_val = 10 * self.rout[ai], 10 * b    # (y, w)
        else:
            a_val, b_val = self.rout[ai], 10 * b         # (x, y)
        if not sort:
            return a_val, b_val
        order = np.lexsort((b_val, a_val))
        return a_val[order], b_val[order]

    def pair_read_values(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.cfg.case is CaseId.N:
            # g_N = 4w^4 - 2y^4 with (a, b) = (y, w)
            return np.uint64(4) * _pow4_u64(b) - np.uint64(2) * _pow4_u64(a)
        return _pow4_u64(a) + np.uint64(2) * _pow4_u64(b)

    def read_values(self, r: int) -> np.ndarray:
        a, b = self.read_pairs(r)
        return self.pair_read_values(a, b)


_ENUM_CACHE: dict[tuple, PageEnumerator] = {}


def get_enumerator(cfg: SearchConfig) -> PageEnumerator:
    key = (cfg.case, cfg.bound, cfg.page_prime, cfg.filters_13_17)
    enum = _ENUM_CACHE.get(key)
    if enum is None:
        if len(_ENUM_CACHE) > 8:
            _ENUM_CACHE.clear()
        enum = PageEnumerator(cfg)
        _ENUM_CACHE[key] = enum
    return enum


def enumerate_write_pairs(cfg: SearchConfig, r: int) -> Iterator[AdmissiblePair]:
    role = PairRole.WRITE_N if cfg.case is CaseId.N else PairRole.WRITE_S
    a, b = get_enumerator(cfg).write_pairs(r)
    for ai, bi in zip(a.tolist(), b.tolist()):
        yield AdmissiblePair(ai, bi, role)


def enumerate_read_pairs(cfg: SearchConfig, r: int) -> Iterator[AdmissiblePair]:
    role = PairRole.READ_N if cfg.case is CaseId.N else PairRole.READ_S
    a, b = get_enumerator(cfg).read_pairs(r)
    for ai, bi in zip(a.tolist(), b.tolist()):
        yield AdmissiblePair(ai, bi, role)
