"""Reproduction runs: diagonal dots of W1 arrays, fixed-point-free ratios,
characteristic-2 Golomb parity classes and Germain-prime correlation maxima.
"""
from __future__ import annotations

import hashlib
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .costas import iter_golomb_distinct_rows, parity_rows
from .ff import (
    PrimeField,
    binary_field,
    euler_phi,
    is_prime,
    is_sophie_germain,
    primes_up_to,
)
from .xcorr import golomb_pair_scan, welch_pair_scan

log = logging.getLogger(__name__)

# rows x columns per vectorized block
_BLOCK = 1 << 22


def parallel_map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Ordered map, in-process for one worker."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


def log_fit(p: int) -> int:
    """1 + ln p rounded to the nearest integer."""
    return 1 + math.floor(math.log(p) + 0.5)


# --------------------------------------------------------------------------
# diagonal dots of W1 arrays


@dataclass(frozen=True)
class DiagonalRow:
    p: int
    max_s: int
    fit_value: int
    fit_error: int


@dataclass(frozen=True)
class DiagonalStats:
    """Fixed-point statistics over all (g, c) of one prime."""

    p: int
    max_s: int
    zero_count: int
    total: int


def diagonal_stats(p: int) -> DiagonalStats:
    """max S(p, g, c) and the number of fixed-point-free (g, c), all roots at once.

    With g = g0^k, log_g(i) = log_g0(i) * k^-1 (mod p-1), and k^-1 runs over
    the units as k does; each row below is one root's fixed-point profile.
    """
    if p == 2:
        return DiagonalStats(2, 1, 0, 1)
    fld = PrimeField(p)
    n = p - 1
    i = np.arange(1, p)
    base = fld.log[i]
    units = np.array([w for w in range(1, n) if math.gcd(w, n) == 1] or [1], dtype=np.int64)
    per = max(1, _BLOCK // n)
    max_s = zeros = 0
    for lo in range(0, units.size, per):
        w = units[lo : lo + per]
        cs = (base[None, :] * w[:, None] - (i - 1)[None, :]) % n
        flat = cs + (np.arange(w.size) * n)[:, None]
        prof = np.bincount(flat.ravel(), minlength=w.size * n)
        max_s = max(max_s, int(prof.max()))
        zeros += int(np.count_nonzero(prof == 0))
    return DiagonalStats(p, max_s, zeros, n * units.size)


def table1_scan(p_max: int, workers: int = 1, p_min: int = 2) -> list[DiagonalRow]:
    primes = [p for p in primes_up_to(p_max) if p >= p_min]
    rows = []
    for st in parallel_map(diagonal_stats, primes, workers):
        fit = log_fit(st.p)
        rows.append(DiagonalRow(st.p, st.max_s, fit, st.max_s - fit))
    return rows


def logfit_stats(rows: Iterable[DiagonalRow]) -> tuple[int, int, int]:
    rows = list(rows)
    if not rows:
        raise ValueError("logfit_stats needs at least one row")
    exact = sum(r.fit_error == 0 for r in rows)
    near = sum(abs(r.fit_error) <= 1 for r in rows)
    return exact, near, len(rows)


def fixed_point_free_ratio(p: int) -> Fraction:
    if p < 3:
        raise ValueError("ratio needs p >= 3")
    st = diagonal_stats(p)
    return Fraction(st.zero_count, st.total)


@dataclass(frozen=True)
class RatioRow:
    p: int
    zero_count: int
    total: int

    @property
    def ratio(self) -> float:
        return self.zero_count / self.total


def ratio_scan(p_max: int, p_min: int = 3, workers: int = 1) -> list[RatioRow]:
    primes = [p for p in primes_up_to(p_max) if p >= max(p_min, 3)]
    return [RatioRow(s.p, s.zero_count, s.total) for s in parallel_map(diagonal_stats, primes, workers)]


# --------------------------------------------------------------------------
# characteristic-2 Golomb parity populations


@dataclass(frozen=True)
class ParityClassRow:
    m: int
    ee: int
    eo: int
    count: int


@dataclass
class ParityTable:
    m: int
    rows: list[ParityClassRow]  # top half, ee < eo
    classes: dict[tuple[int, int], int] = field(repr=False)  # both halves
    total: int = 0

    @property
    def length(self) -> int:
        return len(self.rows)


def golomb_parity_classes(fld) -> tuple[Counter, int]:
    """(ee, eo) class sizes over distinct Golomb permutations of ``fld``.

    Permutations are deduplicated by a 128-bit BLAKE2 digest of their
    content, so memory stays flat at m = 11.
    """
    seen: set[bytes] = set()
    classes: Counter = Counter()
    for block in iter_golomb_distinct_rows(fld, chunk=_BLOCK):
        block = block.astype(np.int32)
        ee, eo = parity_rows(block)
        for row, a, b in zip(block, ee.tolist(), eo.tolist()):
            key = hashlib.blake2b(row.tobytes(), digest_size=16).digest()
            if key not in seen:
                seen.add(key)
                classes[(a, b)] += 1
    return classes, len(seen)


def table2_scan(m: int, m_max: int = 12) -> ParityTable:
    if not 3 <= m <= m_max:
        raise ValueError(f"m must be in [3, {m_max}]")
    classes, total = golomb_parity_classes(binary_field(m))
    rows = [ParityClassRow(m, ee, eo, c) for (ee, eo), c in sorted(classes.items()) if ee < eo]
    return ParityTable(m, rows, dict(classes), total)


# --------------------------------------------------------------------------
# Germain-prime cross-correlation maxima


@dataclass(frozen=True)
class GermainRow:
    p: int
    w1_max: int
    g2_max: Optional[int] = None


def table3_scan(p: int, include_g2: bool = False) -> GermainRow:
    if not is_prime(p) or not is_sophie_germain(p):
        raise ValueError(f"{p} is not a Sophie Germain prime")
    w1 = welch_pair_scan(p).max_value
    g2 = golomb_pair_scan(PrimeField(p)).max_value if include_g2 else None
    return GermainRow(p, w1, g2)


def _table3_job(args):
    return table3_scan(*args)


def table3_rows(primes: Sequence[int], include_g2: bool = False, workers: int = 1) -> list[GermainRow]:
    return parallel_map(_table3_job, [(p, include_g2) for p in primes], workers)


def germain_logfit_check(rows: Iterable[GermainRow]) -> tuple[int, int, int]:
    rows = list(rows)
    if not rows:
        raise ValueError("germain_logfit_check needs at least one row")
    errs = [r.w1_max - log_fit(r.p) for r in rows]
    return sum(e == 0 for e in errs), sum(abs(e) <= 1 for e in errs), len(errs)


def germain_primes(p_max: int) -> list[int]:
    return [p for p in primes_up_to(p_max) if is_sophie_germain(p)]


def w1_pair_count(p: int) -> int:
    w = (p - 1) * euler_phi(p - 1)
    return w * w
