"""Costas permutations from the exponential Welch and Golomb constructions.

Permutations are one-based, as ``f: [n] -> [n]``.  Heavy callers work on
numpy rows directly; :class:`Permutation` is the validated public carrier.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Union

import numpy as np
from numba import njit

from .ff import (
    BinaryField,
    PrimeField,
    PrimePowerField,
    class_number,
    is_prime,
    primitive_roots,
)

Field = Union[PrimeField, BinaryField, PrimePowerField]


@dataclass(frozen=True)
class Permutation:
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [1..{n}]: {vals}")

    @classmethod
    def from_line(cls, line: str) -> "Permutation":
        return cls(tuple(int(tok) for tok in line.split()))

    def to_line(self) -> str:
        return " ".join(map(str, self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __call__(self, i: int) -> int:
        """f(i) for one-based i."""
        if not 1 <= i <= len(self.values):
            raise IndexError(i)
        return self.values[i - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def __str__(self) -> str:
        return self.to_line()


def _perm(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


@dataclass(frozen=True)
class WelchSpec:
    p: int
    g: int
    c: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.g not in primitive_roots(self.p):
            raise ValueError(f"{self.g} is not a primitive root of {self.p}")
        if not 0 <= self.c <= max(self.p - 2, 0):
            raise ValueError(f"shift c={self.c} outside [0, {self.p - 2}]")


@dataclass(frozen=True)
class GolombSpec:
    field: Field
    a: int
    b: int

    def __post_init__(self):
        if self.field.q < 4:
            raise ValueError("Golomb construction needs q >= 4")
        prims = self.field.primitive_elements()
        for x in (self.a, self.b):
            if x not in prims:
                raise ValueError(f"{x} is not a primitive element of {self.field!r}")


class ParityQuad(NamedTuple):
    ee: int
    eo: int
    oe: int
    oo: int


# --------------------------------------------------------------------------
# verification


def is_costas(f: Union[Permutation, Sequence[int]]) -> bool:
    """Costas test by distinct row differences at every horizontal distance."""
    vals = np.asarray(tuple(f), dtype=np.int64)
    n = vals.size
    for d in range(1, n):
        diffs = vals[d:] - vals[:-d]
        if np.unique(diffs).size != diffs.size:
            return False
    return True


@njit(cache=True)
def _costas_rows_kernel(rows, out):
    count, n = rows.shape
    # stamp[v] == tag marks difference v as seen for the current (row, d)
    stamp = np.zeros(2 * n + 1, dtype=np.int64)
    tag = 0
    for r in range(count):
        ok = True
        for d in range(1, n):
            tag += 1
            for i in range(n - d):
                v = rows[r, i + d] - rows[r, i] + n
                if stamp[v] == tag:
                    ok = False
                    break
                stamp[v] = tag
            if not ok:
                break
        out[r] = ok


def costas_rows(rows: np.ndarray) -> np.ndarray:
    """Vectorized :func:`is_costas` over a stack of permutations."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    out = np.empty(rows.shape[0], dtype=np.bool_)
    _costas_rows_kernel(rows, out)
    return out


# --------------------------------------------------------------------------
# generators


def welch_generate(spec: WelchSpec) -> Permutation:
    p, g, c = spec.p, spec.g, spec.c
    if p == 2:
        return _perm([1])
    return _perm(pow(g, i - 1 + c, p) for i in range(1, p))


def welch(p: int, g: int, c: int = 0) -> Permutation:
    return welch_generate(WelchSpec(p, g, c))


def welch_rows(p: int, g: int) -> np.ndarray:
    """All p-1 shifts of W1(p, g, .) as a (p-1, p-1) array, row c = shift c."""
    n = p - 1
    powers = np.empty(n, dtype=np.int64)
    x = 1
    for k in range(n):
        powers[k] = x
        x = x * g % p
    idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return powers[idx]


def golomb_rows(field: Field, s_exps: Sequence[int], t_exps: Sequence[int]) -> np.ndarray:
    """Golomb permutations for every (a, b) = (alpha^s, alpha^t), s-major.

    Solves a^i + b^f(i) = 1 through the Zech table:
    f(i) = log(1 - alpha^(s i)) / t  (mod q-1).
    """
    n = field.order
    z = field.zech
    i = np.arange(1, n)
    s = np.asarray(s_exps, dtype=np.int64)
    tinv = np.array([pow(int(t), -1, n) for t in t_exps], dtype=np.int64)
    zs = z[(s[:, None] * i[None, :]) % n]  # (S, n-1)
    if np.any(zs < 0):
        raise AssertionError("1 - a^i vanished for a primitive a")
    rows = (zs[:, None, :] * tinv[None, :, None]) % n
    return rows.reshape(-1, n - 1)


def golomb_generate(spec: GolombSpec) -> Permutation:
    f = spec.field
    s, t = f.exponent_of(spec.a), f.exponent_of(spec.b)
    return _perm(golomb_rows(f, [s], [t])[0])


def golomb(field: Field, a: int, b: int) -> Permutation:
    return golomb_generate(GolombSpec(field, a, b))


# --------------------------------------------------------------------------
# symmetries


def hflip(f: Permutation) -> Permutation:
    return _perm(reversed(f.values))


def vflip(f: Permutation) -> Permutation:
    n = f.n
    return _perm(n + 1 - v for v in f.values)


def transpose(f: Permutation) -> Permutation:
    inv = [0] * f.n
    for i, v in enumerate(f.values, start=1):
        inv[v - 1] = i
    return _perm(inv)


# --------------------------------------------------------------------------
# dot statistics


def parity_populations(f: Union[Permutation, Sequence[int]]) -> ParityQuad:
    vals = np.asarray(tuple(f), dtype=np.int64)
    i_odd = (np.arange(1, vals.size + 1) & 1).astype(bool)
    f_odd = (vals & 1).astype(bool)
    return ParityQuad(
        ee=int(np.count_nonzero(~i_odd & ~f_odd)),
        eo=int(np.count_nonzero(i_odd & ~f_odd)),
        oe=int(np.count_nonzero(~i_odd & f_odd)),
        oo=int(np.count_nonzero(i_odd & f_odd)),
    )


def parity_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(ee, eo) for every row of a stack of one-based permutations."""
    i_even = (np.arange(1, rows.shape[1] + 1) & 1) == 0
    f_even = (rows & 1) == 0
    ee = np.count_nonzero(f_even & i_even, axis=1)
    eo = np.count_nonzero(f_even & ~i_even, axis=1)
    return ee, eo


def fixed_point_count(f: Union[Permutation, Sequence[int]]) -> int:
    vals = np.asarray(tuple(f), dtype=np.int64)
    return int(np.count_nonzero(vals == np.arange(1, vals.size + 1)))


def welch_fixed_point_profile(p: int, g: int) -> list[int]:
    """S(p, g, c) for c = 0..p-2.

    Each i in [p-1] is a fixed point for exactly one shift,
    c = log_g(i) - (i - 1) mod p-1, so one pass over i fills the profile.
    """
    if p == 2:
        return [1]
    n = p - 1
    log = np.empty(p, dtype=np.int64)
    x = 1
    for k in range(n):
        log[x] = k
        x = x * g % p
    if x != 1 or g not in primitive_roots(p):
        raise ValueError(f"{g} is not a primitive root of {p}")
    i = np.arange(1, p)
    cs = (log[i] - (i - 1)) % n
    return np.bincount(cs, minlength=n).tolist()


# --------------------------------------------------------------------------
# enumeration


def frobenius_representatives(field: Field) -> list[int]:
    """One exponent from each orbit of x -> x^char on primitive exponents."""
    n, ch = field.order, field.char
    seen: set[int] = set()
    reps = []
    for s in field.primitive_exponents():
        if s in seen:
            continue
        reps.append(s)
        x = s
        while x not in seen:
            seen.add(x)
            x = x * ch % n
    return reps


def iter_golomb_distinct_rows(field: Field, chunk: int = 1 << 22) -> Iterator[np.ndarray]:
    """Yield blocks of Golomb rows over Frobenius representatives of a.

    (a, b) and (a^char, b^char) give the same permutation, so only one a per
    Frobenius orbit is generated; callers still dedupe by content.
    """
    reps = frobenius_representatives(field)
    ts = field.primitive_exponents()
    per_s = max(1, chunk // max(1, len(ts) * (field.order - 1)))
    for lo in range(0, len(reps), per_s):
        yield golomb_rows(field, reps[lo : lo + per_s], ts)


def golomb_enumerate_distinct(field: Field) -> frozenset[Permutation]:
    out: set[tuple[int, ...]] = set()
    for block in iter_golomb_distinct_rows(field):
        out.update(map(tuple, block.tolist()))
    return frozenset(Permutation(v) for v in out)


def golomb_enumerate_bruteforce(field: Field) -> frozenset[Permutation]:
    """Every primitive pair (a, b), deduplicated by content."""
    exps = field.primitive_exponents()
    rows = golomb_rows(field, exps, exps)
    return frozenset(Permutation(v) for v in set(map(tuple, rows.tolist())))


def all_welch(p: int) -> Iterator[tuple[WelchSpec, Permutation]]:
    for g in primitive_roots(p):
        for c in range(max(p - 1, 1)):
            spec = WelchSpec(p, g, c)
            yield spec, welch_generate(spec)


# --------------------------------------------------------------------------
# property checks


@dataclass(frozen=True)
class Verdict:
    """Outcome of one theorem or property check at one field size."""

    name: str
    p: int
    status: str  # "holds" | "violated" | "skipped"
    lhs: Optional[int] = None
    rhs: Optional[int] = None
    witness: tuple = ()
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    @property
    def violated(self) -> bool:
        return self.status == "violated"


def _named(fld: Field, e: int) -> int:
    return fld.element(e) if isinstance(fld, PrimeField) else e


def verify_costas_welch(p: int) -> Verdict:
    """Every W1(p, g, c) is a Costas permutation."""
    bad = []
    for g in primitive_roots(p):
        rows = welch_rows(p, g) if p > 2 else np.array([[1]])
        bad.extend(WelchSpec(p, g, int(c)) for c in np.flatnonzero(~costas_rows(rows)))
    total = len(primitive_roots(p)) * max(p - 1, 1)
    return Verdict("costas-W1", p, "violated" if bad else "holds", len(bad), 0, tuple(bad[:1]),
                   f"{total} arrays checked")


def verify_costas_golomb(fld: Field) -> Verdict:
    """Every G2 permutation over ``fld`` (all primitive pairs) is Costas."""
    exps = fld.primitive_exponents()
    rows = golomb_rows(fld, exps, exps)
    bad = np.flatnonzero(~costas_rows(rows)).tolist()
    wit = ()
    if bad:
        s, t = divmod(bad[0], len(exps))
        wit = (GolombSpec(fld, _named(fld, exps[s]), _named(fld, exps[t])),)
    return Verdict("costas-G2", fld.q, "violated" if bad else "holds", len(bad), 0, wit,
                   f"{len(rows)} arrays checked")


def golomb_parity_prediction(q: int) -> ParityQuad:
    """Parity populations every G2 array of an odd-characteristic F(q) has."""
    if q % 4 == 1:
        a = (q - 1) // 4
        return ParityQuad(ee=(q - 5) // 4, eo=a, oe=a, oo=a)
    a = (q - 3) // 4
    return ParityQuad(ee=a, eo=a, oe=a, oo=(q + 1) // 4)


def verify_golomb_parity(fld: Field) -> Verdict:
    if fld.char == 2:
        raise ValueError("the odd-characteristic parity law does not cover q = 2^m")
    want = golomb_parity_prediction(fld.q)
    exps = fld.primitive_exponents()
    rows = golomb_rows(fld, exps, exps)
    for k, row in enumerate(rows):
        got = parity_populations(row)
        if got != want:
            s, t = divmod(k, len(exps))
            spec = GolombSpec(fld, _named(fld, exps[s]), _named(fld, exps[t]))
            return Verdict("parity-G2", fld.q, "violated", got.ee, want.ee, (spec,), f"got {got}, expected {want}")
    return Verdict("parity-G2", fld.q, "holds", want.ee, want.ee, (), f"{len(rows)} arrays checked")


def welch_parity_prediction(p: int) -> Optional[int]:
    """eo - ee of W1(p, g, 0); None when p = 1 mod 4 (all four quadrants equal)."""
    if p % 4 == 1:
        return None
    h = class_number(p)
    return -3 * h if p % 8 == 3 else h


def verify_welch_parity(p: int) -> Verdict:
    if p < 5:
        raise ValueError("the W1 parity law needs p >= 5")
    want = welch_parity_prediction(p)
    for g in primitive_roots(p):
        q = parity_populations(welch_generate(WelchSpec(p, g, 0)))
        ok = (q.ee == q.oo == q.eo == q.oe) if want is None else (q.eo - q.ee == want)
        if not ok:
            return Verdict("parity-W1", p, "violated", q.eo - q.ee, want, (WelchSpec(p, g, 0),), f"got {q}")
    rhs = 0 if want is None else want
    return Verdict("parity-W1", p, "holds", rhs, rhs, (), f"{len(primitive_roots(p))} roots checked")


def verify_parity_identities(f: Permutation) -> bool:
    q = parity_populations(f)
    return sum(q) == f.n and q.eo == q.oe and q.oo - q.ee == f.n % 2
