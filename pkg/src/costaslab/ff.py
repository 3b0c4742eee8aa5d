"""Finite fields and the small amount of elementary number theory the
Costas constructions need.

Three field flavours share one table-driven interface (``q``, ``order``,
``exp``, ``log``, ``zech``, ``exponent_of``):

* :class:`PrimeField` for F(p), elements are the integers 0..p-1;
* :class:`BinaryField` for GF(2^m), elements are bitmasks;
* :class:`PrimePowerField` for small GF(p^m) with odd p, elements are
  base-p digit encodings of polynomial coefficients.

Extension-field primitive elements are named by their exponent of the
field generator, prime-field primitive roots by their integer value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, Optional

import numpy as np

__all__ = [
    "is_prime",
    "factorize",
    "euler_phi",
    "is_sophie_germain",
    "smallest_prime_of_half",
    "primes_up_to",
    "mod_pow",
    "multiplicative_order",
    "primitive_roots",
    "legendre",
    "class_number",
    "PrimitiveRootSet",
    "PrimeField",
    "BinaryField",
    "PrimePowerField",
    "binary_field",
    "bf_primitive_elements",
    "bf_dlog",
    "field_of_size",
    "DEFAULT_PRIMITIVE_POLYS",
]

# Miller-Rabin witnesses that are deterministic for every n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Least (as an integer bitmask) primitive polynomial of each degree.
DEFAULT_PRIMITIVE_POLYS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x402B,
    15: 0x8003,
    16: 0x1002D,
}

MAX_BINARY_DEGREE = 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for d in (2, 3):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    d = 5
    while d * d <= n:
        for e in (d, d + 2):
            while n % e == 0:
                out[e] = out.get(e, 0) + 1
                n //= e
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def is_sophie_germain(p: int) -> bool:
    """True iff ``p = 2q + 1`` with q prime (the convention of safe primes)."""
    return p % 2 == 1 and is_prime((p - 1) // 2)


def smallest_prime_of_half(p: int) -> int:
    if p < 5:
        raise ValueError(f"smallest_prime_of_half needs p >= 5, got {p}")
    return min(factorize((p - 1) // 2))


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).tolist()


def mod_pow(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return pow(base, exp, modulus)


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    n = p - 1
    order = n
    for q in factorize(n) if n > 1 else {}:
        while order % q == 0 and pow(x, order // q, p) == 1:
            order //= q
    return order


@dataclass(frozen=True)
class PrimitiveRootSet:
    """Generators of a cyclic group of order ``group_order``.

    For a prime field the members are the roots themselves; for an extension
    field they are exponents k of the field generator with gcd(k, q-1) = 1.
    """

    group_order: int
    roots: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, x: object) -> bool:
        return x in self.roots


@lru_cache(maxsize=None)
def primitive_roots(p: int) -> PrimitiveRootSet:
    """All primitive roots of F(p) in increasing order.

    F(2) is degenerate: its multiplicative group is {1}, generated by 1.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return PrimitiveRootSet(1, (1,))
    g0 = _least_primitive_root(p)
    n = p - 1
    roots = sorted(pow(g0, k, p) for k in range(1, n) if gcd(k, n) == 1)
    return PrimitiveRootSet(n, tuple(roots))


def _least_primitive_root(p: int) -> int:
    n = p - 1
    qs = list(factorize(n))
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable for prime p")


def legendre(i: int, p: int) -> int:
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    r = pow(i % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def class_number(p: int) -> int:
    """h(-p) from the Legendre-weighted sum, for primes p > 3 with p = 3 mod 4."""
    if p <= 3 or p % 4 != 3 or not is_prime(p):
        raise ValueError(f"class_number needs a prime p > 3, p = 3 mod 4; got {p}")
    s = sum(legendre(i, p) * i for i in range(1, p))
    h, rem = divmod(-s, p)
    assert rem == 0 and h >= 1, (p, s)
    return h


# --------------------------------------------------------------------------
# table-driven fields


class _TableField:
    """Shared machinery: exp/log tables over a fixed generator.

    Subclasses fill ``q``, ``char``, ``degree``, ``exp`` and ``log`` and
    implement ``_one_minus`` on element encodings.
    """

    q: int
    char: int
    degree: int
    exp: np.ndarray  # exponent k in [0, q-2] -> element
    log: np.ndarray  # element -> exponent; log[0] == -1

    @property
    def order(self) -> int:
        """Size of the multiplicative group, q - 1."""
        return self.q - 1

    def _one_minus(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def zech(self) -> np.ndarray:
        """``zech[k] = log(1 - alpha^k)`` for k in [1, q-2]; ``zech[0] = -1``."""
        z = getattr(self, "_zech", None)
        if z is None:
            z = self.log[self._one_minus(self.exp)]
            z[0] = -1
            z.setflags(write=False)
            object.__setattr__(self, "_zech", z)
        return z

    def exponent_of(self, a: int) -> int:
        raise NotImplementedError

    def primitive_exponents(self) -> list[int]:
        n = self.order
        return [k for k in range(1, n) if gcd(k, n) == 1] if n > 1 else [0]

    def primitive_elements(self) -> PrimitiveRootSet:
        raise NotImplementedError


class PrimeField(_TableField):
    """F(p) with tables over its least primitive root."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.q = self.char = p
        self.degree = 1
        self.generator = primitive_roots(p).roots[0] if p > 2 else 1
        n = p - 1
        exp = np.empty(n, dtype=np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            x = x * self.generator % p
        log = np.full(p, -1, dtype=np.int64)
        log[exp] = np.arange(n)
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp, self.log = exp, log

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def _one_minus(self, x):
        return (1 - x) % self.q

    def exponent_of(self, a: int) -> int:
        e = int(self.log[a % self.q])
        if e < 0:
            raise ValueError("0 has no logarithm")
        return e

    def element(self, k: int) -> int:
        return int(self.exp[k % self.order])

    def primitive_elements(self) -> PrimitiveRootSet:
        return primitive_roots(self.q)


@dataclass(frozen=True, eq=False)
class BinaryField(_TableField):
    """GF(2^m) over a primitive polynomial given as a bitmask of degree m."""

    m: int
    poly: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:  # type: ignore[override]
        return 1 << self.m

    char = 2

    @property
    def degree(self) -> int:  # type: ignore[override]
        return self.m

    @property
    def exp_table(self) -> np.ndarray:
        return self.exp

    @property
    def log_table(self) -> np.ndarray:
        return self.log

    def _one_minus(self, x):
        return x ^ 1

    def exponent_of(self, a: int) -> int:
        # binary-field primitive elements are already named by exponent
        return a % self.order if self.order > 1 else 0

    def primitive_elements(self) -> PrimitiveRootSet:
        return bf_primitive_elements(self)

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.log[x] + self.log[y]) % self.order])


def _binary_exp_table(m: int, poly: int) -> Optional[np.ndarray]:
    """Powers of x modulo ``poly``; None unless x has order exactly 2^m - 1."""
    n = (1 << m) - 1
    top = 1 << m
    exp = np.empty(n, dtype=np.int64)
    x = 1
    for k in range(n):
        if k and x == 1:
            return None
        exp[k] = x
        x <<= 1
        if x & top:
            x ^= poly
    return exp if x == 1 else None


@lru_cache(maxsize=None)
def binary_field(m: int, poly: Optional[int] = None) -> BinaryField:
    if not 1 <= m <= MAX_BINARY_DEGREE:
        raise ValueError(f"degree must be in [1, {MAX_BINARY_DEGREE}], got {m}")
    if poly is None:
        poly = DEFAULT_PRIMITIVE_POLYS[m]
    if poly >> m != 1:
        raise ValueError(f"polynomial {poly:#x} does not have degree {m}")
    exp = _binary_exp_table(m, poly)
    if exp is None:
        raise ValueError(f"polynomial {poly:#x} is not primitive of degree {m}")
    log = np.full(1 << m, -1, dtype=np.int64)
    log[exp] = np.arange(exp.size)
    exp.setflags(write=False)
    log.setflags(write=False)
    return BinaryField(m, poly, exp, log)


def bf_primitive_elements(ctx: BinaryField) -> PrimitiveRootSet:
    return PrimitiveRootSet(ctx.order, tuple(ctx.primitive_exponents()))


def bf_dlog(ctx: BinaryField, x: int, base_exponent: int) -> int:
    """Exponent e with (alpha^base_exponent)^e = x."""
    if x == 0:
        raise ValueError("0 has no discrete logarithm")
    n = ctx.order
    if n == 1:
        return 0
    kinv = pow(base_exponent, -1, n)
    return int(ctx.log[x]) * kinv % n


class PrimePowerField(_TableField):
    """GF(p^m) for small odd p via a brute-force primitive polynomial.

    Elements are encoded as ``sum c_j p^j`` over the coefficients of the
    polynomial residue.  Meant for parity checks at q <= a few thousand.
    """

    def __init__(self, p: int, m: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char, self.degree = p, m
        self.q = q = p**m
        if q > 1 << 16:
            raise ValueError("PrimePowerField is for small fields only")
        self.poly = None
        for tail in range(p**m):
            coeffs = [(tail // p**j) % p for j in range(m)]
            if coeffs[0] == 0:
                continue
            exp = self._power_table(coeffs)
            if exp is not None:
                self.poly = tuple(coeffs) + (1,)
                break
        if self.poly is None:
            raise AssertionError("no primitive polynomial found")
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp, self.log = exp, log

    def _power_table(self, coeffs):
        p, m, q = self.char, self.degree, self.q
        # monic x^m = -sum coeffs_j x^j
        red = [(-c) % p for c in coeffs]
        v = [1] + [0] * (m - 1)
        exp = np.empty(q - 1, dtype=np.int64)
        for k in range(q - 1):
            code = sum(c * p**j for j, c in enumerate(v))
            if k and code == 1:
                return None
            exp[k] = code
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                v = [(vj + top * rj) % p for vj, rj in zip(v, red)]
        return exp if v == [1] + [0] * (m - 1) else None

    def __repr__(self) -> str:
        return f"PrimePowerField({self.char}, {self.degree})"

    def _one_minus(self, x):
        p = self.char
        rest = np.array(x, dtype=np.int64)
        out = np.zeros_like(rest)
        scale = 1
        for j in range(self.degree):
            d = rest % p
            rest = rest // p
            out += ((int(j == 0) - d) % p) * scale
            scale *= p
        return out

    def exponent_of(self, a: int) -> int:
        return a % self.order

    def primitive_elements(self) -> PrimitiveRootSet:
        return PrimitiveRootSet(self.order, tuple(self.primitive_exponents()))


def field_of_size(q: int):
    """A table field of size q: prime, binary, or small odd prime power."""
    if is_prime(q):
        return PrimeField(q)
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, m),) = fac.items()
    if p == 2:
        return binary_field(m)
    return PrimePowerField(p, m)
