"""Prime generation and elementary multiplicative arithmetic.

Everything downstream (index tables, Jacobi sums, Euler products) enumerates
rational primes and needs multiplicative orders mod small primes; this module
is that substrate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
import sympy

DEFAULT_SEGMENT = 1 << 20


def sieve_primes(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Yield every rational prime p <= limit, in increasing order.

    Segmented Eratosthenes: memory stays O(sqrt(limit) + segment_size)
    regardless of limit.  limit < 2 gives an empty stream.
    """
    if limit < 2:
        return
    root = math.isqrt(limit)
    base = _naive_sieve(root)
    yield from (p for p in base if p <= limit)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + segment_size - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            start = ((lo + p - 1) // p) * p
            seg[start - lo :: p] = False
        for off in np.nonzero(seg)[0]:
            yield lo + int(off)
        lo = hi + 1


def _naive_sieve(limit: int) -> list[int]:
    """Plain sieve of Eratosthenes up to limit (used for the base primes)."""
    if limit < 2:
        return []
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return [int(p) for p in np.nonzero(flags)[0]]


def residue_degree(p: int, ell: int) -> int:
    """Multiplicative order of p mod ell: the residue degree f_p of primes
    above p in Q(mu_ell).  Always divides ell - 1.

    p == ell (the ramified prime) is rejected; callers handle it separately.
    """
    if p % ell == 0:
        raise ValueError(f"p={p} is ramified in Q(mu_{ell}); no residue degree")
    f = 1
    acc = p % ell
    while acc != 1:
        acc = acc * p % ell
        f += 1
    return f


def primitive_root(p: int) -> int:
    """The LEAST primitive root mod p.

    Determinism matters: this choice pins the prime of Q(mu_ell) above p
    implicitly used by the residue-symbol tables.
    """
    return next(primitive_roots(p))


def primitive_roots(p: int) -> Iterator[int]:
    """Primitive roots mod p in increasing order (exhaustive search with
    order checks via the factorization of p - 1)."""
    if p == 2:
        yield 1
        return
    n = p - 1
    prime_divs = list(sympy.factorint(n))
    for g in range(2, p):
        if all(pow(g, n // r, p) != 1 for r in prime_divs):
            yield g


def multiplicative_order(a: int, p: int) -> int:
    """Order of a in F_p^*, via the factorization of p - 1."""
    if a % p == 0:
        raise ValueError("a must be a unit mod p")
    order = p - 1
    for r, e in sympy.factorint(p - 1).items():
        for _ in range(e):
            if pow(a, order // r, p) == 1:
                order //= r
            else:
                break
    return order


@dataclass(frozen=True)
class LevelConfig:
    """The degree ell of the Fermat curve and the two genera it determines."""

    ell: int

    def __post_init__(self) -> None:
        if self.ell < 3 or self.ell % 2 == 0 or not sympy.isprime(self.ell):
            raise ValueError(f"ell={self.ell} must be an odd prime >= 3")

    @property
    def genus_g(self) -> int:
        """Genus of the degree-ell Fermat curve."""
        return (self.ell - 1) * (self.ell - 2) // 2

    @property
    def genus_gp(self) -> int:
        """Genus of each superelliptic quotient curve."""
        return (self.ell - 1) // 2
