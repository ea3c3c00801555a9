"""Residue fields F_q with canonical generators and ell-th power-residue
index tables.

A table realizes the order-ell character chi at one prime above p: it maps
each field element (enumerated as an integer) to its discrete log mod ell
with respect to a canonical generator.  The canonical choices -- least
primitive root for prime fields, least irreducible polynomial and least
generator for extensions -- implicitly fix which prime of Q(mu_ell) above p
the character belongs to.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import sympy

from .arith import multiplicative_order, primitive_root, residue_degree

SENTINEL = 255  # index value for lambda = 0
DEFAULT_TABLE_CAP = 1 << 27
_WALK_BLOCK = 4096


class TableCapError(RuntimeError):
    """Extension table would exceed the configured cap."""

    def __init__(self, p: int, f: int, cap: int):
        self.needed = p**f
        super().__init__(
            f"table for q = {p}^{f} = {self.needed} exceeds cap {cap}; "
            f"raise the cap to at least {self.needed} to proceed"
        )


@dataclass(frozen=True)
class PrimeOfF:
    """A prime of F = Q(mu_ell) above p, as (p, residue degree, Galois twist).

    The twist t runs over the smallest representatives of the cosets of
    <p> in (Z/ell)^*; t = 1 is the canonical prime the tables realize.
    """

    p: int
    f: int
    t: int
    q: int


def primes_above(p: int, ell: int) -> list[PrimeOfF]:
    """The (ell-1)/f_p primes of Q(mu_ell) above p, one per coset of <p>
    in (Z/ell)^*.  The ramified p = ell gives an empty list (its Euler
    factors are trivially 1)."""
    if p % ell == 0:
        return []
    f = residue_degree(p, ell)
    subgroup = {pow(p, i, ell) for i in range(f)}
    reps = []
    seen: set[int] = set()
    for t in range(1, ell):
        if t in seen:
            continue
        coset = {t * h % ell for h in subgroup}
        seen |= coset
        reps.append(t)
    return [PrimeOfF(p, f, t, p**f) for t in reps]


class FqTable:
    """Index table for F_q, q = p^f, with ell | q - 1.

    index[e] is the discrete log of element e mod ell (SENTINEL at 0);
    one_minus[e] encodes 1 - e.  Extension elements are integers in
    [0, p^f) read as base-p coefficient vectors of their polynomial
    representatives, low digit first.
    """

    def __init__(
        self,
        p: int,
        f: int,
        ell: int,
        generator: int,
        index: np.ndarray,
        one_minus: np.ndarray,
        irreducible: tuple[int, ...] | None,
    ):
        self.p = p
        self.f = f
        self.q = p**f
        self.ell = ell
        self.generator = generator
        self.index = index
        self.one_minus = one_minus
        self.irreducible = irreducible  # monic, as low-first digit tuple of length f+1

    # -- element arithmetic (small-q convenience; the hot path is the table) --

    def digits(self, e: int) -> list[int]:
        out = []
        for _ in range(self.f):
            e, r = divmod(e, self.p)
            out.append(r)
        return out

    def encode(self, digits: list[int]) -> int:
        acc = 0
        for d in reversed(digits):
            acc = acc * self.p + d % self.p
        return acc

    def add(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        return self.encode([x + y for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        return self.encode([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.f == 1:
            return a * b % self.p
        prod = _poly_mulmod(self.digits(a), self.digits(b), self.irreducible, self.p)
        return self.encode(prod)

    def one_minus_block(self, start: int, stop: int) -> np.ndarray:
        """1 - e for the element ids in [start, stop), as an array."""
        if self.one_minus is not None:
            return self.one_minus[start:stop]
        return _ext_one_minus(self.p, self.f, start, stop)

    def pow(self, a: int, n: int) -> int:
        acc = 1 if self.f == 1 else self.encode([1] + [0] * (self.f - 1))
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc


def build_prime_field_table(p: int, ell: int, generator: int | None = None) -> FqTable:
    """Index table for F_p, p = 1 mod ell, normalized by the least primitive
    root (or an explicitly supplied one, for normalization experiments)."""
    if p % ell != 1:
        raise ValueError(f"no character of order {ell} on F_{p}^* (p != 1 mod ell)")
    if p >= 1 << 31:
        raise ValueError("p too large for the int64 table kernel")
    if generator is None:
        g = primitive_root(p)
    else:
        g = generator
        if multiplicative_order(g, p) != p - 1:
            raise ValueError(f"{g} is not a primitive root mod {p}")
    powers = _prime_power_walk(p, g)
    index = np.full(p, SENTINEL, dtype=np.uint8)
    index[powers] = (np.arange(p - 1, dtype=np.int64) % ell).astype(np.uint8)
    one_minus = (1 - np.arange(p, dtype=np.int64)) % p
    return FqTable(p, 1, ell, g, index, one_minus, None)


def build_extension_field_table(
    p: int, f: int, ell: int, cap: int = DEFAULT_TABLE_CAP
) -> FqTable:
    """Index table for F_{p^f}, built on the canonical (least) monic
    irreducible of degree f and its canonical (least) generator."""
    if f != residue_degree(p, ell):
        raise ValueError(f"f={f} is not the residue degree of {p} mod {ell}")
    if f < 2:
        raise ValueError("use build_prime_field_table for f = 1")
    q = p**f
    if q > cap:
        raise TableCapError(p, f, cap)
    irr = _least_irreducible(p, f)
    g = _least_generator(p, f, irr)
    order = _ext_power_walk(p, f, irr, g)
    index = np.full(q, SENTINEL, dtype=np.uint8)
    index[order] = (np.arange(q - 1, dtype=np.int64) % ell).astype(np.uint8)
    # one_minus is synthesized chunkwise on demand (8 bytes/element would
    # dominate the table's 1 byte/element budget at large q)
    return FqTable(p, f, ell, g, index, None, irr)


def build_table(p: int, f: int, ell: int, cap: int = DEFAULT_TABLE_CAP) -> FqTable:
    if f == 1:
        return build_prime_field_table(p, ell)
    return build_extension_field_table(p, f, ell, cap)


# -- prime-field generator walk -------------------------------------------


def _prime_power_walk(p: int, g: int, block: int = _WALK_BLOCK) -> np.ndarray:
    """g^0, g^1, ..., g^{p-2} mod p, computed blockwise so the sequential
    dependency costs O(p / block) numpy passes."""
    n = p - 1
    powers = np.empty(n, dtype=np.int64)
    b = min(block, n)
    acc = 1
    for j in range(b):
        powers[j] = acc
        acc = acc * g % p
    gb = pow(g, b, p)
    for start in range(b, n, b):
        stop = min(start + b, n)
        np.mod(powers[start - b : start - b + (stop - start)] * gb, p, out=powers[start:stop])
    return powers


# -- extension fields ------------------------------------------------------


def _poly_mulmod(
    a: list[int], b: list[int], irr: tuple[int, ...], p: int
) -> list[int]:
    """(a * b) mod irr over F_p; a, b low-first of length f, irr monic of
    degree f."""
    f = len(irr) - 1
    conv = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] += x * y
    for d in range(2 * f - 2, f - 1, -1):
        c = conv[d] % p
        if c:
            # X^d = X^{d-f} * (X^f mod irr) = -X^{d-f} * irr[:f]
            for i in range(f):
                conv[d - f + i] -= c * irr[i]
        conv[d] = 0
    return [c % p for c in conv[:f]]


def _least_irreducible(p: int, f: int) -> tuple[int, ...]:
    """The canonical monic irreducible of degree f over F_p: smallest
    constant-to-leading digit vector in base-p integer order."""
    for m in range(p**f):
        low = []
        e = m
        for _ in range(f):
            e, r = divmod(e, p)
            low.append(r)
        irr = tuple(low) + (1,)
        if _is_irreducible(irr, p):
            return irr
    raise RuntimeError("no irreducible found (unreachable)")


def _is_irreducible(irr: tuple[int, ...], p: int) -> bool:
    """Rabin's test: degree-f monic poly is irreducible iff x^{p^f} == x
    mod irr and gcd(x^{p^{f/r}} - x, irr) = 1 for every prime r | f."""
    f = len(irr) - 1
    x = [0, 1] + [0] * (f - 2) if f > 1 else [0]
    acc = list(x)
    powers = {}
    for d in range(1, f + 1):
        acc = _poly_powmod(acc, p, irr, p)
        powers[d] = list(acc)
    if powers[f] != x:
        return False
    prime_divs = {r for r in range(2, f + 1) if f % r == 0 and sympy.isprime(r)}
    for r in prime_divs:
        diff = [a - b for a, b in zip(powers[f // r], x)]
        if _poly_gcd_degree(diff, list(irr), p) != 0:
            return False
    return True


def _poly_gcd_degree(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd(a, b) over F_p (0 for coprime)."""

    def trim(v: list[int]) -> list[int]:
        v = [c % p for c in v]
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            coef = a[-1] * inv % p
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - coef * c) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else 0


def _poly_powmod(a: list[int], n: int, irr: tuple[int, ...], p: int) -> list[int]:
    f = len(irr) - 1
    acc = [1] + [0] * (f - 1)
    base = list(a)
    while n:
        if n & 1:
            acc = _poly_mulmod(acc, base, irr, p)
        base = _poly_mulmod(base, base, irr, p)
        n >>= 1
    return acc


def _least_generator(p: int, f: int, irr: tuple[int, ...]) -> int:
    """Smallest element (integer enumeration) generating F_{p^f}^*."""
    q = p**f
    tmp = FqTable(p, f, 1, 0, None, None, irr)  # arithmetic only
    prime_divs = list(sympy.factorint(q - 1))
    for g in range(2, q):
        if all(tmp.pow(g, (q - 1) // r) != 1 for r in prime_divs):
            return g
    raise RuntimeError("no generator found (unreachable)")


def _ext_power_walk(
    p: int, f: int, irr: tuple[int, ...], g: int, block: int = _WALK_BLOCK
) -> np.ndarray:
    """Element ids of g^0 ... g^{q-2}, blockwise on digit matrices."""
    q = p**f
    n = q - 1
    b = min(block, n)
    # reduction table: X^{f+i} mod irr as a digit vector, i = 0..f-2
    red = np.zeros((2 * f - 1, f), dtype=np.int64)
    cur = [(-irr[i]) % p for i in range(f)]  # X^f mod irr
    red[f] = cur
    for d in range(f + 1, 2 * f - 1):
        shifted = [0] + cur[:-1]
        top = cur[-1]
        nxt = [(shifted[i] + top * ((-irr[i]) % p)) % p for i in range(f)]
        red[d] = nxt
        cur = nxt

    tmp = FqTable(p, f, 1, g, None, None, irr)
    gd = np.array(tmp.digits(g), dtype=np.int64)

    digitblock = np.empty((b, f), dtype=np.int64)
    e = tmp.encode([1] + [0] * (f - 1))
    for j in range(b):
        digitblock[j] = tmp.digits(e)
        e = tmp.mul(e, g)
    gb_digits = np.array(tmp.digits(tmp.pow(g, b)), dtype=np.int64)

    pvec = p ** np.arange(f, dtype=np.int64)
    out = np.empty(n, dtype=np.int64 if q >= 1 << 31 else np.int32)
    out[:b] = digitblock @ pvec
    pos = b
    blk = digitblock
    while pos < n:
        width = min(b, n - pos)
        conv = np.zeros((blk.shape[0], 2 * f - 1), dtype=np.int64)
        for i in range(f):
            col = blk[:, i]
            for j in range(f):
                if gb_digits[j]:
                    conv[:, i + j] += col * gb_digits[j]
        for d in range(2 * f - 2, f - 1, -1):
            c = conv[:, d] % p
            conv[:, :f] += c[:, None] * red[d][None, :]
        blk = conv[:, :f] % p
        out[pos : pos + width] = (blk @ pvec)[:width]
        pos += width
    return out


def _ext_one_minus(p: int, f: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """1 - e digitwise for element ids in [start, stop)."""
    if stop is None:
        stop = p**f
    e = np.arange(start, stop, dtype=np.int64)
    om = np.zeros(stop - start, dtype=np.int64)
    pk = 1
    for i in range(f):
        ci = (e // pk) % p
        ti = (1 - ci) % p if i == 0 else (-ci) % p
        om += ti * pk
        pk *= p
    return om
