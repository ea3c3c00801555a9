"""Exact arithmetic in Z[zeta_ell] on the power basis.

Elements are a0 + a1*zeta + ... + a_{ell-2}*zeta^{ell-2} with arbitrary
precision integer coefficients; zeta^{ell-1} is eliminated eagerly via
1 + zeta + ... + zeta^{ell-1} = 0, so representations are unique and
equality is coefficient-wise.  Jacobi sums live here, and the whole point
of the module is that |J|^2 = q can be checked with zero tolerance.
"""

from __future__ import annotations

import cmath
import json
import math
from typing import Iterable


class CycInt:
    """An element of Z[zeta_ell] on the power basis 1, zeta, ..., zeta^{ell-2}."""

    __slots__ = ("ell", "coeffs")

    def __init__(self, ell: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if ell < 3:
            raise ValueError("ell must be >= 3")
        if len(coeffs) != ell - 1:
            raise ValueError(f"need {ell - 1} coefficients, got {len(coeffs)}")
        self.ell = ell
        self.coeffs = coeffs

    # -- construction ------------------------------------------------------

    @classmethod
    def from_exponents(cls, ell: int, by_exponent: Iterable[int]) -> "CycInt":
        """Build from a length-ell vector indexed by the exponent of zeta,
        reducing zeta^{ell-1} = -(1 + zeta + ... + zeta^{ell-2})."""
        vec = list(by_exponent)
        if len(vec) != ell:
            raise ValueError(f"need {ell} exponent slots, got {len(vec)}")
        top = vec[ell - 1]
        return cls(ell, [vec[j] - top for j in range(ell - 1)])

    @classmethod
    def zero(cls, ell: int) -> "CycInt":
        return cls(ell, [0] * (ell - 1))

    @classmethod
    def one(cls, ell: int) -> "CycInt":
        return cls.integer(ell, 1)

    @classmethod
    def integer(cls, ell: int, n: int) -> "CycInt":
        return cls(ell, [n] + [0] * (ell - 2))

    @classmethod
    def zeta(cls, ell: int, power: int = 1) -> "CycInt":
        vec = [0] * ell
        vec[power % ell] = 1
        return cls.from_exponents(ell, vec)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "CycInt") -> None:
        if self.ell != other.ell:
            raise ValueError(f"mixed levels {self.ell} and {other.ell}")

    def __add__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.ell, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        return CycInt(self.ell, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycInt":
        return CycInt(self.ell, [-a for a in self.coeffs])

    def __mul__(self, other: "CycInt") -> "CycInt":
        self._check(other)
        ell = self.ell
        acc = [0] * ell
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    acc[(i + j) % ell] += a * b
        return CycInt.from_exponents(ell, acc)

    def scale(self, n: int) -> "CycInt":
        return CycInt(self.ell, [n * a for a in self.coeffs])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CycInt)
            and self.ell == other.ell
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ell, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(ell={self.ell}, coeffs={list(self.coeffs)})"

    # -- Galois action and derived quantities ------------------------------

    def galois(self, t: int) -> "CycInt":
        """Apply sigma_t : zeta -> zeta^t, for t a unit mod ell."""
        ell = self.ell
        t = t % ell
        if t == 0:
            raise ValueError("t must be a unit mod ell")
        acc = [0] * ell
        for j, a in enumerate(self.coeffs):
            acc[t * j % ell] += a
        return CycInt.from_exponents(ell, acc)

    def conj(self) -> "CycInt":
        """Complex conjugation sigma_{-1}."""
        return self.galois(self.ell - 1)

    def abs_square(self) -> "CycInt":
        """a * sigma_{-1}(a); for a Jacobi sum at a prime away from ell this
        is the rational integer q."""
        return self * self.conj()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def embed(self, t: int = 1) -> complex:
        """Complex embedding zeta -> exp(2*pi*i*t/ell), double precision.

        Good to ~1e-9 relative for Jacobi-sum-sized inputs; exactness lives
        upstream in the integer representation.
        """
        ell = self.ell
        if math.gcd(t, ell) != 1:
            raise ValueError("t must be a unit mod ell")
        return sum(
            a * cmath.exp(2j * cmath.pi * t * j / ell)
            for j, a in enumerate(self.coeffs)
        )

    # -- serialization -----------------------------------------------------

    def to_strings(self) -> list[str]:
        """Coefficients as exact decimal strings (the wire format)."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, ell: int, strings: Iterable[str]) -> "CycInt":
        return cls(ell, [int(s) for s in strings])

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    @classmethod
    def from_json(cls, ell: int, payload: str) -> "CycInt":
        return cls.from_strings(ell, json.loads(payload))


def galois_apply(t: int, a: CycInt) -> CycInt:
    return a.galois(t)


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def abs_square(a: CycInt) -> CycInt:
    return a.abs_square()


def embed(a: CycInt, t: int = 1) -> complex:
    return a.embed(t)
