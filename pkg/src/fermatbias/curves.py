"""Point counts and local Frobenius polynomials for the Fermat curve
X^ell + Y^ell = Z^ell and its superelliptic quotients v^ell = u(u+1)^{ell-k-1}.

Brute-force counts are the independent oracle; Jacobi-sum traces are the
fast exact path.  Their agreement (a_p = p + 1 - #points) is the central
cross-check of the artifact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import residue_degree
from .cyclotomic import CycInt
from .fields import FqTable, PrimeOfF, build_extension_field_table
from .jacobi import JacobiProvider, index_pairs

DEFAULT_ORACLE_CAP = 10**5


@dataclass(frozen=True)
class CurveId:
    """The Fermat curve of degree ell (k is None) or its quotient C_k."""

    ell: int
    k: int | None = None

    def __post_init__(self) -> None:
        if self.k is not None and not 1 <= self.k <= self.ell - 2:
            raise ValueError(f"k={self.k} out of range for ell={self.ell}")

    @property
    def is_fermat(self) -> bool:
        return self.k is None

    @property
    def genus(self) -> int:
        ell = self.ell
        return (ell - 1) * (ell - 2) // 2 if self.is_fermat else (ell - 1) // 2

    @property
    def label(self) -> str:
        return "fermat" if self.is_fermat else f"quotient{self.k}"

    def pair_set(self) -> list[tuple[int, int]]:
        """Index pairs whose eigenlines make up H^1 of this curve."""
        ell = self.ell
        if self.is_fermat:
            return index_pairs(ell)
        return [(self.k * t % ell, t) for t in range(1, ell)]


@dataclass(frozen=True)
class ApRecord:
    p: int
    curve: CurveId
    ap: int

    def weil_ok(self) -> bool:
        return self.ap * self.ap <= 4 * self.curve.genus**2 * self.p


# -- brute-force oracles ---------------------------------------------------


def _pow_mod_array(a: np.ndarray, e: int, p: int) -> np.ndarray:
    acc = np.ones_like(a)
    base = a % p
    while e:
        if e & 1:
            acc = acc * base % p
        base = base * base % p
        e >>= 1
    return acc


def count_fermat_bruteforce(p: int, ell: int, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Projective F_p-points of X^ell + Y^ell = Z^ell by enumeration."""
    _check_oracle(p, ell, cap)
    x = np.arange(p, dtype=np.int64)
    xl = _pow_mod_array(x, ell, p)
    cnt = np.bincount(xl, minlength=p)
    affine = int(cnt[(1 - xl) % p].sum())
    at_infinity = int(cnt[(p - 1) % p])  # solutions of x^ell = -1, point (x : 1 : 0)
    return affine + at_infinity


def count_quotient_bruteforce(
    p: int, ell: int, k: int, cap: int = DEFAULT_ORACLE_CAP
) -> int:
    """F_p-points of the smooth model of v^ell = u(u+1)^{ell-k-1}: affine
    solutions plus the single totally ramified point over u = infinity
    (gcd(ell, ell - k) = 1)."""
    _check_oracle(p, ell, cap)
    if not 1 <= k <= ell - 2:
        raise ValueError(f"k={k} out of range")
    u = np.arange(p, dtype=np.int64)
    rhs = u * _pow_mod_array((u + 1) % p, ell - k - 1, p) % p
    v = np.arange(p, dtype=np.int64)
    cnt = np.bincount(_pow_mod_array(v, ell, p), minlength=p)
    affine = int(cnt[rhs].sum())
    return affine + 1


def count_bruteforce(p: int, curve: CurveId, cap: int = DEFAULT_ORACLE_CAP) -> int:
    if curve.is_fermat:
        return count_fermat_bruteforce(p, curve.ell, cap)
    return count_quotient_bruteforce(p, curve.ell, curve.k, cap)


def count_fermat_extension(p: int, f: int, ell: int) -> int:
    """Projective F_{p^f}-points of the Fermat curve, by enumeration in the
    extension field.  Small q only; validates the over-Q local factors."""
    table = build_extension_field_table(p, f, ell)
    q = table.q
    powers = [table.pow(e, ell) for e in range(q)]
    cnt = [0] * q
    for v in powers:
        cnt[v] += 1
    one = table.encode([1] + [0] * (f - 1))
    affine = sum(cnt[table.sub(one, xl)] for xl in powers)
    minus_one = table.neg(one)
    return affine + cnt[minus_one]


def _check_oracle(p: int, ell: int, cap: int) -> None:
    if p % ell == 0:
        raise ValueError(f"p = {p} is the ramified prime for ell = {ell}")
    if p > cap:
        raise ValueError(f"p = {p} above oracle cap {cap}; the oracle is for validation")


# -- Jacobi-sum traces -----------------------------------------------------


def ap_from_jacobi(p: int, curve: CurveId, provider: JacobiProvider) -> int:
    """a_p by the exact trace formula: sum of Jacobi sums over the curve's
    index pairs for p = 1 mod ell, and 0 otherwise."""
    ell = curve.ell
    if p % ell == 0:
        raise ValueError(f"p = {p} is ramified")
    if p % ell != 1:
        return 0
    pairs = provider.pairs_at(p)
    total = CycInt.zero(ell)
    for pair in curve.pair_set():
        total = total + pairs[pair]
    if not total.is_rational():
        raise ArithmeticError(
            f"non-integer Frobenius trace at p={p}, curve={curve.label}: {total!r}"
        )
    return total.rational_value()


# -- local factors ---------------------------------------------------------


def _poly_mul_cyc(a: list[CycInt], b: list[CycInt], ell: int) -> list[CycInt]:
    out = [CycInt.zero(ell) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def local_factor_over_F(
    prime: PrimeOfF, curve: CurveId, provider: JacobiProvider
) -> list[CycInt]:
    """Coefficients (ascending in T) of prod (1 - J_{(k1,k2)}(frp) T) over
    the curve's index pairs, exact in Z[zeta_ell]."""
    ell = curve.ell
    if prime.p % ell == 0:
        return [CycInt.one(ell)]
    pairs = provider.pairs_at(prime.p)
    poly = [CycInt.one(ell)]
    for (a, b) in curve.pair_set():
        j = pairs[(a * prime.t % ell, b * prime.t % ell)]
        poly = _poly_mul_cyc(poly, [CycInt.one(ell), -j], ell)
    return poly


def frobenius_orbits(p: int, curve: CurveId) -> list[list[tuple[int, int]]]:
    """Orbits of (k1, k2) -> (p*k1, p*k2) on the curve's index pairs; each
    has size f_p = order of p mod ell."""
    ell = curve.ell
    f = residue_degree(p, ell)
    remaining = set(curve.pair_set())
    orbits = []
    while remaining:
        a, b = min(remaining)
        orbit = []
        cur = (a, b)
        for _ in range(f):
            orbit.append(cur)
            remaining.discard(cur)
            cur = (cur[0] * p % ell, cur[1] * p % ell)
        if cur != (a, b):
            raise ArithmeticError(f"orbit of {(a, b)} under p={p} has size != {f}")
        orbits.append(orbit)
    return orbits


def local_factor_over_Q(
    p: int, curve: CurveId, provider: JacobiProvider
) -> list[int]:
    """Integer coefficients (ascending in T) of det(1 - Frob_p T | H^1) over
    Q: each <p>-orbit of eigenlines contributes 1 - J_O T^{f_p}, where J_O
    is the shared Jacobi sum of the orbit at the canonical prime."""
    ell = curve.ell
    if p % ell == 0:
        return [1]
    f = residue_degree(p, ell)
    pairs = provider.pairs_at(p)
    poly = [CycInt.one(ell)]
    for orbit in frobenius_orbits(p, curve):
        values = {pairs[pair] for pair in orbit}
        if len(values) != 1:
            raise ArithmeticError(
                f"orbit {orbit} at p={p} carries distinct Jacobi sums {values}"
            )
        j_orbit = values.pop()
        factor = [CycInt.one(ell)] + [CycInt.zero(ell)] * (f - 1) + [-j_orbit]
        poly = _poly_mul_cyc(poly, factor, ell)
    out = []
    for coeff in poly:
        if not coeff.is_rational():
            raise ArithmeticError(
                f"non-rational coefficient in the over-Q factor at p={p}: {coeff!r}"
            )
        out.append(coeff.rational_value())
    return out


def frobenius_eigenvalues_over_Q(
    p: int, curve: CurveId, provider: JacobiProvider
) -> list[complex]:
    """The 2*genus Frobenius eigenvalues over Q: for each orbit with value
    J_O and size f, the f complex f-th roots of J_O, ordered by argument."""
    ell = curve.ell
    f = residue_degree(p, ell)
    pairs = provider.pairs_at(p)
    eig: list[complex] = []
    for orbit in frobenius_orbits(p, curve):
        z = pairs[orbit[0]].embed(1)
        r = abs(z) ** (1.0 / f)
        theta = cmath.phase(z)
        roots = [r * cmath.exp(1j * (theta + 2 * math.pi * j) / f) for j in range(f)]
        eig.extend(sorted(roots, key=cmath.phase))
    return eig
