"""Partial Euler products at the critical point, Chebyshev-bias sums with
their I / II / III decomposition, and second-moment partial sums.

All products are accumulated as sums of principal-branch logs of the scalar
local factors; every factor is within distance < 1 of 1 for q >= 4, so no
branch ambiguity arises.  The order of vanishing m at the central point is
an input (default 0): no desk-scale computation can determine it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .arith import residue_degree, sieve_primes
from .curves import CurveId, ap_from_jacobi, frobenius_eigenvalues_over_Q
from .fields import PrimeOfF
from .jacobi import JacobiProvider

_FACTOR_EPS = 1e-14


@dataclass(frozen=True)
class SeriesSample:
    x: float
    value: float


@dataclass
class BiasDecomposition:
    """The finite-sum decomposition of -log prod det(1 - M q^{-1/2}) at
    cutoff x: linear, quadratic, and tail terms, with the tail's a-priori
    bound and the residue-degree split of the linear term."""

    x: float
    term_I: float
    term_II: float
    term_III: float
    term_I_f: dict[int, float]
    bound_III: float
    log_product_half: float
    m: int = 0


@dataclass
class AnalyticParams:
    """Assumed central vanishing orders; over F they are (ell-1) times the
    over-Q orders."""

    ell: int
    m: int = 0
    m0: int | None = None

    def __post_init__(self) -> None:
        if self.m0 is not None and self.m != (self.ell - 1) * self.m0:
            raise ValueError(f"m={self.m} must equal (ell-1)*m0={(self.ell - 1) * self.m0}")


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    residual_rms: float
    window: tuple[float, float]
    n_samples: int


def predicted_slope(curve: CurveId, m: int) -> float:
    """(genus - m)/(ell - 1): the conjectural loglog coefficient of the
    bias sum."""
    return (curve.genus - m) / (curve.ell - 1)


# -- enumeration of primes of F -------------------------------------------


def f_primes_upto(ell: int, x: float) -> list[tuple[int, int, int, int]]:
    """(q, p, f, multiplicity) for every rational p != ell with q = p^f <= x,
    sorted by (q, p); multiplicity = (ell-1)/f is the number of primes of F
    above p."""
    out = []
    for p in sieve_primes(int(x)):
        if p == ell:
            continue
        f = residue_degree(p, ell)
        q = p**f
        if q <= x:
            out.append((q, p, f, (ell - 1) // f))
    out.sort()
    return out


def psi_entries(p: int, curve: CurveId, provider: JacobiProvider, twist: int = 1) -> list[complex]:
    """Diagonal entries J_{(k1,k2)}(frp)/sqrt(q) at the prime above p with
    the given twist, in (k, t)-lexicographic order."""
    ell = curve.ell
    f = residue_degree(p, ell)
    sq = math.sqrt(p) ** f
    pairs = provider.pairs_at(p)
    return [
        pairs[(a * twist % ell, b * twist % ell)].embed(1) / sq
        for (a, b) in curve.pair_set()
    ]


def local_matrix(prime: PrimeOfF, curve: CurveId, provider: JacobiProvider) -> list[complex]:
    """Entries of the diagonal unitary M(frp); the zero matrix at frp | ell."""
    if prime.p % curve.ell == 0:
        return [0.0] * len(curve.pair_set())
    return psi_entries(prime.p, curve, provider, prime.t)


# -- partial Euler products ------------------------------------------------


def partial_euler_product(
    target: CurveId | tuple[int, int],
    s: complex,
    x: float,
    m: int,
    provider: JacobiProvider,
) -> complex:
    """(log x)^m * prod_{q_frp <= x} det(1 - M(frp) q^{-s})^{-1}.

    For a curve target the determinant runs over its diagonal entries; a
    (k, t) tuple selects the single Hecke character psi_{(kt,t)}.
    """
    ell = provider.ell
    log_sum = 0.0 + 0.0j
    for q, p, f, mult in f_primes_upto(ell, x):
        qs = q ** (-s)
        if isinstance(target, CurveId):
            entries = psi_entries(p, target, provider)
            # det is twist-invariant (the entry set is Galois-stable), so
            # one prime's determinant counts for all mult primes above p.
            local = 0.0 + 0.0j
            for e in entries:
                factor = 1 - e * qs
                if abs(factor) < _FACTOR_EPS:
                    raise ArithmeticError(f"local factor vanishes at p={p}, s={s}")
                local += cmath.log(factor)
            log_sum += mult * local
        else:
            k, t = target
            pairs = provider.pairs_at(p)
            sq = math.sqrt(p) ** f
            for prime_twist in _coset_reps(p, ell, f):
                a = k * t % ell
                e = pairs[(a * prime_twist % ell, t * prime_twist % ell)].embed(1) / sq
                factor = 1 - e * qs
                if abs(factor) < _FACTOR_EPS:
                    raise ArithmeticError(f"local factor vanishes at p={p}, s={s}")
                log_sum += cmath.log(factor)
    scale = math.log(x) ** m if m else 1.0
    return scale * cmath.exp(-log_sum)


def _coset_reps(p: int, ell: int, f: int) -> list[int]:
    subgroup = {pow(p, i, ell) for i in range(f)}
    reps, seen = [], set()
    for t in range(1, ell):
        if t not in seen:
            reps.append(t)
            seen.update(t * h % ell for h in subgroup)
    return reps


# -- the one-pass series engine -------------------------------------------


@dataclass
class SeriesRow:
    x: float
    bias_sum: float
    term_I: float
    term_II: float
    term_III: float
    term_I_f: dict[int, float]
    bound_III: float
    log_euler_product_s_half: float
    second_moment_F: float
    second_moment_Q: float


def compute_series(
    curve: CurveId,
    grid: list[float],
    provider: JacobiProvider,
    oracle_ap: dict[int, int] | None = None,
) -> list[SeriesRow]:
    """One ordered pass over the primes of F with q <= max(grid), sampling
    every running sum at each grid point.

    The tail term III uses the closed form -log(1 - e/sqrt(q)) - e/sqrt(q)
    - e^2/(2q) per unit eigenvalue, so the decomposition identity
    -log prod det = I + II + III is exact to rounding.  oracle_ap, when
    given, substitutes brute-force a_p values into the bias sum (they must
    agree with the traces; used for cross-validation).
    """
    ell = curve.ell
    grid = sorted(grid)
    x_max = grid[-1]
    events = f_primes_upto(ell, x_max)

    run_I = 0.0 + 0.0j
    run_II = 0.0 + 0.0j
    run_III = 0.0 + 0.0j
    run_logdet = 0.0 + 0.0j
    run_smF = 0.0 + 0.0j
    run_If: dict[int, float] = {}
    run_bound = 0.0
    bias_terms: list[float] = []
    twog = 2 * curve.genus

    # second moment over Q is indexed by the rational prime p <= x
    smq_events: list[tuple[int, float]] = []
    for p in sieve_primes(int(x_max)):
        if p == ell:
            continue
        if residue_degree(p, ell) > 2:
            continue  # orbits of size > 2 contribute a zero square-trace
        eig = frobenius_eigenvalues_over_Q(p, curve, provider)
        tr2 = sum((a / math.sqrt(p)) ** 2 for a in eig)
        smq_events.append((p, tr2.real / p))
    smq_events.sort()

    rows: list[SeriesRow] = []
    ei = 0
    si = 0
    run_smQ = 0.0
    for x in grid:
        while ei < len(events) and events[ei][0] <= x:
            q, p, f, mult = events[ei]
            sq = math.sqrt(q)
            entries = psi_entries(p, curve, provider)
            cI = sum(entries) / sq
            cII = sum(e * e for e in entries) / (2 * q)
            cIII = sum(
                -cmath.log(1 - e / sq) - e / sq - e * e / (2 * q) for e in entries
            )
            clog = sum(cmath.log(1 - e / sq) for e in entries)
            run_I += mult * cI
            run_II += mult * cII
            run_III += mult * cIII
            run_logdet += mult * clog
            run_smF += mult * sum(e * e for e in entries) / q
            run_If[f] = run_If.get(f, 0.0) + (mult * cI).real
            run_bound += mult * twog / q**1.5
            if f == 1:
                ap = (
                    oracle_ap[p]
                    if oracle_ap is not None
                    else ap_from_jacobi(p, curve, provider)
                )
                bias_terms.append(ap / p)
            ei += 1
        while si < len(smq_events) and smq_events[si][0] <= x:
            run_smQ += smq_events[si][1]
            si += 1
        rows.append(
            SeriesRow(
                x=x,
                bias_sum=math.fsum(bias_terms),
                term_I=run_I.real,
                term_II=run_II.real,
                term_III=run_III.real,
                term_I_f=dict(run_If),
                bound_III=run_bound,
                log_euler_product_s_half=(-run_logdet).real,
                second_moment_F=run_smF.real,
                second_moment_Q=run_smQ,
            )
        )
    return rows


def bias_sum(curve: CurveId, grid: list[float], provider: JacobiProvider) -> list[SeriesSample]:
    """Samples of sum_{p <= x} a_p / p; only p = 1 mod ell contribute."""
    rows = compute_series(curve, sorted(grid), provider)
    return [SeriesSample(r.x, r.bias_sum) for r in rows]


def bias_decomposition(
    curve: CurveId, x: float, provider: JacobiProvider, m: int = 0
) -> BiasDecomposition:
    row = compute_series(curve, [x], provider)[0]
    return BiasDecomposition(
        x=x,
        term_I=row.term_I,
        term_II=row.term_II,
        term_III=row.term_III,
        term_I_f=row.term_I_f,
        bound_III=row.bound_III,
        log_product_half=row.log_euler_product_s_half,
        m=m,
    )


def second_moment_partial(
    curve: CurveId,
    grid: list[float],
    provider: JacobiProvider,
    over: str = "F",
) -> list[SeriesSample]:
    """Partial sums of Tr(M(frp)^2)/q over F, or Tr(M(p)^2)/p over Q."""
    rows = compute_series(curve, sorted(grid), provider)
    if over == "F":
        return [SeriesSample(r.x, r.second_moment_F) for r in rows]
    if over == "Q":
        return [SeriesSample(r.x, r.second_moment_Q) for r in rows]
    raise ValueError("over must be 'F' or 'Q'")


# -- regression ------------------------------------------------------------


def loglog_fit(
    samples: list[SeriesSample], window: tuple[float, float] | None = None
) -> RegressionFit:
    """Ordinary least squares of y against log log x over the window."""
    if window is None:
        window = (min(s.x for s in samples), max(s.x for s in samples))
    lo, hi = window
    pts = [(s.x, s.value) for s in samples if lo <= s.x <= hi and s.x > math.e]
    if len(pts) < 3:
        raise ValueError(f"need >= 3 samples with x > e in window, got {len(pts)}")
    us = [math.log(math.log(x)) for x, _ in pts]
    ys = [y for _, y in pts]
    if max(us) - min(us) < 1e-12:
        raise ValueError("degenerate design: all loglog x equal")
    n = len(us)
    ubar = sum(us) / n
    ybar = sum(ys) / n
    suu = sum((u - ubar) ** 2 for u in us)
    suy = sum((u - ubar) * (y - ybar) for u, y in zip(us, ys))
    slope = suy / suu
    intercept = ybar - slope * ubar
    rss = sum((y - slope * u - intercept) ** 2 for u, y in zip(us, ys))
    return RegressionFit(slope, intercept, math.sqrt(rss / n), window, n)


def default_grid(x_max: float, x_min: float = 10.0, per_decade: int = 4) -> list[float]:
    """Geometric grid x = x_min * 10^{j/per_decade} up to x_max."""
    out = []
    j = 0
    while True:
        x = x_min * 10 ** (j / per_decade)
        if x > x_max * (1 + 1e-12):
            break
        out.append(round(x, 6))
        j += 1
    if out and out[-1] < x_max:
        out.append(float(x_max))
    return out
