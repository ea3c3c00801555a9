"""Exact Jacobi sums J_{(k1,k2)} at primes of Q(mu_ell).

The kernel accumulates, for lambda outside {0, 1}, the counts

    c_j = #{lambda : k1*ind(lambda) + k2*ind(1-lambda) = j mod ell}

and returns -sum_j c_j zeta^j; the O(q) loop touches only byte-table
lookups, the ell-1 big-integer operations happen once per sum.  Only the
orbit representatives (k, 1) are computed per prime; everything else is
derived by the exact Galois action, which is both an (ell-1)x speedup and
a built-in consistency check.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .arith import residue_degree
from .cyclotomic import CycInt
from .fields import (
    DEFAULT_TABLE_CAP,
    SENTINEL,
    FqTable,
    build_prime_field_table,
    build_table,
)

log = logging.getLogger(__name__)


def index_pairs(ell: int) -> list[tuple[int, int]]:
    """All (k1, k2) in G x G with k1 + k2 != 0 mod ell; size (ell-1)(ell-2)."""
    return [
        (k1, k2)
        for k1 in range(1, ell)
        for k2 in range(1, ell)
        if (k1 + k2) % ell != 0
    ]


def orbit_reps(ell: int) -> list[tuple[int, int]]:
    """One representative (k, 1) per G-orbit of the index set."""
    return [(k, 1) for k in range(1, ell - 1)]


@dataclass(frozen=True)
class JacobiRecord:
    ell: int
    p: int
    f: int
    k1: int
    k2: int
    value: CycInt


def jacobi_sum(table: FqTable, k1: int, k2: int) -> CycInt:
    """Exact Jacobi sum J_{(k1,k2)} at the prime the table realizes."""
    ell = table.ell
    k1 %= ell
    k2 %= ell
    if k1 == 0 or k2 == 0 or (k1 + k2) % ell == 0:
        raise ValueError(f"({k1},{k2}) outside the index set for ell={ell}")
    counts = np.zeros(ell, dtype=np.int64)
    ind = table.index
    q = table.q
    block = 1 << 22
    for start in range(0, q, block):
        stop = min(start + block, q)
        a = ind[start:stop]
        b = ind[table.one_minus_block(start, stop)]
        ok = (a != SENTINEL) & (b != SENTINEL)  # drops lambda in {0, 1}
        j = (k1 * a[ok].astype(np.int16) + k2 * b[ok].astype(np.int16)) % ell
        counts += np.bincount(j, minlength=ell)
    return CycInt.from_exponents(ell, [-int(c) for c in counts])


def jacobi_sums_from_table(table: FqTable) -> dict[tuple[int, int], CycInt]:
    """All (ell-1)(ell-2) Jacobi sums at the table's prime: representatives
    by the kernel, the rest by sigma_t."""
    ell = table.ell
    reps = {k: jacobi_sum(table, k, 1) for k in range(1, ell - 1)}
    return _expand_orbits(ell, reps)


def _expand_orbits(ell: int, reps: dict[int, CycInt]) -> dict[tuple[int, int], CycInt]:
    out: dict[tuple[int, int], CycInt] = {}
    for k, base in reps.items():
        for t in range(1, ell):
            out[(k * t % ell, t)] = base.galois(t)
    return out


class JacobiCache:
    """Append-only JSONL persistence of Jacobi sums.

    One record per line: {"l":3,"p":7,"f":1,"k1":1,"k2":1,"c":["-2","-3"]},
    coefficients on the power basis as exact decimal strings.  Corrupt
    lines are skipped with a warning and the value recomputed.
    """

    def __init__(self, path: str | None):
        self.path = path
        self._lock = threading.Lock()
        self._data: dict[tuple[int, int, int, int, int], CycInt] = {}
        if path and os.path.exists(path):
            self._load()

    def _load(self) -> None:
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    key = (obj["l"], obj["p"], obj["f"], obj["k1"], obj["k2"])
                    self._data[key] = CycInt.from_strings(obj["l"], obj["c"])
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning(
                        "skipping corrupt cache line %d in %s: %s",
                        lineno,
                        self.path,
                        exc,
                    )

    def __len__(self) -> int:
        return len(self._data)

    def get(self, ell: int, p: int, f: int, k1: int, k2: int) -> CycInt | None:
        return self._data.get((ell, p, f, k1, k2))

    def put(self, record: JacobiRecord) -> None:
        key = (record.ell, record.p, record.f, record.k1, record.k2)
        with self._lock:
            if key in self._data:
                return
            self._data[key] = record.value
            if self.path:
                obj = {
                    "l": record.ell,
                    "p": record.p,
                    "f": record.f,
                    "k1": record.k1,
                    "k2": record.k2,
                    "c": record.value.to_strings(),
                }
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(obj) + "\n")


class JacobiProvider:
    """Complete Jacobi data per rational prime, at the canonical prime above
    it, with the even-residue-degree fast path and an optional cache.

    Values at the twisted prime sigma_t(frp) are lookups in the same map:
    J_{(a,b)} at twist t equals J_{(at,bt)} at the canonical prime.
    """

    def __init__(
        self,
        ell: int,
        cap: int = DEFAULT_TABLE_CAP,
        cache: JacobiCache | None = None,
    ):
        self.ell = ell
        self.cap = cap
        self.cache = cache
        self.table_builds = 0  # instrumentation for warm-cache reruns
        self._memo: dict[int, dict[tuple[int, int], CycInt]] = {}
        self._memo_lock = threading.Lock()

    def pairs_at(self, p: int) -> dict[tuple[int, int], CycInt]:
        """Map (k1, k2) -> J_{(k1,k2)} at the canonical prime above p."""
        ell = self.ell
        if p % ell == 0:
            raise ValueError(f"p = {p} is ramified; no Jacobi data")
        f = residue_degree(p, ell)
        if f % 2 == 0:
            # even residue degree forces every Jacobi sum to -sqrt(q) = -p^{f/2}
            val = CycInt.integer(ell, -(p ** (f // 2)))
            return {pair: val for pair in index_pairs(ell)}
        hit = self._memo.get(p)
        if hit is not None:
            return hit
        reps: dict[int, CycInt] = {}
        missing = []
        # NB: the cache defines __len__, so test against None, not truthiness
        for k in range(1, ell - 1):
            cached = self.cache.get(ell, p, f, k, 1) if self.cache is not None else None
            if cached is not None:
                reps[k] = cached
            else:
                missing.append(k)
        if missing:
            table = build_table(p, f, ell, self.cap)
            self.table_builds += 1
            for k in missing:
                value = jacobi_sum(table, k, 1)
                reps[k] = value
                if self.cache is not None:
                    self.cache.put(JacobiRecord(ell, p, f, k, 1, value))
        expanded = _expand_orbits(ell, reps)
        with self._memo_lock:
            self._memo[p] = expanded
        return expanded

    def precompute(self, primes: list[int], threads: int = 1) -> None:
        """Warm the cache for many primes; results are independent of the
        thread count because consumers read from the (keyed) cache."""
        if self.cache is None:
            self.cache = JacobiCache(None)
        if threads <= 1:
            for p in primes:
                self.pairs_at(p)
            return
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(self._precompute_one, primes))

    def _precompute_one(self, p: int) -> None:
        ell = self.ell
        f = residue_degree(p, ell)
        if f % 2 == 0:
            return
        table = None
        for k in range(1, ell - 1):
            if self.cache.get(ell, p, f, k, 1) is not None:
                continue
            if table is None:
                table = build_table(p, f, ell, self.cap)
                self.table_builds += 1
            self.cache.put(JacobiRecord(ell, p, f, k, 1, jacobi_sum(table, k, 1)))


def jacobi_sums_at_p(
    p: int, ell: int, cap: int = DEFAULT_TABLE_CAP
) -> dict[tuple[int, int, int], CycInt]:
    """Jacobi data for every prime above p and every index pair, keyed by
    (twist t, k1, k2)."""
    provider = JacobiProvider(ell, cap)
    canonical = provider.pairs_at(p)
    from .fields import primes_above

    out: dict[tuple[int, int, int], CycInt] = {}
    for pr in primes_above(p, ell):
        for (k1, k2) in index_pairs(ell):
            out[(pr.t, k1, k2)] = canonical[(k1 * pr.t % ell, k2 * pr.t % ell)]
    return out
