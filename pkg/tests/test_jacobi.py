import json
import logging

import pytest

from fermatbias.cyclotomic import CycInt
from fermatbias.fields import build_extension_field_table, build_prime_field_table
from fermatbias.jacobi import (
    JacobiCache,
    JacobiProvider,
    JacobiRecord,
    _expand_orbits,
    index_pairs,
    jacobi_sum,
    jacobi_sums_at_p,
    jacobi_sums_from_table,
    orbit_reps,
)


def test_index_set_size():
    for ell in (3, 5, 7):
        pairs = index_pairs(ell)
        assert len(pairs) == (ell - 1) * (ell - 2)
        assert len(set(pairs)) == len(pairs)
        for k1, k2 in pairs:
            assert 1 <= k1 < ell and 1 <= k2 < ell and (k1 + k2) % ell != 0
    assert orbit_reps(5) == [(1, 1), (2, 1), (3, 1)]


def test_jacobi_sum_at_seven():
    t = build_prime_field_table(7, 3)
    j = jacobi_sum(t, 1, 1)
    # the two Galois-conjugate candidates of norm 7 with J = -1 mod 3
    assert j in (CycInt(3, [-2, -3]), CycInt(3, [1, 3]))
    assert j.abs_square() == CycInt.integer(3, 7)
    assert (j + j.conj()) == CycInt.integer(3, -1)  # trace is a_7(C) = -1


def test_jacobi_sum_modulus_various():
    for p, ell in ((13, 3), (11, 5), (31, 5), (29, 7), (43, 7)):
        t = build_prime_field_table(p, ell)
        for k in range(1, ell - 1):
            assert jacobi_sum(t, k, 1).abs_square() == CycInt.integer(ell, p)


def test_jacobi_sum_even_degree_table_path():
    # f even forces the rational value -sqrt(q)
    t = build_extension_field_table(2, 2, 3)
    assert jacobi_sum(t, 1, 1) == CycInt.integer(3, -2)
    t = build_extension_field_table(3, 4, 5)
    for k in range(1, 4):
        assert jacobi_sum(t, k, 1) == CycInt.integer(5, -9)


def test_jacobi_sum_odd_extension_degree():
    # ell = 7, p = 2, f = 3: a genuinely irrational sum of norm 8
    t = build_extension_field_table(2, 3, 7)
    j = jacobi_sum(t, 1, 1)
    assert j.abs_square() == CycInt.integer(7, 8)
    assert not j.is_rational()


def test_jacobi_sum_rejects_bad_pairs():
    t = build_prime_field_table(7, 3)
    for bad in ((0, 1), (1, 0), (1, 2), (2, 1)):
        with pytest.raises(ValueError):
            jacobi_sum(t, *bad)


def test_galois_equivariance_direct():
    t = build_prime_field_table(31, 5)
    sums = {pair: jacobi_sum(t, *pair) for pair in index_pairs(5)}
    for (k1, k2), j in sums.items():
        for s in range(1, 5):
            assert sums[(k1 * s % 5, k2 * s % 5)] == j.galois(s)


def test_expand_orbits_matches_full_table():
    t = build_prime_field_table(29, 7)
    full = {pair: jacobi_sum(t, *pair) for pair in index_pairs(7)}
    assert jacobi_sums_from_table(t) == full


def test_normalization_independence():
    # a different primitive root moves individual sums around but only
    # permutes them within Galois orbits: the multiset and the full trace
    # are invariants
    p, ell = 13, 3
    default = build_prime_field_table(p, ell)
    other = build_prime_field_table(p, ell, generator=6)  # second root of 13
    assert default.generator == 2
    a = jacobi_sums_from_table(default)
    b = jacobi_sums_from_table(other)
    assert sorted(v.coeffs for v in a.values()) == sorted(v.coeffs for v in b.values())
    total_a = CycInt.zero(ell)
    total_b = CycInt.zero(ell)
    for pair in index_pairs(ell):
        total_a = total_a + a[pair]
        total_b = total_b + b[pair]
    assert total_a == total_b  # the rational trace is normalization-free
    assert total_a.is_rational()


def test_provider_even_degree_fast_path():
    prov = JacobiProvider(3)
    pairs = prov.pairs_at(2)  # f = 2
    assert pairs[(1, 1)] == CycInt.integer(3, -2)
    assert prov.table_builds == 0
    prov5 = JacobiProvider(5)
    pairs = prov5.pairs_at(7)  # 7 has order 4 mod 5
    assert pairs[(2, 4)] == CycInt.integer(5, -49)


def test_provider_rejects_ramified():
    with pytest.raises(ValueError):
        JacobiProvider(5).pairs_at(5)


def test_provider_matches_table(tmp_path):
    prov = JacobiProvider(5)
    t = build_prime_field_table(11, 5)
    assert prov.pairs_at(11) == jacobi_sums_from_table(t)


def test_jacobi_sums_at_p_twists():
    data = jacobi_sums_at_p(7, 3)
    # two primes above 7, all pairs present at each twist
    assert set(data) == {(t, k1, k2) for t in (1, 2) for (k1, k2) in index_pairs(3)}
    # value at twist t is the canonical value at the twisted pair
    canonical = JacobiProvider(3).pairs_at(7)
    assert data[(2, 1, 1)] == canonical[(2, 2)]


def test_cache_round_trip(tmp_path):
    path = str(tmp_path / "jac.jsonl")
    cache = JacobiCache(path)
    value = CycInt(3, [-2, -3])
    cache.put(JacobiRecord(3, 7, 1, 1, 1, value))
    assert len(cache) == 1
    reloaded = JacobiCache(path)
    assert reloaded.get(3, 7, 1, 1, 1) == value
    assert reloaded.get(3, 13, 1, 1, 1) is None


def test_cache_skips_corrupt_lines(tmp_path, caplog):
    path = tmp_path / "jac.jsonl"
    good = {"l": 3, "p": 7, "f": 1, "k1": 1, "k2": 1, "c": ["-2", "-3"]}
    path.write_text(json.dumps(good) + "\nnot json\n" + '{"l": 3}\n')
    with caplog.at_level(logging.WARNING):
        cache = JacobiCache(str(path))
    assert len(cache) == 1
    assert cache.get(3, 7, 1, 1, 1) == CycInt(3, [-2, -3])
    assert sum("corrupt cache line" in r.message for r in caplog.records) == 2


def test_warm_cache_rerun_builds_no_tables(tmp_path):
    path = str(tmp_path / "jac.jsonl")
    primes = [7, 13, 19, 31, 37, 43]
    cold = JacobiProvider(3, cache=JacobiCache(path))
    cold.precompute(primes)
    assert cold.table_builds == len(primes)
    warm = JacobiProvider(3, cache=JacobiCache(path))
    for p in primes:
        warm.pairs_at(p)
    assert warm.table_builds == 0
    assert warm.pairs_at(7) == cold.pairs_at(7)


def test_precompute_threaded_matches_serial(tmp_path):
    primes = [7, 13, 19, 31, 37, 43, 61, 67]
    serial = JacobiProvider(3)
    serial.precompute(primes, threads=1)
    threaded = JacobiProvider(3)
    threaded.precompute(primes, threads=4)
    for p in primes:
        assert serial.pairs_at(p) == threaded.pairs_at(p)


def test_fluctuation_trend_report(capsys):
    # soft check, report-only: the largest |Im J|/sqrt(p) fluctuation is
    # bounded by 1 (unitarity), printed per decade for eyeballing
    prov = JacobiProvider(3)
    from fermatbias.arith import sieve_primes

    for lo, hi in ((10, 100), (100, 1000)):
        worst = 0.0
        for p in sieve_primes(hi):
            if p <= lo or p % 3 != 1:
                continue
            z = prov.pairs_at(p)[(1, 1)].embed(1)
            worst = max(worst, abs(z.imag) / p**0.5)
        print(f"decade ({lo},{hi}]: max normalized imaginary part {worst:.4f}")
        assert worst <= 1.0
