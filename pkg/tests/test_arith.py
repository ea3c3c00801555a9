import pytest

from fermatbias.arith import (
    LevelConfig,
    _naive_sieve,
    multiplicative_order,
    primitive_root,
    primitive_roots,
    residue_degree,
    sieve_primes,
)


def test_small_primes():
    assert list(sieve_primes(10)) == [2, 3, 5, 7]
    assert list(sieve_primes(1)) == []
    assert list(sieve_primes(2)) == [2]


def test_segmented_matches_naive():
    # tiny segments force many segment boundaries
    assert list(sieve_primes(10_000, segment_size=64)) == _naive_sieve(10_000)


def test_prime_counts():
    assert sum(1 for _ in sieve_primes(10**5)) == 9592
    assert sum(1 for _ in sieve_primes(10**6)) == 78498


def test_residue_degree():
    assert residue_degree(7, 3) == 1
    assert residue_degree(2, 3) == 2
    assert residue_degree(2, 7) == 3
    assert residue_degree(3, 7) == 6
    assert residue_degree(11, 5) == 1
    with pytest.raises(ValueError):
        residue_degree(3, 3)


def test_residue_degree_divides_group_order():
    for ell in (3, 5, 7, 11):
        for p in sieve_primes(200):
            if p == ell:
                continue
            assert (ell - 1) % residue_degree(p, ell) == 0


def test_primitive_root_least():
    assert primitive_root(2) == 1
    assert primitive_root(3) == 2
    assert primitive_root(7) == 3
    assert primitive_root(31) == 3
    assert primitive_root(191) == 19


def test_primitive_root_has_full_order():
    for p in (13, 101, 10007):
        g = primitive_root(p)
        assert multiplicative_order(g, p) == p - 1
        # smaller candidates all fail
        for h in range(1, g):
            assert multiplicative_order(h, p) < p - 1


def test_primitive_roots_increasing():
    roots = []
    gen = primitive_roots(13)
    for _ in range(4):
        roots.append(next(gen))
    assert roots == sorted(roots)
    assert roots[0] == 2


def test_multiplicative_order():
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(3, 7) == 6
    assert multiplicative_order(1, 5) == 1
    with pytest.raises(ValueError):
        multiplicative_order(10, 5)


def test_level_config():
    assert LevelConfig(3).genus_g == 1
    assert LevelConfig(3).genus_gp == 1
    assert LevelConfig(5).genus_g == 6
    assert LevelConfig(5).genus_gp == 2
    assert LevelConfig(7).genus_g == 15
    assert LevelConfig(7).genus_gp == 3
    for bad in (2, 4, 9, 15):
        with pytest.raises(ValueError):
            LevelConfig(bad)
