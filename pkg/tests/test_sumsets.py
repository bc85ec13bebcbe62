import random
from itertools import product

import pytest

from steinset.groups import CyclicSet, EmptySetError, ModulusMismatchError
from steinset.sumsets import (
    iterated_sumset,
    pm_product,
    sign_count_classes,
    signed_product,
    signed_product_counts,
    sumset,
    sumset_convolution,
    sumset_shift_or,
)

from oracles import (
    naive_iterated,
    naive_pm,
    naive_pm_union,
    naive_signed,
    naive_sumset,
    random_nonempty_members,
)


def cs(n, members):
    return CyclicSet.from_members(n, members)


def members(a):
    return frozenset(a.members())


def test_sumset_examples():
    a = cs(7, [0, 1, 3])
    assert members(sumset(a, a)) == {0, 1, 2, 3, 4, 6}
    assert sumset(a, cs(7, [0])) == a
    window = cs(5, [4, 0, 1])
    assert sumset(window, window).is_full()


def test_sumset_errors():
    with pytest.raises(ModulusMismatchError):
        sumset(cs(5, [0]), cs(7, [0]))
    with pytest.raises(EmptySetError):
        sumset(cs(5, [0]), CyclicSet.empty(5))
    with pytest.raises(EmptySetError):
        sumset_convolution(CyclicSet.empty(5), cs(5, [0]))


def test_iterated_examples():
    window7 = cs(7, [6, 0, 1])
    assert iterated_sumset(window7, 3).is_full()
    assert members(iterated_sumset(window7, 2)) == {5, 6, 0, 1, 2}
    assert iterated_sumset(window7, 1) == window7
    for k in (1, 2, 5):
        assert iterated_sumset(CyclicSet.full(6), k) == CyclicSet.full(6)
    with pytest.raises(ValueError):
        iterated_sumset(window7, 0)


def test_signed_examples():
    a = cs(7, [0, 1, 3])
    assert signed_product(a, (1, -1)).is_full()
    assert signed_product(a, (1,)) == a
    squares = cs(7, [1, 2, 4])
    assert members(signed_product(squares, (1, 1))) == {1, 2, 3, 4, 5, 6}
    with pytest.raises(ValueError):
        signed_product(a, ())
    with pytest.raises(ValueError):
        signed_product(a, (1, 0))


def test_pm_examples():
    a = cs(7, [0, 1, 3])
    assert members(pm_product(a, 1)) == {0, 1, 3, 4, 6}
    assert members(pm_product(cs(5, [2]), 2)) == {0, 1, 4}
    sym = cs(9, [8, 0, 1])
    for m in (1, 2, 3):
        assert pm_product(sym, m) == iterated_sumset(sym, m)
    with pytest.raises(ValueError):
        pm_product(a, 0)


def test_sign_count_classes():
    assert sign_count_classes(1) == [(1, 0), (0, 1)]
    assert sign_count_classes(2) == [(2, 0), (1, 1), (0, 2)]
    assert len(sign_count_classes(3)) == 4
    with pytest.raises(ValueError):
        sign_count_classes(0)


def test_kernels_agree_randomized():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randrange(1, 200)
        a = cs(n, random_nonempty_members(rng, n))
        b = cs(n, random_nonempty_members(rng, n))
        assert sumset_shift_or(a, b) == sumset_convolution(a, b)


def test_kernels_commute():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randrange(1, 64)
        a = cs(n, random_nonempty_members(rng, n))
        b = cs(n, random_nonempty_members(rng, n))
        assert sumset(a, b) == sumset(b, a)


def test_sumset_matches_oracle_randomized():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randrange(1, 33)
        a = random_nonempty_members(rng, n)
        b = random_nonempty_members(rng, n)
        assert members(sumset(cs(n, a), cs(n, b))) == naive_sumset(a, b, n)


def test_iterated_matches_oracle_randomized():
    rng = random.Random(6)
    for _ in range(150):
        n = rng.randrange(1, 33)
        k = rng.randrange(1, 5)
        a = random_nonempty_members(rng, n)
        assert members(iterated_sumset(cs(n, a), k)) == naive_iterated(a, k, n)


def test_sign_count_reduction_exhaustive():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randrange(1, 33)
        a = cs(n, random_nonempty_members(rng, n))
        for m in (1, 2, 3, 4):
            for signs in product((1, -1), repeat=m):
                plus = signs.count(1)
                assert signed_product(a, signs) == signed_product_counts(
                    a, plus, m - plus
                )


def test_pm_is_union_of_signed_products():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randrange(1, 33)
        a = random_nonempty_members(rng, n)
        for m in (1, 2, 3, 4):
            assert members(pm_product(cs(n, a), m)) == naive_pm_union(a, m, n)
            assert naive_pm(a, m, n) == naive_pm_union(a, m, n)


def test_signed_matches_oracle_randomized():
    rng = random.Random(10)
    for _ in range(150):
        n = rng.randrange(1, 33)
        m = rng.randrange(1, 5)
        signs = tuple(rng.choice((1, -1)) for _ in range(m))
        a = random_nonempty_members(rng, n)
        assert members(signed_product(cs(n, a), signs)) == naive_signed(a, signs, n)


def test_absorption():
    rng = random.Random(12)
    for _ in range(200):
        n = rng.randrange(1, 20)
        a = cs(n, random_nonempty_members(rng, n))
        b = cs(n, random_nonempty_members(rng, n))
        if a.is_full():
            assert sumset(a, b).is_full()
        k = rng.randrange(1, 5)
        if iterated_sumset(a, k).is_full():
            assert iterated_sumset(a, k + 1).is_full()


def _primes_to(limit):
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, p))]


def test_cauchy_davenport_bound_on_primes():
    rng = random.Random(14)
    primes = _primes_to(61)
    for _ in range(250):
        p = rng.choice(primes)
        a = cs(p, random_nonempty_members(rng, p))
        b = cs(p, random_nonempty_members(rng, p))
        assert sumset(a, b).cardinality >= min(p, a.cardinality + b.cardinality - 1)


def test_convolution_kernel_handles_modulus_one():
    one = CyclicSet.full(1)
    assert sumset_convolution(one, one) == one
    assert sumset_shift_or(one, one) == one
