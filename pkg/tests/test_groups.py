import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinset.groups import (
    AffineMap,
    CyclicSet,
    EmptySetError,
    ModulusMismatchError,
    all_affine_maps,
    rotate_mask,
    units,
)

from oracles import (
    naive_canonical_mask,
    naive_negate,
    naive_symmetry_center,
    random_nonempty_members,
)

cyclic_sets = st.integers(min_value=1, max_value=24).flatmap(
    lambda n: st.integers(min_value=0, max_value=(1 << n) - 1).map(
        lambda m: CyclicSet(n, m)
    )
)
nonempty_sets = st.integers(min_value=1, max_value=24).flatmap(
    lambda n: st.integers(min_value=1, max_value=(1 << n) - 1).map(
        lambda m: CyclicSet(n, m)
    )
)


def test_members_and_mask_round_trip():
    a = CyclicSet.from_members(7, [3, 0, 1])
    assert a.members() == (0, 1, 3)
    assert a.mask == 0b1011
    assert 3 in a and 2 not in a
    assert a.cardinality == 3


def test_from_members_reduces_mod_n():
    assert CyclicSet.from_members(5, [-1, 0, 1]) == CyclicSet.from_members(5, [4, 0, 1])


def test_validation():
    with pytest.raises(ValueError):
        CyclicSet(0, 0)
    with pytest.raises(ValueError):
        CyclicSet(3, 1 << 3)
    with pytest.raises(ValueError):
        AffineMap(2, 0, 4)  # gcd(2, 4) != 1
    with pytest.raises(ValueError):
        AffineMap(1, 5, 4)


def test_parse_and_literal():
    a = CyclicSet.parse("7:{0,1,3}")
    assert a == CyclicSet.from_members(7, [0, 1, 3])
    assert a.to_literal() == "7:{0,1,3}"
    assert CyclicSet.parse("4:{}").is_empty()
    with pytest.raises(ValueError):
        CyclicSet.parse("7:{7}")
    with pytest.raises(ValueError):
        CyclicSet.parse("7:0,1")
    with pytest.raises(ValueError):
        CyclicSet.parse("0:{}")


def test_negate_examples():
    assert CyclicSet.from_members(5, [1]).negate() == CyclicSet.from_members(5, [4])
    assert CyclicSet.from_members(7, [0, 1, 3]).negate() == CyclicSet.from_members(
        7, [0, 4, 6]
    )
    assert CyclicSet.full(6).negate() == CyclicSet.full(6)


def test_affine_examples():
    a = CyclicSet.from_members(7, [0, 1, 3])
    assert a.affine_apply(AffineMap(2, 0, 7)) == CyclicSet.from_members(7, [0, 2, 6])
    assert a.affine_apply(AffineMap(1, 0, 7)) == a
    b = CyclicSet.from_members(4, [0, 1])
    assert b.affine_apply(AffineMap(3, 1, 4)) == CyclicSet.from_members(4, [0, 1])
    with pytest.raises(ModulusMismatchError):
        a.affine_apply(AffineMap(1, 0, 5))


def test_symmetry_center_examples():
    for n in (3, 5, 8, 11):
        window = CyclicSet.from_members(n, [n - 1, 0, 1])
        assert window.symmetry_center() == 0
    assert CyclicSet.from_members(7, [0, 1, 3]).symmetry_center() is None
    assert CyclicSet.full(5).symmetry_center() == 0
    with pytest.raises(EmptySetError):
        CyclicSet.empty(4).symmetry_center()


def test_symmetry_center_matches_oracle():
    rng = random.Random(2024)
    for _ in range(300):
        n = rng.randrange(1, 16)
        members = random_nonempty_members(rng, n)
        got = CyclicSet.from_members(n, members).symmetry_center()
        assert got == naive_symmetry_center(members, n)


def test_canonical_examples():
    for n in (3, 5, 9):
        single = CyclicSet.from_members(n, [2 % n])
        assert single.canonical_form() == CyclicSet.from_members(n, [0])
    a = CyclicSet.from_members(7, [0, 1, 3])
    b = CyclicSet.from_members(7, [0, 2, 6])
    assert a.canonical_form() == b.canonical_form()
    assert a.canonical_form().mask == 0b1011  # {0,1,3} is its own class minimum
    assert CyclicSet.full(9).canonical_form() == CyclicSet.full(9)


def test_canonical_matches_orbit_minimum():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randrange(1, 13)
        members = random_nonempty_members(rng, n)
        got = CyclicSet.from_members(n, members).canonical_form()
        assert got.mask == naive_canonical_mask(members, n)


def test_canonical_cap():
    with pytest.raises(ValueError):
        CyclicSet.from_members(1024, [0, 1]).canonical_form()


def test_deficiency():
    assert CyclicSet.full(7).is_full()
    assert CyclicSet.from_members(7, [0, 1, 2, 3, 4, 6]).deficiency() == [5]
    assert CyclicSet.full(3).deficiency() == []


def test_units_and_affine_count():
    assert units(1) == (0,)
    assert units(12) == (1, 5, 7, 11)
    assert len(list(all_affine_maps(12))) == 4 * 12


def test_rotate_mask_wraps():
    assert rotate_mask(0b101, 1, 3) == 0b011
    assert rotate_mask(0b1, 5, 5) == 0b1


@given(nonempty_sets)
def test_negate_is_involution(a):
    assert a.negate().negate() == a


@given(nonempty_sets)
def test_negate_matches_oracle(a):
    assert set(a.negate().members()) == naive_negate(set(a.members()), a.modulus)


@given(cyclic_sets, st.data())
def test_affine_preserves_cardinality(a, data):
    n = a.modulus
    u = data.draw(st.sampled_from(units(n)))
    c = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert a.affine_apply(AffineMap(u, c, n)).cardinality == a.cardinality


@settings(max_examples=60)
@given(nonempty_sets.filter(lambda a: a.modulus <= 14), st.data())
def test_canonical_invariant_under_affine_maps(a, data):
    n = a.modulus
    u = data.draw(st.sampled_from(units(n)))
    c = data.draw(st.integers(min_value=0, max_value=n - 1))
    image = a.affine_apply(AffineMap(u, c, n))
    assert image.canonical_form() == a.canonical_form()


@given(nonempty_sets)
def test_symmetry_center_verifies_literally(a):
    c = a.symmetry_center()
    if c is not None:
        n = a.modulus
        assert CyclicSet.from_members(n, [(2 * c - x) % n for x in a.members()]) == a


def _difference_multiset(a):
    n = a.modulus
    counts = [0] * n
    for x in a.members():
        for y in a.members():
            counts[(x - y) % n] += 1
    return counts


@given(nonempty_sets.filter(lambda a: a.modulus <= 14), st.data())
def test_difference_multiset_translation_invariant_unit_permuted(a, data):
    n = a.modulus
    c = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert _difference_multiset(a.translate(c)) == _difference_multiset(a)
    u = data.draw(st.sampled_from(units(n)))
    image = a.affine_apply(AffineMap(u, 0, n))
    base = _difference_multiset(a)
    permuted = _difference_multiset(image)
    assert sorted(base) == sorted(permuted)
    assert all(permuted[u * d % n] == base[d] for d in range(n))


def test_modulus_cap_enforced():
    from steinset.groups import MAX_MODULUS

    with pytest.raises(ValueError):
        CyclicSet(MAX_MODULUS + 1, 0)
    CyclicSet.empty(MAX_MODULUS)  # the cap itself is allowed
