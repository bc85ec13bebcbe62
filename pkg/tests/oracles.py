"""Naive reference implementations used to cross-check the package.

Everything here works on plain frozensets of residues with double loops,
independent of the bitmask/convolution code paths under test.
"""

from math import gcd


def naive_sumset(a, b, n):
    return frozenset((x + y) % n for x in a for y in b)


def naive_negate(a, n):
    return frozenset((n - x) % n for x in a)


def naive_iterated(a, k, n):
    out = frozenset(a)
    for _ in range(k - 1):
        out = naive_sumset(out, a, n)
    return out


def naive_signed(a, signs, n):
    parts = [frozenset(a) if s == 1 else naive_negate(a, n) for s in signs]
    out = parts[0]
    for p in parts[1:]:
        out = naive_sumset(out, p, n)
    return out


def naive_pm(a, m, n):
    return naive_iterated(frozenset(a) | naive_negate(a, n), m, n)


def naive_pm_union(a, m, n):
    """Union of every length-m signed product, enumerated sign by sign."""
    out = frozenset()
    for bits in range(1 << m):
        signs = [1 if bits >> i & 1 else -1 for i in range(m)]
        out |= naive_signed(a, signs, n)
    return out


def mask_of(members, n):
    out = 0
    for a in members:
        out |= 1 << (a % n)
    return out


def members_of(mask, n):
    return frozenset(r for r in range(n) if mask >> r & 1)


def naive_orbit(a, n):
    """Every affine image u*a + c of the set, as frozensets."""
    out = set()
    for u in range(n):
        if gcd(u, n) != 1:
            continue
        for c in range(n):
            out.add(frozenset((u * x + c) % n for x in a))
    return out


def naive_canonical_mask(a, n):
    return min(mask_of(img, n) for img in naive_orbit(a, n))


def naive_symmetry_center(a, n):
    for c in range(n):
        if frozenset((2 * c - x) % n for x in a) == frozenset(a):
            return c
    return None


def naive_haight_class_masks(n, k):
    """Canonical masks of every witness class at modulus n, via all 2^n subsets."""
    full = frozenset(range(n))
    seen = set()
    for mask in range(1, 1 << n):
        a = members_of(mask, n)
        if naive_sumset(a, naive_negate(a, n), n) != full:
            continue
        if naive_iterated(a, k, n) == full:
            continue
        seen.add(naive_canonical_mask(a, n))
    return sorted(seen)


def random_nonempty_members(rng, n):
    mask = rng.randrange(1, 1 << n)
    return members_of(mask, n)


def random_symmetric_members(rng, n):
    """Non-empty set with a symmetry center: seed half union its reflection."""
    c = rng.randrange(n)
    half = random_nonempty_members(rng, n)
    return frozenset(half) | frozenset((2 * c - x) % n for x in half)
