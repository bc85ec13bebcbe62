"""Exact sumset kernels over Z_n.

Two interchangeable kernels compute A + B = {a + b mod n : a in A, b in B}:

* shift-or: OR together copies of the larger operand's bitmask rotated by
  each member of the smaller operand; O(min(|A|,|B|)) mask rotations.
* convolution: multiply byte-packed indicator polynomials using Python's
  big-integer multiplication, then fold coefficient indices mod n and
  threshold.  Coefficients count pairs, never exceed n < 2^24, and so fit
  a 3-byte field with no carries; the result is exact.

``sumset`` picks a kernel by a size heuristic; the test suite cross-checks
the two bit for bit.  Empty operands are rejected rather than propagated:
a silently empty sumset usually means an upstream bug.
"""

from __future__ import annotations

from typing import Sequence

from .groups import CyclicSet, EmptySetError, ModulusMismatchError, rotate_mask

# Use the convolution kernel once min(|A|,|B|) exceeds this many times log2(n).
CONVOLUTION_FACTOR = 4

_FIELD = 3  # bytes per packed indicator coefficient


def _check_operands(a: CyclicSet, b: CyclicSet) -> int:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(
            f"sumset of sets mod {a.modulus} and mod {b.modulus}"
        )
    if a.is_empty() or b.is_empty():
        raise EmptySetError("sumset of an empty set")
    return a.modulus


def sumset_shift_or(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    """Shift-or kernel: exact for any moduli, fastest for sparse operands."""
    n = _check_operands(a, b)
    small, big = (a, b) if a.cardinality <= b.cardinality else (b, a)
    acc = 0
    big_mask = big.mask
    for s in small.members():
        acc |= rotate_mask(big_mask, s, n)
    return CyclicSet(n, acc)


def _packed(s: CyclicSet) -> int:
    buf = bytearray(_FIELD * s.modulus)
    for a in s.members():
        buf[_FIELD * a] = 1
    return int.from_bytes(buf, "little")


def sumset_convolution(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    """Convolution kernel: indicator product via big-int multiply, folded mod n."""
    n = _check_operands(a, b)
    prod = _packed(a) * _packed(b)
    buf = prod.to_bytes(2 * _FIELD * n, "little")
    mask = 0
    for j in range(2 * n - 1):
        p = _FIELD * j
        if buf[p] | buf[p + 1] | buf[p + 2]:
            mask |= 1 << (j if j < n else j - n)
    return CyclicSet(n, mask)


def sumset(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    """A + B, dispatching between the shift-or and convolution kernels."""
    n = _check_operands(a, b)
    if min(a.cardinality, b.cardinality) > CONVOLUTION_FACTOR * n.bit_length():
        return sumset_convolution(a, b)
    return sumset_shift_or(a, b)


def iterated_sumset(a: CyclicSet, k: int) -> CyclicSet:
    """k-fold sumset kA by binary exponentiation, exiting early once full.

    Fullness is absorbing: Z_n + B = Z_n for any non-empty B.
    """
    if k < 1:
        raise ValueError(f"fold count must be >= 1, got {k}")
    if a.is_empty():
        raise EmptySetError("iterated sumset of an empty set")
    result: CyclicSet | None = None
    base = a
    while True:
        if k & 1:
            result = base if result is None else sumset(result, base)
            if result.is_full():
                return result
        k >>= 1
        if not k:
            break
        base = sumset(base, base)
        if base.is_full():
            # at least one more summand of `base` is pending, so the total is full
            return CyclicSet.full(a.modulus)
    assert result is not None
    return result


def _check_signs(signs: Sequence[int]) -> None:
    if len(signs) < 1:
        raise ValueError("sign vector must have length >= 1")
    for s in signs:
        if s not in (1, -1):
            raise ValueError(f"sign entries must be +1 or -1, got {s}")


def signed_product(a: CyclicSet, signs: Sequence[int]) -> CyclicSet:
    """eps_1*A + ... + eps_m*A where +1 contributes A and -1 contributes -A.

    Only the counts of +1 and -1 entries matter in an abelian group.
    """
    _check_signs(signs)
    plus = sum(1 for s in signs if s == 1)
    return signed_product_counts(a, plus, len(signs) - plus)


def signed_product_counts(a: CyclicSet, plus: int, minus: int) -> CyclicSet:
    """plus*A + minus*(-A); the sign-count form of a signed product."""
    if plus < 0 or minus < 0 or plus + minus < 1:
        raise ValueError(f"invalid sign counts ({plus}, {minus})")
    if a.is_empty():
        raise EmptySetError("signed product of an empty set")
    pos = iterated_sumset(a, plus) if plus else None
    neg = iterated_sumset(a.negate(), minus) if minus else None
    if pos is None:
        assert neg is not None
        return neg
    if neg is None:
        return pos
    return sumset(pos, neg)


def pm_product(a: CyclicSet, m: int) -> CyclicSet:
    """m-fold sumset of A u (-A); the union of all length-m signed products."""
    if m < 1:
        raise ValueError(f"fold count must be >= 1, got {m}")
    if a.is_empty():
        raise EmptySetError("pm product of an empty set")
    return iterated_sumset(a.union(a.negate()), m)


def sign_count_classes(m: int) -> list[tuple[int, int]]:
    """The m+1 sign-count classes (p, q) with p + q = m, ordered by descending p.

    Each class stands for every length-m sign vector with p entries equal
    to +1, which all yield the same signed product in an abelian group.
    """
    if m < 1:
        raise ValueError(f"length must be >= 1, got {m}")
    return [(m - q, q) for q in range(m + 1)]
