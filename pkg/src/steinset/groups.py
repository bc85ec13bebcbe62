"""Subsets of cyclic groups Z_n as immutable membership bitmasks.

The cyclic group of order n is taken additively: residues 0..n-1 under
addition mod n.  A subset is one bit per residue, so translation, negation
and affine images are cheap word-parallel operations on Python ints.

Text literal for sets: ``"n:{a,b,c}"``, e.g. ``"7:{0,1,3}"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

# Guard against accidental huge allocations; one bit per residue.
MAX_MODULUS = 1 << 20

# canonical_form enumerates all n*phi(n) affine maps, so it gets its own cap.
CANONICAL_MAX_MODULUS = 512

_LITERAL_RE = re.compile(r"^\s*(\d+)\s*:\s*\{([^{}]*)\}\s*$")


class ModulusMismatchError(ValueError):
    """Operands live in different cyclic groups."""


class EmptySetError(ValueError):
    """The operation requires a non-empty set."""


def rotate_mask(mask: int, shift: int, n: int) -> int:
    """Rotate an n-bit mask left by ``shift``: adds shift to every residue."""
    shift %= n
    if shift == 0:
        return mask
    return ((mask << shift) | (mask >> (n - shift))) & ((1 << n) - 1)


def units(n: int) -> tuple[int, ...]:
    """Residues u with gcd(u, n) = 1, i.e. the multiplicative units of Z_n."""
    return tuple(u for u in range(n) if gcd(u, n) == 1)


@dataclass(frozen=True)
class AffineMap:
    """Bijection x -> unit*x + shift (mod modulus); requires gcd(unit, n) = 1."""

    unit: int
    shift: int
    modulus: int

    def __post_init__(self) -> None:
        n = self.modulus
        if n < 1:
            raise ValueError(f"modulus must be positive, got {n}")
        if not (0 <= self.unit < n and 0 <= self.shift < n):
            raise ValueError(f"unit and shift must be residues mod {n}")
        if gcd(self.unit, n) != 1:
            raise ValueError(f"unit {self.unit} is not invertible mod {n}")

    def __call__(self, x: int) -> int:
        return (self.unit * x + self.shift) % self.modulus


def all_affine_maps(n: int) -> Iterator[AffineMap]:
    """All n*phi(n) affine bijections of Z_n."""
    for u in units(n):
        for c in range(n):
            yield AffineMap(u, c, n)


@dataclass(frozen=True)
class CyclicSet:
    """A subset of Z_n: ``modulus`` n and a membership bitmask (bit r <=> r in A)."""

    modulus: int
    mask: int

    def __post_init__(self) -> None:
        if not 1 <= self.modulus <= MAX_MODULUS:
            raise ValueError(
                f"modulus must be in [1, {MAX_MODULUS}], got {self.modulus}"
            )
        if not 0 <= self.mask < (1 << self.modulus):
            raise ValueError(f"mask 0x{self.mask:x} out of range for modulus {self.modulus}")

    @classmethod
    def from_members(cls, modulus: int, members: Iterable[int]) -> "CyclicSet":
        """Build from residues; values are reduced mod ``modulus``."""
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        mask = 0
        for a in members:
            mask |= 1 << (a % modulus)
        return cls(modulus, mask)

    @classmethod
    def full(cls, modulus: int) -> "CyclicSet":
        return cls(modulus, (1 << modulus) - 1)

    @classmethod
    def empty(cls, modulus: int) -> "CyclicSet":
        return cls(modulus, 0)

    @classmethod
    def parse(cls, text: str) -> "CyclicSet":
        """Parse a set literal ``"n:{a,b,c}"``; residues must lie in [0, n)."""
        m = _LITERAL_RE.match(text)
        if not m:
            raise ValueError(f"malformed set literal: {text!r}")
        n = int(m.group(1))
        body = m.group(2).strip()
        mask = 0
        if body:
            for tok in body.split(","):
                a = int(tok)
                if not 0 <= a < n:
                    raise ValueError(f"residue {a} out of range for modulus {n}")
                mask |= 1 << a
        return cls(n, mask)

    def to_literal(self) -> str:
        return f"{self.modulus}:{{{','.join(str(a) for a in self.members())}}}"

    def __str__(self) -> str:
        return self.to_literal()

    def members(self) -> tuple[int, ...]:
        mask = self.mask
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def __contains__(self, residue: int) -> bool:
        return bool(self.mask >> (residue % self.modulus) & 1)

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.modulus) - 1

    def deficiency(self) -> list[int]:
        """Sorted residues missing from the set."""
        n, mask = self.modulus, self.mask
        return [r for r in range(n) if not mask >> r & 1]

    def translate(self, shift: int) -> "CyclicSet":
        return CyclicSet(self.modulus, rotate_mask(self.mask, shift, self.modulus))

    def negate(self) -> "CyclicSet":
        """{-a mod n : a in A}; an involution."""
        n = self.modulus
        mask = 0
        for a in self.members():
            mask |= 1 << ((n - a) % n)
        return CyclicSet(n, mask)

    def affine_apply(self, f: AffineMap) -> "CyclicSet":
        """Pointwise image under f; cardinality is preserved (f is a bijection)."""
        if f.modulus != self.modulus:
            raise ModulusMismatchError(
                f"affine map mod {f.modulus} applied to set mod {self.modulus}"
            )
        n = self.modulus
        mask = 0
        for a in self.members():
            mask |= 1 << ((f.unit * a + f.shift) % n)
        return CyclicSet(n, mask)

    def union(self, other: "CyclicSet") -> "CyclicSet":
        if other.modulus != self.modulus:
            raise ModulusMismatchError(
                f"union of sets mod {self.modulus} and mod {other.modulus}"
            )
        return CyclicSet(self.modulus, self.mask | other.mask)

    def symmetry_center(self) -> int | None:
        """Smallest c with A = {2c - a : a in A}, or None if A has no center.

        Additive reading of symmetry about a point: -A = A - 2c.
        """
        if self.is_empty():
            raise EmptySetError("symmetry center of the empty set is undefined")
        neg = self.negate()
        for c in range(self.modulus):
            if rotate_mask(neg.mask, 2 * c, self.modulus) == self.mask:
                return c
        return None

    def canonical_form(self) -> "CyclicSet":
        """Least representative of the orbit under all affine maps of Z_n.

        "Least" compares bitmasks as integers (bit r <=> residue r), so
        affinely equivalent sets share one canonical form and distinct
        orbits never collide.
        """
        n = self.modulus
        if n > CANONICAL_MAX_MODULUS:
            raise ValueError(
                f"canonical_form capped at modulus {CANONICAL_MAX_MODULUS}, got {n}"
            )
        if n == 1 or self.mask == 0 or self.is_full():
            return self
        best = self.mask
        memb = self.members()
        for u in units(n):
            um = 0
            for a in memb:
                um |= 1 << (u * a % n)
            for c in range(n):
                cand = rotate_mask(um, c, n)
                if cand < best:
                    best = cand
        return CyclicSet(n, best)
