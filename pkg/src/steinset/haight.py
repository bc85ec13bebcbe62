"""Search for difference-covering sets with deficient k-fold sumsets.

A (k, n) witness is a set A in Z_n whose differences cover the whole group
(A - A = Z_n) while the k-fold sumset kA misses at least one residue; the
missing residue is kept as the certificate.  Both properties are invariant
under affine maps x -> u*x + c, so searches enumerate or report one
canonical representative per affine class.

Exhaustive search walks masks containing 0 whose least nonzero element
divides n (every affine class of candidates has such a representative, see
_candidate_masks) and prunes by the counting bound: A - A has at most
|A|*(|A|-1) + 1 elements, so |A|*(|A|-1) + 1 >= n is necessary for a full
difference set.

Stochastic search hill-climbs on membership masks under the objective
(difference deficiency, then negated k-fold deficiency), restarting from
states drawn from an explicitly specified xorshift64* generator so runs
reproduce exactly from (seed, budget, n_range).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

from .groups import CyclicSet
from .sumsets import iterated_sumset, signed_product_counts

# Exhaustive enumeration is refused beyond this modulus: the candidate
# space grows as 2^(n-1) even after fixing 0 in A.
EXHAUSTIVE_CAP = 40

_MASK64 = (1 << 64) - 1


class Xorshift64Star:
    """xorshift64* generator: shifts 12/25/27, multiplier 0x2545F4914F6CDD1D.

    64-bit state.  A zero seed is remapped to 0x9E3779B97F4A7C15 because the
    all-zero state is a fixed point of the xorshift map.
    """

    __slots__ = ("state",)

    MULTIPLIER = 0x2545F4914F6CDD1D
    ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15

    def __init__(self, seed: int):
        self.state = (seed & _MASK64) or self.ZERO_SEED_REPLACEMENT

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & _MASK64

    def bits(self, width: int) -> int:
        """``width`` pseudo-random bits assembled little-endian from 64-bit words."""
        out = 0
        got = 0
        while got < width:
            out |= self.next_u64() << got
            got += 64
        return out & ((1 << width) - 1)


def modulus_stream_seed(seed: int, n: int) -> int:
    """Per-modulus child seed, independent of the order moduli are visited."""
    return (seed ^ (n * 0x9E3779B97F4A7C15)) & _MASK64


@dataclass(frozen=True)
class HaightWitness:
    """k, the set A, and one residue certifying that kA is not all of Z_n."""

    k: int
    subset: CyclicSet
    certificate: int

    @property
    def modulus(self) -> int:
        return self.subset.modulus

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "n": self.modulus,
            "set": list(self.subset.members()),
            "cert": self.certificate,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "HaightWitness":
        return cls(
            k=int(obj["k"]),
            subset=CyclicSet.from_members(int(obj["n"]), obj["set"]),
            certificate=int(obj["cert"]),
        )


def verify_witness(w: HaightWitness) -> tuple[bool, str | None]:
    """Recompute both witness conditions from scratch; (ok, failure reason)."""
    if w.k < 1:
        return False, f"k must be >= 1, got {w.k}"
    if w.subset.is_empty():
        return False, "witness set is empty"
    if not 0 <= w.certificate < w.modulus:
        return False, f"certificate {w.certificate} out of range for modulus {w.modulus}"
    if not signed_product_counts(w.subset, 1, 1).is_full():
        missing = signed_product_counts(w.subset, 1, 1).deficiency()[0]
        return False, f"difference set not full (missing {missing})"
    if w.certificate in iterated_sumset(w.subset, w.k):
        return False, "certificate present in kA"
    return True, None


@dataclass(frozen=True)
class SearchConfig:
    k: int
    n_range: tuple[int, int]
    mode: Literal["exhaustive", "stochastic"] = "exhaustive"
    budget: int = 100_000
    seed: int = 0
    max_set_size: int | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        lo, hi = self.n_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad modulus range {self.n_range}")
        if self.mode not in ("exhaustive", "stochastic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.budget < 0:
            raise ValueError(f"budget must be >= 0, got {self.budget}")
        if self.max_set_size is not None and self.max_set_size < 1:
            raise ValueError(f"max_set_size must be >= 1, got {self.max_set_size}")


def _min_cardinality_for_full_difference(n: int) -> int:
    # smallest t with t*(t-1) + 1 >= n
    t = 1
    while t * (t - 1) + 1 < n:
        t += 1
    return t


def _canonical_witness(k: int, canonical_set: CyclicSet) -> HaightWitness:
    cert = iterated_sumset(canonical_set, k).deficiency()[0]
    return HaightWitness(k=k, subset=canonical_set, certificate=cert)


def _candidate_masks(n: int):
    """Masks hitting every affine class that can hold a witness (n >= 2).

    Witness sets have >= 2 elements, so each class has a representative
    with 0 in A whose least nonzero element d is the minimum of its orbit
    under unit multiplication.  That orbit is {x : gcd(x, n) = gcd(d, n)},
    whose minimum is gcd(d, n); hence d can be pinned to a divisor of n.
    """
    for d in range(1, n):
        if n % d:
            continue
        base = 1 | (1 << d)
        for high in range(1 << (n - 1 - d)):
            yield base | (high << (d + 1))


def _scan_modulus(n: int, k: int, max_set_size: int | None) -> list[HaightWitness]:
    """All witness classes at one modulus, one canonical representative each."""
    found: dict[int, CyclicSet] = {}
    if n == 1:
        return []  # Z_1 has only the full subset, never a witness
    min_card = _min_cardinality_for_full_difference(n)
    for mask in _candidate_masks(n):
        card = mask.bit_count()
        if card < min_card:
            continue
        if max_set_size is not None and card > max_set_size:
            continue
        a = CyclicSet(n, mask)
        if not signed_product_counts(a, 1, 1).is_full():
            continue
        if iterated_sumset(a, k).is_full():
            continue
        canon = a.canonical_form()
        found.setdefault(canon.mask, canon)
    return [_canonical_witness(k, found[m]) for m in sorted(found)]


def exhaustive_search(cfg: SearchConfig, threads: int = 1) -> list[HaightWitness]:
    """Every witness class in n_range, canonically deduplicated and sorted.

    Deterministic; result is sorted by (modulus, canonical mask).
    """
    if cfg.mode != "exhaustive":
        raise ValueError(f"config mode is {cfg.mode!r}, expected 'exhaustive'")
    lo, hi = cfg.n_range
    if hi > EXHAUSTIVE_CAP:
        raise ValueError(f"modulus range {cfg.n_range} exceeds exhaustive cap {EXHAUSTIVE_CAP}")
    moduli = range(lo, hi + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_n = list(pool.map(lambda n: _scan_modulus(n, cfg.k, cfg.max_set_size), moduli))
    else:
        per_n = [_scan_modulus(n, cfg.k, cfg.max_set_size) for n in moduli]
    out: list[HaightWitness] = []
    for chunk in per_n:
        out.extend(chunk)
    return out


def minimal_modulus(k: int, cap: int) -> tuple[int, HaightWitness] | None:
    """Least modulus n <= cap admitting a (k, n) witness, with one representative."""
    if cap > EXHAUSTIVE_CAP:
        raise ValueError(f"cap {cap} exceeds exhaustive cap {EXHAUSTIVE_CAP}")
    for n in range(1, cap + 1):
        witnesses = _scan_modulus(n, k, None)
        if witnesses:
            return n, witnesses[0]
    return None


def _deficiency_pair(a: CyclicSet, k: int) -> tuple[int, int]:
    diff_def = a.modulus - signed_product_counts(a, 1, 1).cardinality
    k_def = a.modulus - iterated_sumset(a, k).cardinality
    return diff_def, k_def


def _clamp_cardinality(mask: int, max_card: int) -> int:
    # keep the lowest max_card members (bit 0 stays set)
    while mask.bit_count() > max_card:
        mask ^= 1 << (mask.bit_length() - 1)
    return mask


def _stochastic_modulus(n: int, cfg: SearchConfig) -> list[HaightWitness]:
    found: dict[int, CyclicSet] = {}
    budget = cfg.budget

    def record(a: CyclicSet) -> None:
        canon = a.canonical_form()
        found.setdefault(canon.mask, canon)

    if (1 << max(n - 1, 0)) <= budget:
        # whole mask space fits in the budget: cover it exhaustively
        for w in _scan_modulus(n, cfg.k, cfg.max_set_size):
            found.setdefault(w.subset.mask, w.subset)
        return [_canonical_witness(cfg.k, found[m]) for m in sorted(found)]

    rng = Xorshift64Star(modulus_stream_seed(cfg.seed, n))
    evals = 0

    def score(mask: int) -> tuple[int, int]:
        nonlocal evals
        evals += 1
        a = CyclicSet(n, mask)
        diff_def, k_def = _deficiency_pair(a, cfg.k)
        if diff_def == 0 and k_def > 0:
            record(a)
        return diff_def, -k_def

    max_card = cfg.max_set_size if cfg.max_set_size is not None else n
    while evals < budget:
        mask = _clamp_cardinality(rng.bits(n) | 1, max_card)
        current = score(mask)
        while evals < budget:
            best_mask, best_score = None, current
            for b in range(1, n):
                if evals >= budget:
                    break
                cand = mask ^ (1 << b)
                if cand.bit_count() > max_card:
                    continue
                s = score(cand)
                if s < best_score:
                    best_mask, best_score = cand, s
            if best_mask is None:
                break
            mask, current = best_mask, best_score
    return [_canonical_witness(cfg.k, found[m]) for m in sorted(found)]


def stochastic_search(cfg: SearchConfig, threads: int = 1) -> list[HaightWitness]:
    """Seeded hill-climbing search; reproducible from (seed, budget, n_range).

    The budget caps candidate evaluations per modulus, so per-modulus
    streams are independent and the merged result does not depend on
    traversal order.  Every returned witness passes verify_witness.
    """
    if cfg.mode != "stochastic":
        raise ValueError(f"config mode is {cfg.mode!r}, expected 'stochastic'")
    lo, hi = cfg.n_range
    moduli = range(lo, hi + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_n = list(pool.map(lambda n: _stochastic_modulus(n, cfg), moduli))
    else:
        per_n = [_stochastic_modulus(n, cfg) for n in moduli]
    out: list[HaightWitness] = []
    for chunk in per_n:
        for w in chunk:
            ok, reason = verify_witness(w)
            if not ok:  # unreachable unless the search itself is broken
                raise AssertionError(f"search produced an invalid witness: {reason}")
            out.append(w)
    return out
