"""steinset: exact sumset machinery over cyclic groups Z_n.

Subpackages cover: set representation and affine canonical forms
(``groups``), dual sumset kernels (``sumsets``), eventual-fullness
verdicts for eventually periodic sequence specs (``verdicts``), search
for difference-covering sets with deficient k-fold sumsets (``haight``),
doubly exponential thick sets with exact independence checks (``thick``),
a verified append-only result store (``store``), and a CLI (``cli``).
"""

__version__ = "0.1.0"

from .groups import (
    AffineMap,
    CyclicSet,
    EmptySetError,
    ModulusMismatchError,
    all_affine_maps,
)
from .haight import (
    HaightWitness,
    SearchConfig,
    Xorshift64Star,
    exhaustive_search,
    minimal_modulus,
    stochastic_search,
    verify_witness,
)
from .store import StoreRecord, StoreVerificationError, WitnessStore
from .sumsets import (
    iterated_sumset,
    pm_product,
    sign_count_classes,
    signed_product,
    signed_product_counts,
    sumset,
    sumset_convolution,
    sumset_shift_or,
)
from .thick import (
    BigInterval,
    BudgetExceededError,
    IndependenceResult,
    ThickFamilySpec,
    contains_run,
    independence_check,
    power_tower,
    thick_intervals,
    xi_sequence,
)
from .verdicts import (
    HaightSequenceReport,
    NotSymmetricError,
    SeqSpec,
    Verdict,
    WitnessChainError,
    eps_verdict,
    example_family_c2n1,
    pm_verdict,
    sym_verdict,
    verify_haight_sequence,
)

__all__ = [
    "AffineMap",
    "BigInterval",
    "BudgetExceededError",
    "CyclicSet",
    "EmptySetError",
    "HaightSequenceReport",
    "HaightWitness",
    "IndependenceResult",
    "ModulusMismatchError",
    "NotSymmetricError",
    "SearchConfig",
    "SeqSpec",
    "StoreRecord",
    "StoreVerificationError",
    "ThickFamilySpec",
    "Verdict",
    "WitnessChainError",
    "WitnessStore",
    "Xorshift64Star",
    "all_affine_maps",
    "contains_run",
    "eps_verdict",
    "example_family_c2n1",
    "exhaustive_search",
    "independence_check",
    "iterated_sumset",
    "minimal_modulus",
    "pm_product",
    "pm_verdict",
    "power_tower",
    "sign_count_classes",
    "signed_product",
    "signed_product_counts",
    "stochastic_search",
    "sumset",
    "sumset_convolution",
    "sumset_shift_or",
    "sym_verdict",
    "thick_intervals",
    "verify_haight_sequence",
    "verify_witness",
    "xi_sequence",
]
