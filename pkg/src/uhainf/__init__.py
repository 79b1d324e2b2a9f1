"""Exact highest-weight representations on pattern bases, with verification
suites for the defining relations and the q-bracket identity corpus."""

from .qnum import (
    QValue,
    RadicalSum,
    qbracket,
    radical_of,
    radsum_add,
    radsum_is_zero,
    radsum_mul,
)
from .patterns import (
    CPattern,
    ModuleParams,
    Signature,
    WeightVector,
    enumerate_basis,
    highest_weight_pattern,
    weight_of,
)
from .action import GeneratorLabel, PatternVector, apply_generator, apply_to_vector, apply_word
from .relations import (
    CheckReport,
    check_boundary_f,
    check_cartan,
    check_charge,
    check_highest_weight,
    check_restrictedness,
    check_serre,
)
from .identities import (
    Assignment,
    IdentityId,
    PoleError,
    evaluate_identity,
    fuzz_identity,
    random_generic_assignment,
)

__version__ = "0.1.0"
