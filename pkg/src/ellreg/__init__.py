"""ell-adic regulators, S-unit norm lattices and conjugacy criteria for completely split fields."""

from .criteria import (
    ConjugacyVerdict,
    imaginary_quadratic_split_generator,
    real_quadratic_unit,
    survey_primes,
    zeta_conjugacy,
)
from .field import (
    EmbeddingSet,
    FieldElement,
    NotSplit,
    NumberFieldSpec,
    RamifiedPrime,
    embed,
    hensel_embeddings,
    log_vector,
    splits_completely,
)
from .lattice import Divisor, GroupData, act, dihedral_group, divisor_of, pair
from .norms import (
    KernelLattice,
    SUnitWord,
    artin_system,
    eta_construction,
    kernel_lattice,
    leopoldt_rank,
    sunit_log_rank,
    artin_gram,
)
from .padic import BOTTOM, PadicNumber, PrecisionContext, PrecisionError, iwasawa_log, teichmuller
from .regulators import (
    RegulatorReport,
    classical_regulator,
    dedekind_check,
    new_regulator,
    relative_regulator,
)
from .specfile import load_field, parse_field, serialize_field

__all__ = [
    "BOTTOM", "ConjugacyVerdict", "Divisor", "EmbeddingSet", "FieldElement", "GroupData",
    "KernelLattice", "NotSplit", "NumberFieldSpec", "PadicNumber", "PrecisionContext",
    "PrecisionError", "RamifiedPrime", "RegulatorReport", "SUnitWord", "act", "artin_system",
    "classical_regulator", "dedekind_check", "dihedral_group", "divisor_of", "embed",
    "eta_construction", "hensel_embeddings", "imaginary_quadratic_split_generator",
    "iwasawa_log", "kernel_lattice", "leopoldt_rank", "load_field", "log_vector",
    "new_regulator", "pair", "parse_field", "real_quadratic_unit", "relative_regulator",
    "serialize_field", "splits_completely", "sunit_log_rank", "survey_primes", "teichmuller",
    "artin_gram", "zeta_conjugacy",
]
