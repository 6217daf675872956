"""ameforge: minimal-support AME states from MDS codes.

Construct absolutely maximally entangled states of minimal support from
(extended) Reed-Solomon codes, verify the AME property combinatorially and
through dense marginals, reduce n -> n-1, tabulate existence bounds, and
reproduce the N(5) = 6 nonexistence result by exhaustive search.
"""

from ._version import __version__
from .bounds import Bounds, bounds_for, bounds_table, known_max_sites, necessary_condition
from .codes import (
    Code,
    MdsVerdict,
    Word,
    ame_distance,
    code_from_text,
    code_to_text,
    diagonal_code,
    hamming_distance,
    mds_verdict,
    min_distance,
    oa_strength_check,
    puncture,
    read_code,
    shorten,
    write_code,
)
from .errors import AmeForgeError
from .fields import FieldElement, FiniteField, is_prime_power, make_field
from .linear import (
    LinearCode,
    codewords,
    extended_grs,
    from_parity_block,
    generator_from_text,
    generator_to_text,
    grs_code,
    is_mds_linear,
    min_weight,
    parity_block,
    read_generator,
    systematize,
    write_generator,
)
from .search import (
    SearchReport,
    brute_force_parity_blocks,
    canonicalize_block,
    max_length_dim3,
    nonexistence_certificate,
    search_systematic_mds,
    validate_certificate,
)
from .states import (
    AmeState,
    BipartitionReport,
    bipartitions,
    code_from_state,
    construct_minimal_ame,
    minimal_support_size,
    read_state,
    reduce_ame,
    reduced_density,
    reports_to_jsonable,
    state_from_code,
    state_from_text,
    state_to_text,
    verify_uniform_combinatorial,
    verify_uniform_dense,
    write_state,
)

__all__ = [
    "__version__",
    "AmeForgeError",
    "AmeState",
    "BipartitionReport",
    "Bounds",
    "Code",
    "FieldElement",
    "FiniteField",
    "LinearCode",
    "MdsVerdict",
    "SearchReport",
    "Word",
    "ame_distance",
    "bipartitions",
    "bounds_for",
    "bounds_table",
    "brute_force_parity_blocks",
    "canonicalize_block",
    "code_from_state",
    "code_from_text",
    "code_to_text",
    "codewords",
    "construct_minimal_ame",
    "diagonal_code",
    "extended_grs",
    "from_parity_block",
    "generator_from_text",
    "generator_to_text",
    "grs_code",
    "hamming_distance",
    "is_mds_linear",
    "is_prime_power",
    "known_max_sites",
    "make_field",
    "max_length_dim3",
    "mds_verdict",
    "min_distance",
    "min_weight",
    "minimal_support_size",
    "necessary_condition",
    "nonexistence_certificate",
    "oa_strength_check",
    "parity_block",
    "puncture",
    "read_code",
    "read_generator",
    "read_state",
    "reduce_ame",
    "reduced_density",
    "reports_to_jsonable",
    "search_systematic_mds",
    "shorten",
    "state_from_code",
    "state_from_text",
    "state_to_text",
    "systematize",
    "validate_certificate",
    "verify_uniform_combinatorial",
    "verify_uniform_dense",
    "write_code",
    "write_generator",
    "write_state",
]
