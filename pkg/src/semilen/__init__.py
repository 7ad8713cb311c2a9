"""Length-preserving embeddings of finite semigroups into few-generator semigroups.

Given a finite semigroup S and a length function l on it (subadditive,
with polynomially bounded level sets), the package assigns every element
a codeword from a code with the overlap property, presents a semigroup H
on the code's alphabet by the relations X[gh] = X[g] X[h], and verifies
that the length induced on S inside H reproduces l exactly (exact mode)
or up to explicit multiplicative constants (equivalent mode).  Truncated
monogenic semigroups with a prescribed length sequence are handled the
same way.
"""

from .cyclic import (
    CyclicInstance,
    DistortionReport,
    LengthFormula,
    NonPositiveLength,
    cyclic_assignment,
    cyclic_length_table,
    distortion_report,
    make_cyclic,
    parse_formula,
)
from .embedding import (
    Assignment,
    EmbeddingReport,
    InfeasibleAssignment,
    LengthTable,
    OrbitProductMismatch,
    OrbitReport,
    Presentation,
    UnfactorizableOrbitWord,
    VerificationFailure,
    assign_equivalent,
    assign_exact,
    build_presentation,
    congruence_orbit,
    default_length_cap,
    equivalent_assignment_for,
    exact_assignment_for,
    induced_lengths,
    orbit_min_length,
    verify_induced_lengths,
    verify_orbit_factorizes,
    verify_orbit_products,
)
from .errors import InputError, SemilenError
from .semigroup import (
    AssociativityError,
    FiniteSemigroup,
    GrowthWitness,
    LengthConditions,
    SubadditivityError,
    UnreachableElement,
    ceil_root,
    check_length_conditions,
    SemigroupData,
    cyclic_group,
    equivalence_constants,
    full_transformation_monoid,
    growth_witness,
    left_zero,
    random_associative_tables,
    right_zero,
    semigroup_from_json,
    semigroup_to_json,
    subadditivity_violations,
    validate_lengths,
    validate_semigroup,
    word_length,
    word_lengths,
)
from .words import (
    Alphabet,
    CodeSet,
    FactorizationResult,
    OverlapReport,
    OverlapViolation,
    Role,
    TWO_LETTER,
    Word,
    build_guarded_code,
    check_overlap,
    code_from_json,
    code_to_json,
    factorize,
    framed_code,
    framed_words,
    is_framed_word,
    shortlex_key,
    word_from_str,
    word_to_str,
)

__version__ = "0.1.0"
