"""Isolated genus-2 curve parameters: exact CM-field arithmetic, Weil number
enumeration, prime-splitting densities and prime-pair search."""

from .errors import (
    FieldConstructionError,
    IntegralityError,
    MixedFieldError,
    NoPrimeIndexError,
    SearchExhaustedError,
    WeilConditionError,
)
from .exactfield import (
    CyclicCMField,
    FieldElement,
    Galois,
    NonNormalCMField,
    QuarticPoly,
    make_cyclic_field,
    make_nonnormal_field,
    minimal_polynomial,
    nonnormal_factorization_check,
    nonnormal_subfields,
    poly_discriminant,
)
from .heuristic import (
    CorrectionConstant,
    PredictionConfig,
    PredictionMode,
    correction_constant,
    cp_product_convergence,
    predict_count,
    predict_counts,
    predict_probability,
)
from .primality import DEFAULT_POLICY, PrimalityPolicy, is_probable_prime
from .search import (
    EllipticHit,
    FindResult,
    Hit,
    SearchReport,
    count_prime_pairs,
    counts_by_bound,
    elliptic_analogue_search,
    elliptic_candidate,
    empirical_frequency,
    find_isolated,
)
from .splitting import (
    LocalData,
    SplittingClass,
    classify_prime,
    correction_factor,
    cp_factor,
    local_data,
    prob_neither_divides,
    prob_not_dividing_index,
    prob_not_dividing_p,
    uv_check,
)
from .weilnum import (
    IsolationClass,
    IsolationTag,
    WeilCandidate,
    classify,
    complete_candidate,
    disc_char_poly,
    disc_closed_form,
    disc_trace_form,
    index_from_CD,
    index_of_candidate,
    nonnormal_index_cofactor,
    p_from_CD,
)

__version__ = "0.1.0"
