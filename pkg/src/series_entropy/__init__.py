"""Exact noncommutative formal power series, interconnection products and
generating-series entropy, with a numerical Chen-Fliess evaluator."""

from .entropy import EntropyEstimate, SupportProfile, entropy, entropy_distance, entropy_estimate, support_profile
from .errors import (
    AlphabetMismatchError,
    ExpressionError,
    HorizonError,
    InsufficientHorizonError,
    InvalidWordError,
    SeriesError,
    UnsupportedOperationError,
)
from .interconnect import (
    DELTA,
    BilinearRealization,
    CompositionUnit,
    GrowthWitness,
    check_growth_bound,
    compose,
    compose_with_unit,
    devlin_feedback,
    devlin_polynomial,
    devlin_polynomials,
    feedback,
    realization_to_series,
)
from .series import (
    Series,
    SeriesFamily,
    add,
    augment_left,
    augment_right,
    build_family,
    cauchy,
    family,
    hadamard,
    left_shift,
    parse_literal,
    scale,
    shuffle,
    shuffle_power,
    to_literal,
)
from .words import (
    Alphabet,
    Grading,
    GrowthParams,
    enumerate_words,
    format_word,
    grading_dimension,
    growth_params,
    parse_word,
    shuffle_words,
    word_degree,
)

__version__ = "0.1.0"
