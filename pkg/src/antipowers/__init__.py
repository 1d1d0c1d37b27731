"""Antipowers in pure morphic words.

Lazy generation of mu^omega(a), exact antipower detection, classification of
uniform morphic words, and exact golden-ratio arithmetic for the Fibonacci
word bounds.
"""
from .antipower import (
    AntipowerQuery,
    AntipowerReport,
    Theorem5Plan,
    blocks_distinct,
    find_spanning_factor,
    gamma,
    is_antipower,
    lemma8_scan,
    naive_first_duplicate,
    theorem5_plan,
    verify_theorem5,
)
from .classify import (
    ClassificationVerdict,
    Periodicity,
    RecurrenceEstimate,
    Tri,
    classify,
    classify_periodicity,
    is_injective_on_letters,
    is_uniformly_recurrent,
    reachable_letters,
    recurrence_constant,
    stabilized_factor_complexity,
)
from .errors import (
    AntipowerError,
    CacheFormatError,
    CapExceeded,
    ClassificationError,
    MorphismSyntaxError,
    NotStabilized,
    NotUniformError,
    RadiusError,
    WordError,
)
from .golden import (
    PHI,
    GoldenNumber,
    Prop16Certificate,
    conjecture18_check,
    fib,
    fib_digit,
    floor_phi_multiple,
    frac_golden,
    gamma_bounds_report,
    golden_add,
    golden_mul,
    golden_neg,
    golden_sign,
    lemma15_residue,
    prop16_holds,
    prop17_k,
    theorem6_block_length,
    verify_prop17,
)
from .kernels import BACKEND
from .reports import Report
from .words import (
    FIBONACCI,
    THUE_MORSE,
    Alphabet,
    FiniteWord,
    MorphicWord,
    Morphism,
    apply,
    factor_count,
    fibonacci_word,
    is_primitive,
    iterate,
    minimal_period,
    parse_morphism,
    prefix,
    read_prefix_cache,
    thue_morse_word,
    write_prefix_cache,
)

__version__ = "0.1.0"
