"""Twin primes and primality of 6n +/- 1 via three quadratic forms.

An index n >= 1 stands for the pair (6n - 1, 6n + 1). 6n-1 is composite
exactly when n = 6xy + x - y, and 6n+1 exactly when n = 6xy - x - y or
n = 6xy + x + y, for some x, y >= 1. Indices hit by none of the three forms
are twin indices.
"""
__version__ = "0.1.0"

from ._accel import BACKEND
from .classifier import (
    Classification,
    ParitySignature,
    Verdict,
    classify,
    merged_sequence_check,
    parity_signature,
    verify_parity_law,
)
from .errors import (
    ArithmeticRangeError,
    CertificateError,
    DomainError,
    EmptyInputError,
    ResourceError,
    TwinSieveError,
)
from .forms import (
    DivisorPair,
    FormKind,
    FormWitness,
    eval_form,
    find_witness_minus_side,
    find_witness_plus_side,
    is_twin_index,
    witness_to_divisors,
)
from .oracle import factorize, oracle_is_prime, oracle_twin_count
from .runs import RunReport, blocked_runs, longest_run, run_length_histogram
from .sieve import SieveConfig, SieveSegment, TwinPair, count_twins, enumerate_twins, sieve_segment
