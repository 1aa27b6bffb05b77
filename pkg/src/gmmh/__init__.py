"""GMMH*: dot-product hashing modulo an arbitrary n > 1.

The family is (1/p)-almost-delta-universal, p the smallest prime factor of n.
This package evaluates it, computes delta probabilities exactly, verifies
the bound by exhaustive enumeration and builds a one-time MAC on top.
"""

from ._backend import NAME as BACKEND
from .errors import BudgetExceededError, InvalidArgumentError, KeyExhaustedError, KeyFileError
from .family import (
    DeltaQuery,
    ExactProbability,
    FamilyParams,
    ResidueVector,
    delta_probability,
    epsilon_bound,
    evaluate,
    sample_key,
    tightness_witness,
)
from .mac import MacKey, Tag, forgery_experiment, mac_sign, mac_verify
from .numtheory import (
    CongruenceInstance,
    Factorization,
    count_congruence_solutions,
    enumerate_congruence_solutions,
    factorize,
    gcd_with_modulus,
    mulmod,
    smallest_prime_divisor,
)
from .verifier import (
    VerificationReport,
    brute_force_delta_probability,
    cross_check_fast_path,
    max_delta_probability,
    verify_theorem,
)

__all__ = [name for name in dir() if not name.startswith("_")]
