"""Python bindings for the egyfrac C++ core."""

from ._egyfrac import (
    IntegrityError,
    StaleCacheError,
    a3,
    burgess_ratio,
    char_sum,
    dyadic_sum,
    factorize,
    growth_json,
    is_prime,
    jacobi,
    primes_up_to,
    sandwich_check,
    t_count,
    tail_sum,
    tau_sum,
    three_term_witness,
    two_term_solutions,
    type_sets,
)

__all__ = [
    "IntegrityError",
    "StaleCacheError",
    "a3",
    "burgess_ratio",
    "char_sum",
    "dyadic_sum",
    "factorize",
    "growth_json",
    "is_prime",
    "jacobi",
    "primes_up_to",
    "sandwich_check",
    "t_count",
    "tail_sum",
    "tau_sum",
    "three_term_witness",
    "two_term_solutions",
    "type_sets",
]
