"""Python access to the palindrome_lab C++ core."""

from ._pallab import (
    BudgetError,
    DomainError,
    NumericalError,
    OverflowError,
    UnsupportedError,
    bump_eval,
    census,
    census_fixed_length,
    count_critical_points,
    count_up_to,
    density_constant,
    digital_reverse,
    factorize,
    fourier_transform,
    from_digits,
    is_palindrome,
    is_prime,
    is_squarefree,
    k2_full,
    k2_q_average,
    k2_stationary_phase,
    kth_residue_solutions,
    mobius,
    palindromes,
    palindromes_of_length,
    q_star_direct,
    q_star_mobius,
    run_acceptance,
    run_cli,
    s_b,
    stationary_split,
    to_digits,
)

__all__ = [name for name in dir() if not name.startswith("_")]
