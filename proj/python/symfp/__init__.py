"""Random symmetric matrices over finite fields: coranks, anticoncentration
and characteristic polynomials."""

from ._core import (
    BudgetExceeded,
    PreconditionViolated,
    __version__,
    atom_probability,
    bad_set_bound,
    bad_set_enumerate,
    charpoly_exact,
    charpoly_mod_p,
    corank_profile,
    count_roots,
    discrepancy,
    halasz_bound,
    irreducibility_certificate,
    is_irreducible,
    is_prime,
    kernel_basis,
    limiting_corank_pmf,
    mix64,
    mod_inv,
    primes_in_window,
    rank_mod_p,
    rk_star,
    run_command,
    sample_rademacher,
    uniform_transition_pmf,
    walk_distribution,
    walk_distribution_fourier,
    weighted_root_sum,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
