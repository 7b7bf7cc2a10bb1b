"""Artin factors for three primes with prescribed primitive roots."""

__version__ = "0.1.0"

from .arith import (  # noqa: E402
    BigRational,
    euler_phi,
    factorize,
    is_prime,
    kronecker,
    moebius,
    squarefree_kernel,
)
from .density import (  # noqa: E402
    ArtinSpec,
    InvalidBase,
    L_const,
    A_mod,
    artin_A,
    artin_spec,
    beta,
    delta_mod,
    delta_refinement_check,
    f_dagger,
    f_ddagger,
)
from .singular import (  # noqa: E402
    TripleSpec,
    classical_rho,
    congruence_table,
    euler_constant,
    ksum_constant,
    modulus_D,
    nonfactorization_witness,
    positivity,
    sigma_d,
    sigma_p_closed,
    triple_spec,
)
