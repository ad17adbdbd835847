"""Maximum gaps of cyclotomic and inverse cyclotomic polynomials."""

from .bounds import (
    BoundsReport,
    DivisorPartition,
    EpsilonResult,
    alpha_bound,
    beta_bound,
    bounds_report,
    c_condition,
    delta_minus,
    delta_sufficient,
    epsilon_bound,
    gamma_bound,
    lemma_suff2_condition,
    restricted_B,
)
from .conjecture import (
    ConjectureVerdict,
    check_conjecture_for_m,
    gap_from_blocks,
    gap_phi_mp,
    invariance_check,
    scan_m_range,
)
from .harness import delta_ratio_scan, enumerate_corpus, quality_scan
from .numtheory import (
    PrimeFactorization,
    divisors,
    euler_phi,
    factorize_odd_squarefree,
    is_prime,
    mobius_complement,
    next_prime_in_class,
    psi_degree,
)
from .polynomial import (
    IntPolynomial,
    MaxGapReport,
    block_decompose,
    cyclotomic,
    inverse_cyclotomic,
    max_gap,
    support,
    verify_block_properties,
)

__version__ = "0.1.0"
