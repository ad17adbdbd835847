"""
Lower bounds from the prime factors
===================================

Compare the closed-form bounds against the measured gaps.
"""

from cyclogap import PrimeFactorization, bounds_report

for primes in [(3, 5, 11, 13), (3, 5, 7, 71), (7, 11, 13, 17), (3, 5, 7, 11), (7, 11, 13)]:
    rep = bounds_report(PrimeFactorization.of(*primes))
    print(rep.n, "phi:", rep.g_phi, rep.alpha_p, rep.beta_p, rep.gamma_p, rep.eps_p)
    print(rep.n, "psi:", rep.g_psi, rep.alpha_m, rep.beta_m, rep.gamma_m, rep.delta_m, rep.eps_m)

###############################################################################
# Bounds that have no eligible index come back as ``None``.
rep = bounds_report(PrimeFactorization.of(3, 5))
print(rep.alpha_m, rep.beta_m, rep.gamma_m, rep.delta_m)
