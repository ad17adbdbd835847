"""
Cyclotomic polynomials and their gaps
=====================================

Build Phi_n and Psi_n for a few odd square-free n and look at the
largest distance between consecutive exponents.
"""

from cyclogap import PrimeFactorization, cyclotomic, inverse_cyclotomic, max_gap

# the smallest interesting case
f = PrimeFactorization.of(3, 5)
phi, psi = cyclotomic(f), inverse_cyclotomic(f)
print(phi)
print(psi)
print(max_gap(phi), max_gap(psi))

# Phi_n * Psi_n recovers x^n - 1
print((phi * psi).terms())

###############################################################################
# For two primes the gaps follow a simple pattern: p1 - 1 for Phi and
# p2 - p1 + 1 for Psi.
for p1, p2 in [(3, 7), (5, 11), (7, 29), (11, 13)]:
    g = PrimeFactorization.of(p1, p2)
    print(p1, p2, max_gap(cyclotomic(g)).gap, max_gap(inverse_cyclotomic(g)).gap)

###############################################################################
# Larger n: the coefficients grow but stay exact.
big = PrimeFactorization.of(3, 5, 7, 11, 13)
phi_big = cyclotomic(big)
print(phi_big.degree, phi_big.height(), max_gap(phi_big))
