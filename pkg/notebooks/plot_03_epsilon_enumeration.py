"""
Searching divisor partitions
============================

The general bound maximises ``min A - l(B)`` over admissible splits of the
proper divisors. With four primes there are 2^15 - 1 candidate sets ``B``.
"""

from cyclogap import PrimeFactorization, c_condition, epsilon_bound

f = PrimeFactorization.of(3, 7, 11, 13)
res = epsilon_bound(f, "+")
print(res.value, res.admissible_pairs)
print("B =", res.argmax.B)
print("u =", res.argmax.u, "l =", res.argmax.l)

# admissibility of a few hand-picked sets
for B in ([1], [3], [1, 3, 7, 21]):
    print(B, c_condition(B, f, "+"))

###############################################################################
# The minus sign on another four-prime n.
g = PrimeFactorization.of(7, 11, 13, 41)
res = epsilon_bound(g, "-")
print(res.value, res.admissible_pairs, res.argmax.B)
