"""
Checking the prime-multiplier conjecture
========================================

For a prime p > m the gap of Phi_mp depends only on p mod m, so each m
needs finitely many primes: those between the largest factor of m and m,
and one prime per residue class.
"""

import time

from cyclogap import PrimeFactorization, block_decompose, check_conjecture_for_m, scan_m_range
from cyclogap.conjecture import gap_from_blocks, gap_phi_mp
from cyclogap.polynomial import verify_block_properties

v = check_conjecture_for_m(105)
print(v.verdict, v.residues_checked, v.primes_below_m_checked)

###############################################################################
# Two primes in the same class give the same gap, and their block
# decompositions agree on the first sub-blocks.
m = PrimeFactorization.of(3, 5)
print(gap_phi_mp(15, 17), gap_phi_mp(15, 47))
b1, b2 = block_decompose(m, 17), block_decompose(m, 47)
print(verify_block_properties(b1, b2), gap_from_blocks(b1))

###############################################################################
# A small sweep.
t0 = time.perf_counter()
verdicts = scan_m_range(80)
print(all(v.confirmed for v in verdicts), len(verdicts), f"{time.perf_counter() - t0:.1f} s")
