"""
When the delta bound is exact
=============================

For ``n = p * p_2 * ... * p_k`` the delta bound is exact once a simple
inequality holds. The share of n satisfying it tends to 1.
"""

from cyclogap import delta_ratio_scan
from cyclogap.harness import render_ratio

for k in (2, 3):
    for b in (50, 200, 1000, 5000):
        s = delta_ratio_scan(k, 3, b)
        print(k, b, s.numerator, s.denominator, render_ratio(s.ratio))

# a larger smallest prime converges more slowly
print([render_ratio(delta_ratio_scan(2, 11, b).ratio) for b in (100, 1000, 10000)])
