"""
How often the bounds are exact
==============================

Scan every odd square-free n below a bound and count how often each
bound equals the measured gap. The full run to 15013 takes a few seconds.
"""

from cyclogap import quality_scan

stats = quality_scan(15013)
for key, value in stats.as_dict().items():
    print(f"{key:>18}: {value}")

###############################################################################
# Restricting to composite n lowers the ratios slightly, since every prime
# is exact.
print(quality_scan(15013, min_k=2).as_dict())
