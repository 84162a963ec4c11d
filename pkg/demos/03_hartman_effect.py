"""Hartman effect and its suppression by absorption.

For a real barrier the tunnelling time stops growing with the width once
the barrier is opaque (here it saturates at 2 m / (hbar k mu) = 2). With
absorption it grows linearly with slope m xi / (hbar (xi^2 + mu^2)).
"""

import numpy as np

from tunneltime import BarrierConfig, tunnelling_time_analytic
from tunneltime.sweep import hartman_analysis

print("  width   tau(V1=0)   tau(V1=0.5)")
for a in (1, 2, 5, 10, 20, 30):
    t0 = tunnelling_time_analytic(0.5, BarrierConfig(1.0, 0.0, a)).tau
    t1 = tunnelling_time_analytic(0.5, BarrierConfig(1.0, 0.5, a)).tau
    print(f"  {a:5.1f}   {t0:9.6f}   {t1:9.6f}")

print()
for v1 in (0.0, 0.01, 0.1, 0.5):
    rep = hartman_analysis(0.5, 1.0, v1, (1.0, 30.0))
    if rep.regime == "saturating":
        print(f"V1 = {v1:<5} saturating at tau = {rep.saturation_value:.6f}")
    else:
        print(
            f"V1 = {v1:<5} {rep.regime}: fitted slope {rep.fitted_slope:.6f}, "
            f"predicted {rep.predicted_slope:.6f} (rel err {rep.slope_rel_error:.1e})"
        )

# Where the Hartman plateau ends is an output, not an input: scan V1 and see
# how far tau moves between a = 15 and a = 30.
print("\n   V1       tau(30)/tau(15)")
for v1 in np.geomspace(1e-5, 1e-1, 5):
    t15 = tunnelling_time_analytic(0.5, BarrierConfig(1.0, v1, 15.0)).tau
    t30 = tunnelling_time_analytic(0.5, BarrierConfig(1.0, v1, 30.0)).tau
    print(f"  {v1:.0e}   {t30 / t15:.6f}")
