"""The tunnelling time computed four independent ways.

``tau = hbar d/dE (arg A_T + k a)`` is the time a quasi-monochromatic packet
needs to cross the barrier region.
"""

from tunneltime import BarrierConfig, numeric_time, real_barrier_time
from tunneltime import tunnelling_time_analytic, tunnelling_time_appendix_form

b = BarrierConfig(v0=1.0, v1=0.5, width=2.0)
for fn in (tunnelling_time_analytic, tunnelling_time_appendix_form, numeric_time):
    res = fn(0.5, b)
    print(f"{res.method:<20} tau = {res.tau:.12f}")

res = tunnelling_time_analytic(0.5, b)
print(f"\nclassical a/v = {res.classical_time:.6f}, delay = {res.delay:.6f}")

# For V1 -> 0 the general formula must reproduce the real-barrier result.
oracle = real_barrier_time(0.5, b.with_(v1=0.0)).tau
print(f"\nreal-barrier oracle: {oracle:.12f}")
for v1 in (1e-2, 1e-4, 1e-6):
    tau = tunnelling_time_analytic(0.5, b.with_(v1=v1)).tau
    print(f"  V1 = {v1:.0e}: tau = {tau:.12f}  rel gap {abs(tau - oracle) / oracle:.1e}")
