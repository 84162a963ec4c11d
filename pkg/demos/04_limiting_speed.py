"""Mean tunnelling speed of opaque absorbing barriers.

v_l = hbar (xi^2 + mu^2) / (m xi) diverges as V1 -> 0 because xi ~ V1.
"""

from tunneltime import BarrierConfig, limiting_speed

prev = None
for v1 in (0.4, 0.2, 0.1, 0.05, 0.025, 0.0125):
    v = limiting_speed(0.5, BarrierConfig(1.0, v1, 1.0))
    ratio = "" if prev is None else f"  x{v / prev:.4f}"
    print(f"V1 = {v1:<7} v_l = {v:10.4f}{ratio}")
    prev = v

print("V1 = 0       v_l =", limiting_speed(0.5, BarrierConfig(1.0, 0.0, 1.0)))
