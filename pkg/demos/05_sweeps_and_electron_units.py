"""Sweeps, serialisation and physical units.

The same machinery is behind ``tunneltime sweep``. Electron units take eV
and nm and report times in seconds.
"""

from tunneltime.cli import ELECTRON
from tunneltime.serialize import records_to_csv
from tunneltime.sweep import SweepSpec, cross_oracle_failures, run_sweep

spec = SweepSpec("energy", 0.05, 0.45, 5, v0=0.5, v1=0.02, width=2.0, units=ELECTRON)
records = run_sweep(spec)
print(records_to_csv(records))
print("records where analytic and numeric tau disagree:", len(cross_oracle_failures(records)))
for r in records:
    print(f"E = {r.energy:.2f} eV   T = {r.t_prob:.3e}   tau = {r.tau_analytic * 1e15:.3f} fs")
