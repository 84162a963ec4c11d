"""Built-in verification suite run by ``tunneltime validate``.

Each check returns a :class:`CheckResult`; tolerances are fixed constants.
Random grids use a seeded generator so runs are reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import NATURAL, BarrierConfig, barrier_wavenumber
from .errors import DegenerateInputError
from .numerics import differentiate, linear_fit
from .phase_time import (
    classical_time,
    limiting_speed,
    numeric_time_estimate,
    phase_decomposition,
    real_barrier_time,
    tunnelling_time_analytic,
    tunnelling_time_appendix_form,
)
from .scattering import solve_boundary_conditions, transmission_amplitude_closed_form

__all__ = ["CheckResult", "CHECKS", "run_checks", "opacity_grid_barrier"]

SEED = 20240601


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


def opacity_grid_barrier(e_ratio, opacity, v1_ratio, v0=1.0, units=NATURAL):
    """Barrier whose width realises a target decay exponent ``mu * a``.

    Where ``mu`` is negligible (above a weakly absorbing barrier) the target
    is read as ``|k_II| * a`` instead.
    """
    kw = barrier_wavenumber(e_ratio * v0, BarrierConfig(v0, v1_ratio * v0, 1.0), units)
    rho = math.sqrt(kw.rho_sq)
    scale = kw.mu if kw.mu >= 1e-3 * rho else rho
    return e_ratio * v0, BarrierConfig(v0, v1_ratio * v0, opacity / scale)


def _random_points(rng, n, v1_max=2.0):
    for _ in range(n):
        v0 = rng.uniform(0.2, 5.0)
        e_ratio = rng.uniform(0.05, 3.0)
        v1_ratio = rng.uniform(0.0, v1_max)
        opacity = rng.uniform(0.1, 30.0)
        yield opacity_grid_barrier(e_ratio, opacity, v1_ratio, v0)


def check_free_propagation():
    worst_amp = worst_tau = 0.0
    for energy in (0.1, 0.5, 2.0, 7.5):
        for width in (0.3, 2.0, 11.0):
            b = BarrierConfig(0.0, 0.0, width)
            sol = solve_boundary_conditions(energy, b)
            worst_amp = max(worst_amp, abs(sol.a_t - 1), abs(transmission_amplitude_closed_form(energy, b) - 1))
            tau = tunnelling_time_analytic(energy, b).tau
            tc = classical_time(energy, b)
            worst_tau = max(worst_tau, abs(tau - tc) / tc)
    ok = worst_amp <= 1e-12 and worst_tau <= 1e-12
    return ok, f"max |A_T - 1| = {worst_amp:.2e}, max rel |tau - ma/hk| = {worst_tau:.2e}"


def check_unitarity():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        v0 = rng.uniform(0.2, 5.0)
        energy = rng.uniform(0.05, 3.0) * v0
        width = rng.uniform(0.05, 10.0)
        sol = solve_boundary_conditions(energy, BarrierConfig(v0, 0.0, width))
        worst = max(worst, abs(sol.t_prob + sol.r_prob - 1))
    return worst <= 1e-12, f"max |T + R - 1| = {worst:.2e} over 1000 points"


def check_closed_form_amplitude():
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for energy, b in _random_points(rng, 1000):
        ref = solve_boundary_conditions(energy, b).a_t
        cf = transmission_amplitude_closed_form(energy, b)
        worst = max(worst, abs(cf - ref) / abs(ref))
    return worst <= 1e-10, f"max relative gap = {worst:.2e} over 1000 points (mu*a up to 30)"


def analytic_numeric_grid():
    """20 x 20 x 5 grid over (E/V0, mu*a, V1/V0) at V0 = 1."""
    e_ratios = np.linspace(0.05, 3.0, 20)
    opacities = np.linspace(0.5, 30.0, 20)
    v1_ratios = (0.0, 0.01, 0.1, 0.5, 2.0)
    for v1r in v1_ratios:
        for er in e_ratios:
            for op in opacities:
                yield opacity_grid_barrier(float(er), float(op), v1r)


def check_analytic_vs_numeric():
    worst = worst_app = 0.0
    failures = flagged = 0
    n = 0
    for energy, b in analytic_numeric_grid():
        n += 1
        try:
            est = numeric_time_estimate(energy, b)
            tau = tunnelling_time_analytic(energy, b).tau
            tau_app = tunnelling_time_appendix_form(energy, b).tau
        except DegenerateInputError:
            flagged += 1
            continue
        if not est.converged:
            flagged += 1
            continue
        gap = abs(tau - est.value) / max(abs(est.value), 1e-12)
        gap_app = abs(tau_app - est.value) / max(abs(est.value), 1e-12)
        worst, worst_app = max(worst, gap), max(worst_app, gap_app)
        if gap > 1e-6 or gap_app > 1e-6:
            failures += 1
    detail = (
        f"{n} points, {flagged} flagged, {failures} failures; "
        f"max gap closed form {worst:.2e}, appendix form {worst_app:.2e}"
    )
    return failures == 0, detail


def check_small_absorption_limit():
    energy, v0, width = 0.5, 1.0, 2.0
    oracle = real_barrier_time(energy, BarrierConfig(v0, 0.0, width)).tau
    gaps = []
    for v1 in (1e-2, 1e-4, 1e-6):
        tau = tunnelling_time_analytic(energy, BarrierConfig(v0, v1, width)).tau
        gaps.append(abs(tau - oracle) / oracle)
    ok = gaps[0] > gaps[1] > gaps[2] and gaps[2] < 1e-4
    return ok, "relative gaps " + ", ".join(f"{g:.2e}" for g in gaps)


def check_hartman_saturation():
    energy, v0 = 0.5, 1.0
    mu = barrier_wavenumber(energy, BarrierConfig(v0, 0.0, 1.0)).mu
    k = math.sqrt(2 * energy)
    worst_change = worst_sat = 0.0
    for opacity in (20.0, 25.0, 30.0):
        a = opacity / mu
        t1 = tunnelling_time_analytic(energy, BarrierConfig(v0, 0.0, a)).tau
        t2 = tunnelling_time_analytic(energy, BarrierConfig(v0, 0.0, 2 * a)).tau
        worst_change = max(worst_change, abs(t2 - t1) / t1)
        worst_sat = max(worst_sat, abs(t1 - 2 / (k * mu)) / (2 / (k * mu)))
    ok = worst_change < 1e-3 and worst_sat < 1e-3
    return ok, f"max |tau(2a)-tau(a)|/tau(a) = {worst_change:.2e}, max gap to 2m/(hbar k mu) = {worst_sat:.2e}"


def check_linear_growth_slope():
    energy, v0, v1 = 0.5, 1.0, 0.5
    kw = barrier_wavenumber(energy, BarrierConfig(v0, v1, 1.0))
    widths = np.linspace(10.0, 30.0, 41) / kw.mu
    taus = [tunnelling_time_analytic(energy, BarrierConfig(v0, v1, a)).tau for a in widths]
    fit = linear_fit(np.column_stack([widths, taus]))
    predicted = kw.xi / kw.rho_sq
    err = abs(fit.slope - predicted) / predicted
    return err < 0.01, f"fitted slope {fit.slope:.6f}, predicted {predicted:.6f}, rel err {err:.2e}"


def check_limiting_speed():
    energy, v0 = 0.5, 1.0
    v1s = (0.2, 0.1, 0.05, 0.025)
    speeds = [limiting_speed(energy, BarrierConfig(v0, v1, 1.0)) for v1 in v1s]
    increasing = all(b > a for a, b in zip(speeds, speeds[1:]))
    ratio = speeds[-1] / speeds[-2]
    ok = increasing and abs(ratio - 2) / 2 < 0.05
    return ok, "v_l = " + ", ".join(f"{s:.4f}" for s in speeds) + f"; last ratio {ratio:.4f}"


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_derivative_identities():
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    names = ("xi_prime", "mu_prime", "a_prime", "b_prime", "c_prime")
    base = ("xi", "mu", "big_a", "big_b", "big_c")
    for _ in range(100):
        v0 = rng.uniform(0.2, 5.0)
        energy = rng.uniform(0.05, 3.0) * v0
        b = BarrierConfig(v0, rng.uniform(0.05, 2.0) * v0, rng.uniform(0.1, 10.0))
        p = phase_decomposition(energy, b)
        for name, field in zip(names, base):
            est = differentiate(
                lambda e: getattr(phase_decomposition(e, b), field), energy, rtol=1e-11
            )
            worst = max(worst, _rel(est.value, getattr(p, name)))
    return worst <= 1e-9, f"max relative gap {worst:.2e} over 100 points x 5 derivatives"


CHECKS: dict[str, Callable[[], tuple[bool, str]]] = {
    "free-propagation identity": check_free_propagation,
    "unitarity (V1 = 0)": check_unitarity,
    "closed-form vs linear-system amplitude": check_closed_form_amplitude,
    "analytic vs numeric tau (20x20x5 grid)": check_analytic_vs_numeric,
    "V1 -> 0 limit vs textbook real-barrier time": check_small_absorption_limit,
    "Hartman saturation (V1 = 0)": check_hartman_saturation,
    "linear growth slope (V1 = 0.5)": check_linear_growth_slope,
    "limiting-speed divergence": check_limiting_speed,
    "derivative identities": check_derivative_identities,
}


def run_checks(names=None) -> list[CheckResult]:
    results = []
    for name, check in CHECKS.items():
        if names is not None and name not in names:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - t0))
    return results
