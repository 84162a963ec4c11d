"""Parameter sweeps and classification of the width dependence of tau."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import NATURAL, BarrierConfig, UnitSystem, barrier_wavenumber, free_wavenumber
from .errors import DegenerateInputError, DomainError
from .numerics import linear_fit, unwrap_phases
from .phase_time import (
    asymptotic_time,
    limiting_speed,
    numeric_time_estimate,
    tunnelling_time_analytic,
)
from .scattering import solve_boundary_conditions

__all__ = [
    "AXES",
    "SweepSpec",
    "SweepRecord",
    "HartmanReport",
    "axis_values",
    "evaluate_point",
    "run_sweep",
    "cross_oracle_failures",
    "hartman_analysis",
]

AXES = ("energy", "width", "v0", "v1")
CROSS_ORACLE_RTOL = 1e-5
SATURATION_RTOL = 1e-3
OPAQUE_TAIL = 10.0
OPAQUE_REQUIRED = 20.0
RESONANCE_SIN = 1e-6


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep over ``axis``; the other parameters stay fixed.

    The fixed value of the swept parameter itself is ignored.
    """

    axis: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"
    energy: float = 0.5
    v0: float = 1.0
    v1: float = 0.0
    width: float = 1.0
    units: UnitSystem = NATURAL

    def __post_init__(self):
        if self.axis not in AXES:
            raise DomainError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.spacing not in ("linear", "logarithmic"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        if not self.start < self.stop:
            raise DomainError("sweep needs start < stop")
        if int(self.count) != self.count or self.count < 2:
            raise DomainError("sweep count must be an integer >= 2")
        if self.spacing == "logarithmic" and not self.start > 0:
            raise DomainError("logarithmic spacing needs start > 0")


@dataclass(frozen=True)
class SweepRecord:
    axis_value: float
    energy: float
    v0: float
    v1: float
    width: float
    k: float
    xi: float
    mu: float
    t_prob: float
    r_prob: float
    absorption: float
    phi_unwrapped: float
    tau_analytic: float
    tau_numeric: float
    tau_asy: float
    v_limit: float
    flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class HartmanReport:
    regime: str
    predicted_slope: float
    opacity_range: tuple[float, float] | None
    saturation_value: float | None = None
    fitted_slope: float | None = None
    slope_rel_error: float | None = None
    notes: tuple[str, ...] = field(default=())


def axis_values(spec: SweepSpec) -> np.ndarray:
    if spec.spacing == "logarithmic":
        return np.geomspace(spec.start, spec.stop, int(spec.count))
    return np.linspace(spec.start, spec.stop, int(spec.count))


def evaluate_point(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL, axis_value=None
) -> tuple[SweepRecord, float]:
    """Evaluate one grid point.

    Returns the record (with ``phi_unwrapped`` still holding the principal
    value) and that principal phase. Degenerate points come back flagged
    with NaN physics fields.
    """
    if axis_value is None:
        axis_value = energy
    nan = math.nan
    flags = []
    try:
        k = free_wavenumber(energy, units)
        kw = barrier_wavenumber(energy, barrier, units)
        sol = solve_boundary_conditions(energy, barrier, units)
        phi = float(np.angle(sol.a_t))
        tau_a = tunnelling_time_analytic(energy, barrier, units).tau
        est = numeric_time_estimate(energy, barrier, units)
    except DegenerateInputError:
        k = free_wavenumber(energy, units) if energy > 0 else nan
        rec = SweepRecord(
            float(axis_value), energy, barrier.v0, barrier.v1, barrier.width,
            k, 0.0, 0.0, nan, nan, nan, nan, nan, nan, nan, nan, ("degenerate",),
        )
        return rec, nan
    if not est.converged:
        flags.append("fd-nonconverged")
    if energy > barrier.v0 and barrier.v1 == 0 and abs(math.sin(kw.xi * barrier.width)) < RESONANCE_SIN:
        flags.append("near-resonance")
    rec = SweepRecord(
        axis_value=float(axis_value),
        energy=energy,
        v0=barrier.v0,
        v1=barrier.v1,
        width=barrier.width,
        k=k,
        xi=kw.xi,
        mu=kw.mu,
        t_prob=sol.t_prob,
        r_prob=sol.r_prob,
        absorption=sol.absorption,
        phi_unwrapped=phi,
        tau_analytic=tau_a,
        tau_numeric=est.value,
        tau_asy=asymptotic_time(energy, barrier, units),
        v_limit=limiting_speed(energy, barrier, units),
        flags=tuple(flags),
    )
    return rec, phi


def _point(spec: SweepSpec, value: float):
    params = {"energy": spec.energy, "v0": spec.v0, "v1": spec.v1, "width": spec.width}
    params[spec.axis] = float(value)
    barrier = BarrierConfig(params["v0"], params["v1"], params["width"])
    return params["energy"], barrier


def run_sweep(spec: SweepSpec) -> list[SweepRecord]:
    """Evaluate every grid point of ``spec`` in axis order.

    The transmission phase is unwrapped along the sweep (across runs of
    non-degenerate points), so the grid must be fine enough that the phase
    moves by less than pi between neighbours.
    """
    records, phases = [], []
    for value in axis_values(spec):
        energy, barrier = _point(spec, value)
        rec, phi = evaluate_point(energy, barrier, spec.units, axis_value=value)
        records.append(rec)
        phases.append(phi)

    phases = np.asarray(phases)
    ok = np.isfinite(phases)
    if ok.any():
        phases[ok] = unwrap_phases(phases[ok])
    return [
        replace(rec, phi_unwrapped=float(p)) if math.isfinite(p) else rec
        for rec, p in zip(records, phases)
    ]


def cross_oracle_failures(records, rtol: float = CROSS_ORACLE_RTOL) -> list[SweepRecord]:
    """Non-flagged records whose analytic and numeric times disagree."""
    bad = []
    for rec in records:
        if rec.flags:
            continue
        gap = abs(rec.tau_analytic - rec.tau_numeric) / max(abs(rec.tau_numeric), 1e-12)
        if not gap <= rtol:
            bad.append(rec)
    return bad


def hartman_analysis(
    energy: float,
    v0: float,
    v1: float,
    widths: tuple[float, float],
    units: UnitSystem = NATURAL,
    count: int = 61,
) -> HartmanReport:
    """Classify how the tunnelling time grows with the barrier width.

    ``tau`` is sampled on ``count`` widths spanning ``widths``. The barrier
    counts as saturating (Hartman effect) when ``tau(a_max)`` and
    ``tau(a_max / 2)`` differ by less than 1e-3 relative; otherwise a line is
    fitted over the opaque tail ``mu a >= 10`` and compared with the
    predicted slope ``m xi / (hbar (xi^2 + mu^2))``. The upper width must
    reach ``mu a >= 20``, else the regime is ``undetermined``.
    """
    a_min, a_max = map(float, widths)
    if not 0 < a_min < a_max:
        raise DomainError("width range needs 0 < start < stop")
    kw = barrier_wavenumber(energy, BarrierConfig(v0, v1, a_max), units)
    predicted = (units.mass / units.hbar) * kw.xi / kw.rho_sq
    mu = kw.mu
    if mu * a_max < OPAQUE_REQUIRED:
        return HartmanReport(
            "undetermined",
            predicted,
            (mu * a_min, mu * a_max),
            notes=(f"insufficient opacity: mu*a_max = {mu * a_max:.3g} < {OPAQUE_REQUIRED:g}",),
        )

    def tau(a):
        return tunnelling_time_analytic(energy, BarrierConfig(v0, v1, a), units).tau

    grid = np.linspace(a_min, a_max, int(count))
    tail = grid[mu * grid >= OPAQUE_TAIL]
    opacity = (float(mu * tail[0]), float(mu * a_max)) if tail.size else None
    if tail.size < 3:
        return HartmanReport(
            "undetermined", predicted, opacity,
            notes=("fewer than 3 widths in the opaque tail",),
        )
    taus = np.array([tau(a) for a in tail])
    fit = linear_fit(np.column_stack([tail, taus]))

    tau_top, tau_half = taus[-1], tau(a_max / 2)
    rel_change = abs(tau_top - tau_half) / abs(tau_half)
    if rel_change < SATURATION_RTOL and abs(fit.slope) * a_max < SATURATION_RTOL * abs(tau_top):
        return HartmanReport("saturating", predicted, opacity, saturation_value=float(tau_top))

    rel_err = abs(fit.slope - predicted) / abs(predicted) if predicted else math.inf
    if fit.slope > 0 and fit.r_squared > 0.999:
        return HartmanReport(
            "linear-growth", predicted, opacity,
            fitted_slope=fit.slope, slope_rel_error=rel_err,
        )
    return HartmanReport(
        "mixed/undetermined", predicted, opacity,
        fitted_slope=fit.slope, slope_rel_error=rel_err,
        notes=(f"tail fit r^2 = {fit.r_squared:.6f}",),
    )
