"""Transmission phase and tunnelling (phase) times.

All times are ``hbar * d/dE (arg A_T + k a)``, i.e. the classical traversal
time ``m a / (hbar k)`` plus the group delay. Several independent routes are
provided so they can be checked against each other:

* :func:`tunnelling_time_analytic`: the simplified closed form ``tau = n/d``
  written with ``sin 2xi a``, ``sinh 2mu a`` etc.;
* :func:`tunnelling_time_appendix_form`: the same quotient before
  simplification, written with ``tanh mu a`` and a ``1/cosh^2 mu a``
  prefactor (overflow-free for opaque barriers);
* :func:`real_barrier_time`: the textbook result for a real barrier below
  its top, used as the ``V1 -> 0`` oracle;
* :func:`numeric_time`: finite differences of the unwrapped phase of the
  boundary-condition amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, BarrierConfig, UnitSystem, barrier_wavenumber, free_wavenumber
from .errors import DegenerateInputError, DomainError
from .numerics import DerivativeEstimate, differentiate
from .scattering import solve_boundary_conditions

__all__ = [
    "METHODS",
    "PhaseDecomposition",
    "TunnellingTimeResult",
    "wrap_angle",
    "phase_decomposition",
    "phase",
    "phase_closed_form",
    "phase_closed_form_raw",
    "real_barrier_phase",
    "classical_time",
    "tunnelling_time_analytic",
    "tunnelling_time_appendix_form",
    "real_barrier_time",
    "numeric_time",
    "numeric_time_estimate",
    "asymptotic_time",
    "limiting_speed",
]

METHODS = ("analytic-eq11", "analytic-appendix", "numeric-fd", "real-barrier-oracle")

# below this xi*a the general formulas reduce to the real-barrier limit
_XI_A_DISPATCH = 1e-8
_Q_A_DISPATCH = 1e-3
_TOP_V1 = 1e-200
_COT_SWITCH = 1e12
_D_GUARD = 1e-300


@dataclass(frozen=True)
class PhaseDecomposition:
    """Auxiliary quantities of the transmission phase and their energy derivatives.

    ``big_a = xi (k^2 + rho^2)``, ``big_b = mu (rho^2 - k^2)``,
    ``big_c = 2 k rho^2`` with ``rho^2 = xi^2 + mu^2 = |k_II|^2``, and the
    trigonometric products ``x, y, omega, r`` of ``xi a`` and ``mu a``.
    The inverse amplitude is then

        1 / (A_T e^{ika}) = [(C omega + B x + A y) + i (C r + B y - A x)] / C.
    """

    k: float
    xi: float
    mu: float
    rho_sq: float
    big_a: float
    big_b: float
    big_c: float
    x: float
    y: float
    omega: float
    r: float
    k_prime: float
    xi_prime: float
    mu_prime: float
    rho_sq_prime: float
    a_prime: float
    b_prime: float
    c_prime: float


@dataclass(frozen=True)
class TunnellingTimeResult:
    phi: float
    delay: float
    classical_time: float
    tau: float
    tau_asy: float
    v_limit: float
    method: str


def wrap_angle(angle: float) -> float:
    """Map an angle into (-pi, pi]."""
    return math.pi - (math.pi - angle) % (2 * math.pi)


def phase_decomposition(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> PhaseDecomposition:
    k = free_wavenumber(energy, units)
    kw = barrier_wavenumber(energy, barrier, units)
    xi, mu, rho_sq = kw.xi, kw.mu, kw.rho_sq
    a = barrier.width
    s = units.two_m_over_hbar2
    k_sq = k * k

    big_a = xi * (k_sq + rho_sq)
    big_b = mu * (rho_sq - k_sq)
    big_c = 2.0 * k * rho_sq

    xi_p = 0.5 * s * xi / rho_sq
    mu_p = -0.5 * s * mu / rho_sq
    rho_sq_p = s * (xi * xi - mu * mu) / rho_sq
    k_p = s / (2.0 * k)

    with np.errstate(over="ignore", invalid="ignore"):
        # overflow to inf for very opaque barriers; callers fall back to tanh forms
        cosh_ma, sinh_ma = float(np.cosh(mu * a)), float(np.sinh(mu * a))
        x = math.sin(xi * a) * cosh_ma
        y = math.cos(xi * a) * sinh_ma
        omega = math.cos(xi * a) * cosh_ma
        r = -math.sin(xi * a) * sinh_ma

    return PhaseDecomposition(
        k=k,
        xi=xi,
        mu=mu,
        rho_sq=rho_sq,
        big_a=big_a,
        big_b=big_b,
        big_c=big_c,
        x=x,
        y=y,
        omega=omega,
        r=r,
        k_prime=k_p,
        xi_prime=xi_p,
        mu_prime=mu_p,
        rho_sq_prime=rho_sq_p,
        a_prime=xi_p * (k_sq + rho_sq) + xi * (s + rho_sq_p),
        b_prime=mu_p * (rho_sq - k_sq) + mu * (rho_sq_p - s),
        c_prime=2.0 * k_p * rho_sq + 2.0 * k * rho_sq_p,
    )


def phase(energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL) -> float:
    """Principal value of ``arg A_T`` from the boundary-condition solution."""
    return float(np.angle(solve_boundary_conditions(energy, barrier, units).a_t))


def phase_closed_form_raw(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> float:
    """Plain arctan evaluation of the cotangent phase formula.

        phi = arctan[(tanh(mu a)(C - B cot(xi a)) + A) / (cot(xi a)(C + A tanh(mu a)) + B)] - k a

    Only determined modulo pi. Where ``|cot xi a|`` is huge (including
    ``xi = 0``) the quotient is multiplied through by ``tan xi a``.
    """
    num, den, _ = _cot_quotient(energy, barrier, units)
    k = free_wavenumber(energy, units)
    return math.atan(num / den) - k * barrier.width if den != 0 else (
        math.copysign(math.pi / 2, num) - k * barrier.width
    )


def _cot_quotient(energy, barrier, units):
    p = phase_decomposition(energy, barrier, units)
    a = barrier.width
    t = math.tanh(p.mu * a)
    sin_xa, cos_xa = math.sin(p.xi * a), math.cos(p.xi * a)
    if abs(cos_xa) <= _COT_SWITCH * abs(sin_xa):
        cot = cos_xa / sin_xa
        num = t * (p.big_c - p.big_b * cot) + p.big_a
        den = cot * (p.big_c + p.big_a * t) + p.big_b
        # both were divided by sin(xi a) cosh(mu a)
        sign = math.copysign(1.0, sin_xa)
    else:
        tan = sin_xa / cos_xa
        num = t * (p.big_c * tan - p.big_b) + p.big_a * tan
        den = (p.big_c + p.big_a * t) + p.big_b * tan
        sign = math.copysign(1.0, cos_xa)
    return num, den, sign


def phase_closed_form(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> float:
    """Closed-form transmission phase in (-pi, pi].

    The arctan branch is fixed by restoring the sign of the common factor
    (``sin xi a`` or ``cos xi a``) divided out of numerator and denominator,
    which turns the quotient back into a two-argument arctangent.
    """
    num, den, sign = _cot_quotient(energy, barrier, units)
    k = free_wavenumber(energy, units)
    return wrap_angle(math.atan2(sign * num, sign * den) - k * barrier.width)


def real_barrier_phase(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> float:
    """``arg A_T`` for a real barrier below its top (unwrapped in ``k a``)."""
    k, mu = _real_barrier_wavenumbers(energy, barrier, units)
    f = (mu * mu - k * k) / (2.0 * k * mu)
    return -math.atan(f * math.tanh(mu * barrier.width)) - k * barrier.width


def classical_time(energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL) -> float:
    """Free traversal time ``a / v`` with ``v = hbar k / m``."""
    k = free_wavenumber(energy, units)
    return units.mass * barrier.width / (units.hbar * k)


def asymptotic_time(energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL) -> float:
    """Opaque-barrier time ``m xi a / (hbar (xi^2 + mu^2))``, linear in the width."""
    kw = barrier_wavenumber(energy, barrier, units)
    return (units.mass / units.hbar) * kw.xi * barrier.width / kw.rho_sq


def limiting_speed(energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL) -> float:
    """Opaque-barrier mean speed ``hbar (xi^2 + mu^2) / (m xi)``.

    Returns ``math.inf`` when ``xi == 0`` (real barrier below its top).
    """
    kw = barrier_wavenumber(energy, barrier, units)
    if kw.xi == 0:
        return math.inf
    return (units.hbar / units.mass) * kw.rho_sq / kw.xi


def _result(energy, barrier, units, tau, method, phi=None):
    tc = classical_time(energy, barrier, units)
    if phi is None:
        phi = phase(energy, barrier, units)
    return TunnellingTimeResult(
        phi=phi,
        delay=tau - tc,
        classical_time=tc,
        tau=tau,
        tau_asy=asymptotic_time(energy, barrier, units),
        v_limit=limiting_speed(energy, barrier, units),
        method=method,
    )


def _eq11_quotient(energy, barrier, units):
    p = phase_decomposition(energy, barrier, units)
    a, half_s = barrier.width, 0.5 * units.two_m_over_hbar2
    A, B, C = p.big_a, p.big_b, p.big_c
    Ap, Bp, Cp = p.a_prime, p.b_prime, p.c_prime
    xa, ma = p.xi * a, p.mu * a
    sin2, cos2 = math.sin(2 * xa), math.cos(2 * xa)
    with np.errstate(over="ignore"):
        sinh2, cosh2 = float(np.sinh(2 * ma)), float(np.cosh(2 * ma))
        sinh_sq = float(np.sinh(ma)) ** 2
    sin_sq, cos_sq = math.sin(xa) ** 2, math.cos(xa) ** 2
    g_mu = a * half_s * p.mu / p.rho_sq
    g_xi = a * half_s * p.xi / p.rho_sq
    n = (
        sin2 * (-g_mu * (C * C - B * B - A * A) + (Ap * C - A * Cp))
        + cos2 * (2 * B * C * g_mu)
        + sinh2 * (g_xi * (A * A + B * B + C * C) + (B * Cp - Bp * C))
        + 2 * g_xi * A * C * cosh2
        + 2 * (Ap * B - A * Bp) * (sin_sq + sinh_sq)
    )
    d = (
        2 * (A * A + B * B) * (sin_sq + sinh_sq)
        + 2 * A * C * sinh2
        + 2 * B * C * sin2
        + 2 * C * C * (cos_sq + sinh_sq)
    )
    return n, d


def _appendix_quotient(energy, barrier, units):
    p = phase_decomposition(energy, barrier, units)
    a = barrier.width
    A, B, C = p.big_a, p.big_b, p.big_c
    Ap, Bp, Cp = p.a_prime, p.b_prime, p.c_prime
    xa, ma = p.xi * a, p.mu * a
    s, c = math.sin(xa), math.cos(xa)
    t = math.tanh(ma)
    sech_sq = (2.0 / (math.exp(ma) + math.exp(-ma))) ** 2 if ma < 700 else 0.0
    a_mu_p, a_xi_p = a * p.mu_prime, a * p.xi_prime
    n = (
        sech_sq
        * (
            s * c * (a_mu_p * (C * C - B * B - A * A) + (Ap * C - A * Cp))
            + a_mu_p * B * C * (s * s - c * c)
        )
        + t * (a_xi_p * (A * A + B * B + C * C) + (B * Cp - Bp * C))
        + a_xi_p * A * C * (1 + t * t)
        + (Ap * B - A * Bp) * (s * s + t * t * c * c)
    )
    d = (
        (A * A + B * B) * (s * s + t * t * c * c)
        + 2 * A * C * t
        + C * C * (c * c + s * s * t * t)
        + B * C * math.sin(2 * xa) * sech_sq
    )
    return n, d


def _checked_ratio(n, d, hbar):
    if not math.isfinite(n) or not math.isfinite(d):
        raise OverflowError("closed-form time overflowed")
    if abs(d) < _D_GUARD:
        raise DegenerateInputError("tunnelling-time denominator vanishes")
    return hbar * n / d


def _dispatch(energy, barrier, units):
    """Return the method to use instead of the general formulas, or None."""
    kw = barrier_wavenumber(energy, barrier, units)
    if math.sqrt(kw.rho_sq) * barrier.width < _Q_A_DISPATCH:
        # near the barrier top every closed form cancels like eps / (|k_II| a)^2
        return "numeric-fd"
    if energy < barrier.v0 and kw.xi * barrier.width < _XI_A_DISPATCH:
        return "real-barrier-oracle" if barrier.v1 == 0 else "numeric-fd"
    return None


def tunnelling_time_analytic(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> TunnellingTimeResult:
    """Total tunnelling time from the simplified ``tau = n/d`` closed form.

    Real barriers below the top are routed to :func:`real_barrier_time`,
    and a vanishing but nonzero ``xi a`` to finite differences, as is the
    neighbourhood of the barrier top (``|k_II| a < 1e-3``). For widths
    so large that ``sinh(2 mu a)`` overflows, the tanh-scaled appendix form
    is used instead.
    """
    method = _dispatch(energy, barrier, units)
    if method == "real-barrier-oracle":
        return real_barrier_time(energy, barrier, units)
    if method == "numeric-fd":
        return numeric_time(energy, barrier, units)
    try:
        tau = _checked_ratio(*_eq11_quotient(energy, barrier, units), units.hbar)
    except OverflowError:
        return tunnelling_time_appendix_form(energy, barrier, units)
    return _result(energy, barrier, units, tau, "analytic-eq11")


def tunnelling_time_appendix_form(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> TunnellingTimeResult:
    """Tunnelling time from the unsimplified quotient (tanh / sech^2 form).

    No regime dispatch: valid wherever the quotient is finite, including
    ``xi = 0``.
    """
    tau = _checked_ratio(*_appendix_quotient(energy, barrier, units), units.hbar)
    return _result(energy, barrier, units, tau, "analytic-appendix")


def _real_barrier_wavenumbers(energy, barrier, units):
    if barrier.v1 != 0:
        raise DomainError("real-barrier formulas need v1 == 0")
    if not 0 < energy < barrier.v0:
        raise DomainError("real-barrier formulas need 0 < E < V0")
    k = free_wavenumber(energy, units)
    mu = math.sqrt(units.two_m_over_hbar2 * (barrier.v0 - energy))
    return k, mu


def real_barrier_time(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> TunnellingTimeResult:
    """Phase time of a real rectangular barrier below its top.

    With ``k0^2 = 2 m V0 / hbar^2`` and ``D = k0^4 sinh^2(mu a) + 4 k^2 mu^2``,

        tau = m / (hbar k mu) * [2 mu a k^2 (mu^2 - k^2) + k0^4 sinh(2 mu a)] / D

    evaluated here after dividing through by ``cosh^2(mu a)``. The opaque
    limit is ``2 m / (hbar k mu)``, independent of the width.
    """
    k, mu = _real_barrier_wavenumbers(energy, barrier, units)
    ma = mu * barrier.width
    k0_4 = (units.two_m_over_hbar2 * barrier.v0) ** 2
    t = math.tanh(ma)
    sech_sq = (2.0 / (math.exp(ma) + math.exp(-ma))) ** 2 if ma < 700 else 0.0
    num = 2 * ma * k * k * (mu * mu - k * k) * sech_sq + 2 * k0_4 * t
    den = 4 * k * k * mu * mu * sech_sq + k0_4 * t * t
    tau = units.mass / (units.hbar * k * mu) * num / den
    return _result(energy, barrier, units, tau, "real-barrier-oracle")


def _default_step(energy, barrier, units):
    kw = barrier_wavenumber(energy, barrier, units)
    k = free_wavenumber(energy, units)
    # energy over which the phase changes by ~0.05 rad
    scale = units.hbar**2 * max(k, math.sqrt(kw.rho_sq)) / (units.mass * barrier.width)
    return min(1e-3 * energy, 0.05 * scale, energy / 4)


def numeric_time_estimate(
    energy: float,
    barrier: BarrierConfig,
    units: UnitSystem = NATURAL,
    h0: float | None = None,
) -> DerivativeEstimate:
    """``hbar d/dE (arg A_T + k a)`` by Richardson central differences.

    The phase is taken from the boundary-condition solver and unwrapped
    across each stencil. The returned estimate is already scaled by hbar.
    """

    # A_T depends on k_II only through k_II^2, so it is analytic across the
    # barrier top and the stencil may straddle it. A node landing exactly on
    # E == V0 of a real barrier is evaluated as the V1 -> 0+ limit.
    top = barrier.with_(v1=_TOP_V1 * barrier.v0) if barrier.v1 == 0 else barrier

    def total_phase(e):
        b = top if e == barrier.v0 else barrier
        return phase(e, b, units) + free_wavenumber(e, units) * barrier.width

    if h0 is None:
        h0 = _default_step(energy, barrier, units)
    est = differentiate(total_phase, energy, h0, unwrap=True)
    return DerivativeEstimate(units.hbar * est.value, est.achieved_tol, est.step, est.converged)


def numeric_time(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> TunnellingTimeResult:
    est = numeric_time_estimate(energy, barrier, units)
    return _result(energy, barrier, units, est.value, "numeric-fd")
