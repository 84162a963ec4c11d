"""Stationary scattering off the complex square barrier.

Region I (x < 0):   exp(ikx) + B_I exp(-ikx)
Region II:          A_II exp(i k_II x) + B_II exp(-i k_II x)
Region III (x > a): A_T exp(ikx)

The boundary-condition solve is the reference source of ``A_T``; the
closed-form amplitude is kept as an independent cross-check.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, BarrierConfig, UnitSystem, barrier_wavenumber, free_wavenumber
from .errors import DegenerateInputError

__all__ = [
    "ScatteringSolution",
    "solve_boundary_conditions",
    "transmission_amplitude_closed_form",
    "probability_budget",
    "continuity_residual",
]


@dataclass(frozen=True)
class ScatteringSolution:
    """Coefficients of the three-region wavefunction for unit incident amplitude.

    ``b_ii_scaled`` is the coefficient of ``exp(-i k_II (x - a))``, i.e.
    ``B_II * exp(-i k_II a)``; it stays O(1) for opaque barriers where
    ``B_II`` itself underflows.
    """

    a_t: complex
    b_i: complex
    a_ii: complex
    b_ii: complex
    b_ii_scaled: complex
    t_prob: float
    r_prob: float
    absorption: float


def _wavenumbers(energy, barrier, units):
    k = free_wavenumber(energy, units)
    q = barrier_wavenumber(energy, barrier, units).value
    return k, q


_SMALL_PHASE = 0.5


def _solve4(m, rhs):
    try:
        sol = tuple(complex(c) for c in np.linalg.solve(m, np.asarray(rhs, dtype=complex)))
    except np.linalg.LinAlgError as exc:
        raise DegenerateInputError("boundary-condition system is singular") from exc
    if not all(cmath.isfinite(c) for c in sol):
        raise DegenerateInputError("boundary-condition system is singular")
    return sol


def _solve_small_phase(k, q, a, e):
    # Near the barrier top q -> 0 and exp(+-iqx) become nearly parallel, so
    # the interior is written as alpha cos(qx) + beta sin(qx)/q instead.
    c = cmath.cos(q * a)
    s = cmath.sin(q * a) / q
    m = np.array(
        [
            [-1.0, 1.0, 0.0, 0.0],
            [1j * k, 0.0, 1.0, 0.0],
            [0.0, c, s, -1.0],
            [0.0, -q * q * s, c, -1j * k],
        ],
        dtype=complex,
    )
    b_i, alpha, beta, t_scaled = _solve4(m, [1.0, 1j * k, 0.0, 0.0])
    a_ii = 0.5 * (alpha + beta / (1j * q))
    b_ii = 0.5 * (alpha - beta / (1j * q))
    return b_i, a_ii, b_ii / e, t_scaled


def solve_boundary_conditions(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> ScatteringSolution:
    """Solve the four continuity conditions at x = 0 and x = a.

    The interior is expanded as ``A_II exp(iqx) + B' exp(-iq(x - a))`` with
    ``Im q >= 0``, so only the decaying factor ``exp(iqa)`` ever appears and
    opaque barriers cannot overflow. When ``|q| a`` is small the basis
    ``cos(qx), sin(qx)/q`` is used instead, which stays well conditioned as
    ``q -> 0`` at the barrier top.
    """
    k, q = _wavenumbers(energy, barrier, units)
    a = barrier.width
    e = cmath.exp(1j * q * a)
    if abs(q) * a < _SMALL_PHASE:
        b_i, a_ii, b_scaled, t_scaled = _solve_small_phase(k, q, a, e)
    else:
        # unknowns: B_I, A_II, B', T' with A_T = T' exp(-ika)
        m = np.array(
            [
                [-1.0, 1.0, e, 0.0],
                [k, q, -q * e, 0.0],
                [0.0, e, 1.0, -1.0],
                [0.0, q * e, -q, -k],
            ],
            dtype=complex,
        )
        b_i, a_ii, b_scaled, t_scaled = _solve4(m, [1.0, k, 0.0, 0.0])
    a_t = t_scaled * cmath.exp(-1j * k * a)
    t_prob = abs(a_t) ** 2
    r_prob = abs(b_i) ** 2
    return ScatteringSolution(
        a_t=a_t,
        b_i=b_i,
        a_ii=a_ii,
        b_ii=b_scaled * e,
        b_ii_scaled=b_scaled,
        t_prob=t_prob,
        r_prob=r_prob,
        absorption=1.0 - t_prob - r_prob,
    )


def transmission_amplitude_closed_form(
    energy: float, barrier: BarrierConfig, units: UnitSystem = NATURAL
) -> complex:
    """Closed-form transmission amplitude.

    A_T = 4 k q e^{iqa} e^{-ika} / [(k^2 + q^2)(1 - e^{2iqa}) + 2kq(1 + e^{2iqa})]

    with ``q = k_II``. The bracket groups ``k^2 + q^2`` together; only then
    does ``q = k`` give ``A_T = 1``.
    """
    k, q = _wavenumbers(energy, barrier, units)
    a = barrier.width
    e = cmath.exp(1j * q * a)
    e2 = e * e
    if abs(q) * a < _SMALL_PHASE:
        # same expression divided through by q, using 1 - e^{2iqa} = -2i e^{iqa} sin(qa)
        sinc = cmath.sin(q * a) / q
        denom = -2j * e * (k * k + q * q) * sinc + 2.0 * k * (1.0 + e2)
        numer = 4.0 * k * e
    else:
        denom = (k * k + q * q) * (1.0 - e2) + 2.0 * k * q * (1.0 + e2)
        numer = 4.0 * k * q * e
    if denom == 0:
        raise DegenerateInputError("closed-form transmission denominator vanishes")
    return numer * cmath.exp(-1j * k * a) / denom


def probability_budget(solution: ScatteringSolution) -> tuple[float, float, float]:
    """Return ``(T, R, absorption)`` with absorption ``= 1 - T - R``."""
    return solution.t_prob, solution.r_prob, solution.absorption


def continuity_residual(
    solution: ScatteringSolution,
    energy: float,
    barrier: BarrierConfig,
    units: UnitSystem = NATURAL,
) -> float:
    """Largest mismatch of psi and psi'/k at x = 0 and x = a.

    Measured relative to the largest coefficient magnitude (including the
    unit incident amplitude).
    """
    k, q = _wavenumbers(energy, barrier, units)
    a = barrier.width
    e = cmath.exp(1j * q * a)
    s = solution
    t_scaled = s.a_t * cmath.exp(1j * k * a)
    mismatches = [
        (1 + s.b_i) - (s.a_ii + s.b_ii_scaled * e),
        (1 - s.b_i) - q / k * (s.a_ii - s.b_ii_scaled * e),
        (s.a_ii * e + s.b_ii_scaled) - t_scaled,
        q / k * (s.a_ii * e - s.b_ii_scaled) - t_scaled,
    ]
    scale = max(1.0, abs(s.b_i), abs(s.a_ii), abs(s.b_ii_scaled), abs(s.a_t))
    return max(abs(m) for m in mismatches) / (scale * max(1.0, abs(q) / k))
