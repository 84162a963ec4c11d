import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tunneltime import (
    BarrierConfig,
    DegenerateInputError,
    DomainError,
    IncidentState,
    UnitSystem,
    barrier_wavenumber,
    free_wavenumber,
    xi_mu_closed_form,
)


@pytest.mark.parametrize(
    "energy, expected", [(0.5, 1.0), (2.0, 2.0), (1.0, math.sqrt(2.0))]
)
def test_free_wavenumber(energy, expected):
    assert free_wavenumber(energy) == pytest.approx(expected, rel=1e-15)


def test_free_wavenumber_units():
    units = UnitSystem(hbar=0.5, mass=3.0)
    assert free_wavenumber(1.5, units) == pytest.approx(math.sqrt(9.0) / 0.5)


@pytest.mark.parametrize("energy", [0.0, -1.0])
def test_free_wavenumber_rejects_non_positive(energy):
    with pytest.raises(DomainError):
        free_wavenumber(energy)


def test_incident_state():
    s = IncidentState.from_energy(0.5)
    assert s.k == 1.0
    assert s.k**2 == pytest.approx(2 * s.energy, rel=1e-15)


def test_config_validation():
    with pytest.raises(DomainError):
        BarrierConfig(1.0, -0.1, 1.0)
    with pytest.raises(DomainError):
        BarrierConfig(1.0, 0.1, 0.0)
    with pytest.raises(DomainError):
        UnitSystem(hbar=0.0)
    assert math.copysign(1.0, BarrierConfig(1.0, -0.0, 1.0).v1) == 1.0


def _oracle(energy, v0, v1):
    q = cmath.sqrt(2 * (energy - v0 + 1j * v1))
    return q.real, q.imag


@pytest.mark.parametrize(
    "energy, v0, v1",
    [(0.5, 1.0, 0.0), (0.5, 1.0, 0.5), (1.0, 0.0, 0.0), (0.25, 1.0, 1.0)],
)
def test_barrier_wavenumber_matches_complex_sqrt(energy, v0, v1):
    kw = barrier_wavenumber(energy, BarrierConfig(v0, v1, 1.0))
    xi, mu = _oracle(energy, v0, v1)
    assert kw.xi == pytest.approx(xi, rel=1e-14, abs=1e-300)
    assert kw.mu == pytest.approx(mu, rel=1e-14, abs=1e-300)


def test_barrier_wavenumber_examples():
    kw = barrier_wavenumber(0.5, BarrierConfig(1.0, 0.0, 1.0))
    assert (kw.xi, kw.mu) == (0.0, 1.0)
    kw = barrier_wavenumber(0.5, BarrierConfig(1.0, 0.5, 1.0))
    assert kw.xi == pytest.approx(0.455090, abs=1e-6)
    assert kw.mu == pytest.approx(1.098684, abs=1e-6)
    kw = barrier_wavenumber(1.0, BarrierConfig(0.0, 0.0, 1.0))
    assert (kw.xi, kw.mu) == (pytest.approx(math.sqrt(2)), 0.0)


def test_closed_form_xi_mu_examples():
    xi, mu = xi_mu_closed_form(0.5, BarrierConfig(1.0, 0.5, 1.0))
    assert xi == pytest.approx(0.455090, abs=1e-6)
    assert mu == pytest.approx(1.098684, abs=1e-6)
    assert xi_mu_closed_form(0.5, BarrierConfig(1.0, 0.0, 1.0)) == (0.0, 1.0)
    # sqrt(2 (-0.75 + i)) = sqrt(-1.5 + 2i) = 1/sqrt(2) + i sqrt(2)
    xi, mu = xi_mu_closed_form(0.25, BarrierConfig(1.0, 1.0, 1.0))
    assert xi == pytest.approx(math.sqrt(0.5), rel=1e-14)
    assert mu == pytest.approx(math.sqrt(2.0), rel=1e-14)


def test_closed_form_literal_radicals():
    # the radicals exactly as written, no rearrangement
    energy, v0, v1 = 0.3, 1.7, 0.9
    root = math.sqrt((energy - v0) ** 2 + v1**2)
    xi = math.sqrt(root - (v0 - energy))
    mu = math.sqrt(root + (v0 - energy))
    assert xi_mu_closed_form(energy, BarrierConfig(v0, v1, 1.0)) == pytest.approx((xi, mu), rel=1e-13)


def test_closed_form_regime():
    with pytest.raises(DomainError):
        xi_mu_closed_form(1.0, BarrierConfig(1.0, 0.5, 1.0))


def test_degenerate_top_of_real_barrier():
    with pytest.raises(DegenerateInputError):
        barrier_wavenumber(1.0, BarrierConfig(1.0, 0.0, 1.0))


units_st = st.builds(
    UnitSystem,
    hbar=st.floats(0.1, 10.0),
    mass=st.floats(0.1, 10.0),
)


@settings(max_examples=300, deadline=None)
@given(
    energy=st.floats(1e-3, 10.0),
    v0=st.floats(-5.0, 10.0),
    v1=st.floats(0.0, 10.0),
    units=units_st,
)
def test_square_identities(energy, v0, v1, units):
    if energy == v0 and v1 == 0:
        return
    kw = barrier_wavenumber(energy, BarrierConfig(v0, v1, 1.0), units)
    s = units.two_m_over_hbar2
    target = complex(s * (energy - v0), s * v1)
    assert kw.mu >= 0 and kw.xi >= 0
    assert abs(kw.value**2 - target) <= 1e-12 * abs(target)


@settings(max_examples=300, deadline=None)
@given(
    v0=st.floats(0.1, 10.0),
    frac=st.floats(0.01, 0.99),
    v1=st.floats(0.0, 10.0),
    units=units_st,
)
def test_closed_form_equals_complex_root(v0, frac, v1, units):
    energy = frac * v0
    b = BarrierConfig(v0, v1, 1.0)
    kw = barrier_wavenumber(energy, b, units)
    xi, mu = xi_mu_closed_form(energy, b, units)
    assert xi == pytest.approx(kw.xi, rel=1e-12, abs=1e-300)
    assert mu == pytest.approx(kw.mu, rel=1e-12)


def test_xi_increasing_in_v1():
    xis = [barrier_wavenumber(0.5, BarrierConfig(1.0, v1, 1.0)).xi for v1 in (0, 1e-3, 0.1, 0.5, 1, 5)]
    assert xis[0] == 0
    assert all(b > a for a, b in zip(xis, xis[1:]))


def test_continuous_across_barrier_top():
    b = BarrierConfig(1.0, 0.3, 1.0)
    lo = barrier_wavenumber(1.0 - 1e-9, b).value
    hi = barrier_wavenumber(1.0 + 1e-9, b).value
    assert abs(hi - lo) < 1e-8
