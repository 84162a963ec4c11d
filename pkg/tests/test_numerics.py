import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tunneltime import DomainError, differentiate, linear_fit, unwrap_phases


def test_unwrap_no_wraps_is_identity():
    assert unwrap_phases([0.1, 0.2, 0.3]).tolist() == [0.1, 0.2, 0.3]


def test_unwrap_single_jump():
    out = unwrap_phases([3.0, -3.0])
    assert out[0] == 3.0
    assert out[1] == pytest.approx(-3.0 + 2 * math.pi)


def test_unwrap_recovers_line():
    e = np.linspace(0.1, 10, 400)
    line = 3.7 * e - 1.0
    wrapped = np.angle(np.exp(1j * line))
    out = unwrap_phases(wrapped)
    # first sample is kept, so the recovery is up to its own 2 pi offset
    offset = line[0] - wrapped[0]
    assert np.allclose(out + offset, line, atol=1e-12)


def test_unwrap_edge_jump_maps_to_plus_pi():
    out = unwrap_phases([0.0, -math.pi])
    assert out[1] == pytest.approx(math.pi)


def test_unwrap_empty():
    with pytest.raises(DomainError):
        unwrap_phases([])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=50))
def test_unwrap_properties(xs):
    out = unwrap_phases(xs)
    assert out[0] == xs[0]
    turns = (out - np.asarray(xs)) / (2 * math.pi)
    assert np.allclose(turns, np.round(turns), atol=1e-9)
    d = np.diff(out)
    assert np.all(d > -math.pi - 1e-9) and np.all(d <= math.pi + 1e-9)
    again = unwrap_phases(out)
    assert np.allclose(again, out, rtol=0, atol=1e-9)


@pytest.mark.parametrize(
    "f, x, expected, tol",
    [
        (lambda e: e * e, 2.0, 4.0, 1e-10),
        (lambda e: math.sqrt(2 * e), 0.5, 1.0, 1e-9),
        (math.exp, 1.0, math.e, 1e-9),
    ],
)
def test_differentiate_examples(f, x, expected, tol):
    est = differentiate(f, x)
    assert est.converged
    assert est.value == pytest.approx(expected, rel=tol)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4), st.floats(0.5, 5.0))
def test_differentiate_exact_on_cubics(c, x):
    def f(e):
        return c[0] + c[1] * e + c[2] * e**2 + c[3] * e**3

    exact = c[1] + 2 * c[2] * x + 3 * c[3] * x**2
    est = differentiate(f, x)
    scale = max(abs(exact), sum(abs(v) for v in c) * x**2)
    assert abs(est.value - exact) <= 1e-10 * scale


def test_differentiate_unwraps_stencil():
    # a phase that wraps right next to the evaluation point
    slope = 50.0
    x0 = (math.pi - 1e-4) / slope

    def wrapped(e):
        return math.atan2(math.sin(slope * e), math.cos(slope * e))

    assert differentiate(wrapped, x0, 1e-3, unwrap=True).value == pytest.approx(slope, rel=1e-9)
    naive = differentiate(wrapped, x0, 1e-3, unwrap=False, max_halvings=2)
    assert abs(naive.value - slope) > 1.0


def test_differentiate_reports_nonconvergence():
    rng = np.random.default_rng(0)
    est = differentiate(lambda e: rng.normal(), 1.0, rtol=1e-14, max_halvings=5)
    assert not est.converged
    assert est.achieved_tol > 1e-14


def test_differentiate_rejects_bad_stencil():
    with pytest.raises(DomainError):
        differentiate(math.sqrt, 1.0, 0.6)


def test_linear_fit_examples():
    fit = linear_fit([(1, 2), (2, 4), (3, 6)])
    assert (fit.slope, fit.intercept, fit.r_squared) == pytest.approx((2.0, 0.0, 1.0), abs=1e-14)
    fit = linear_fit([(0, 1), (1, 1), (2, 1)])
    assert (fit.slope, fit.intercept) == pytest.approx((0.0, 1.0), abs=1e-15)


def test_linear_fit_errors():
    with pytest.raises(DomainError):
        linear_fit([(1, 1), (1, 2), (1, 3)])
    with pytest.raises(DomainError):
        linear_fit([(1, 1), (2, 2)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(-100, 100), st.floats(-100, 100)), min_size=3, max_size=30))
def test_linear_fit_normal_equations(points):
    xs = np.array([p[0] for p in points])
    if np.ptp(xs) < 1e-3:
        return
    fit = linear_fit(points)
    ys = np.array([p[1] for p in points])
    res = ys - (fit.slope * xs + fit.intercept)
    scale = np.sum(np.abs(xs * ys)) + np.sum(xs**2) * abs(fit.slope) + np.sum(np.abs(ys)) + 1.0
    assert abs(res.sum()) <= 1e-10 * scale
    assert abs(res @ xs) <= 1e-10 * scale
    assert 0 <= fit.r_squared <= 1
