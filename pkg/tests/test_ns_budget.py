import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import tau_closed
from tmdyn.ns_budget import (
    NSParams,
    amplitude,
    min_amplitude,
    pressure_coefficient,
    step_budget,
    tau,
    tau_curve,
)

positive = st.floats(0.05, 20, allow_nan=False)


def test_tau_zero():
    assert tau(0.0, NSParams(1, 10)) == 0.0


def test_tau_ln2_exact():
    assert tau(math.log(2), NSParams(1, 10)) == 5.0


def test_tau_limit():
    p = NSParams(Fraction(1, 2), 3)
    assert tau(200.0, p) == pytest.approx(6.0, rel=1e-15)
    assert tau(200.0, p) <= 6.0


def test_tau_domain():
    with pytest.raises(ValueError):
        tau(-1.0, NSParams(1, 1))


@given(positive, positive, st.floats(0, 30), st.floats(1e-3, 5))
def test_tau_monotone_and_bounded(nu, m, t, dt):
    p = NSParams(nu, m)
    assert tau(t, p) < tau(t + dt, p) or tau(t + dt, p) == pytest.approx(m / nu)
    assert tau(t, p) <= m / nu


@given(positive, positive, st.floats(0, 5))
def test_tau_matches_closed_form(nu, m, t):
    assert tau(t, NSParams(nu, m)) == pytest.approx(tau_closed(t, nu, m), rel=1e-12, abs=1e-15)


@given(st.floats(0.5, 10), positive, st.floats(0.01, 2))
def test_reparametrization_derivative(nu, m, s):
    # s = nu * t; beyond a few decay times the difference quotient is round-off
    p, t = NSParams(nu, m), s / nu
    h = 1e-6
    fd = (tau(t + h, p) - tau(t - h, p)) / (2 * h)
    assert abs(fd - amplitude(t, p)) <= 1e-8 * amplitude(t, p) + 1e-12


def test_amplitude_and_pressure():
    p = NSParams(2, 4)
    assert amplitude(0.0, p) == 4.0
    assert pressure_coefficient(0.0, p) == -8.0
    assert amplitude(math.log(2), p) == pytest.approx(1.0)
    assert pressure_coefficient(math.log(2), p) == pytest.approx(-0.5)
    assert amplitude(math.log(2) / 2, p) == pytest.approx(2.0)
    assert pressure_coefficient(math.log(2) / 2, p) == pytest.approx(-2.0)


def test_step_budget_examples():
    assert step_budget(NSParams(1, 10), 1) == 9
    assert step_budget(NSParams(1, 10), "0.3") == 33
    assert step_budget(NSParams(1, 10), 11) == 0
    assert step_budget(NSParams("0.1", "1"), "0.1") == 99


@given(st.integers(1, 50), st.integers(1, 50), st.integers(1, 50))
def test_step_budget_is_strict(nu, m, step):
    p = NSParams(nu, m)
    n = step_budget(p, step)
    assert n * step < Fraction(m, nu) <= (n + 1) * step


def test_invalid_params():
    with pytest.raises(ValueError):
        NSParams(0, 1)
    with pytest.raises(ValueError):
        step_budget(NSParams(1, 1), 0)


def test_min_amplitude():
    b = min_amplitude(1, 1, 10)
    assert b.m == 10 and not b.attained
    assert step_budget(NSParams(1, b.m), 1) == 9
    assert step_budget(NSParams(1, b.m + Fraction(1, 10**6)), 1) == 10


def test_curve_is_increasing():
    pts = tau_curve(NSParams(1, 10), 10.0, 100)
    assert len(pts) == 100 and pts[0] == (0.0, 0.0)
    assert all(a[1] < b[1] for a, b in zip(pts, pts[1:]))
