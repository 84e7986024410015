# tests/test_perturbation.py
import math

import pytest
from hypothesis import given, strategies as st

from core.physics.perturbation import ld_rate, mollow_rate, resolvent_rate
from core.services.error_manager import ParameterError, SimulationWarning


@pytest.mark.parametrize("n, Omega, expected", [
    (1, 5.0, 0.5),
    (2, 5.0, -0.1),
    (3, 7.5, 0.01125),
])
def test_quoted_rates(n, Omega, expected):
    assert mollow_rate(n, 1.0, Omega).rate == pytest.approx(expected, rel=1e-12)


def test_fourth_order_rate_to_quoted_precision():
    rate = mollow_rate(4, 1.0, 6.0).rate
    assert rate == pytest.approx(-0.004115226, rel=1e-6)
    assert round(rate, 3) == -0.004


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("Omega", [3.0, 5.0, 7.5, 10.0, 20.0])
def test_resolvent_matches_closed_form(n, Omega):
    closed = mollow_rate(n, 1.0, Omega).rate
    resolvent = resolvent_rate(n, 1.0, Omega)
    assert resolvent.rate == pytest.approx(closed, rel=1e-9)
    assert resolvent.subspace_dim == 2 * (n + 1)


@given(st.integers(min_value=1, max_value=4), st.floats(min_value=3.0, max_value=30.0))
def test_rate_sign_alternates(n, Omega):
    rate = mollow_rate(n, 1.0, Omega).rate
    assert math.copysign(1.0, rate) == (-1.0) ** (n - 1)


@given(st.floats(min_value=0.1, max_value=5.0))
def test_rate_scales_as_lambda_power(lam):
    assert mollow_rate(3, lam, 7.5).rate == pytest.approx(lam ** 3 * mollow_rate(3, 1.0, 7.5).rate, rel=1e-12)


def test_resolvent_reports_energy_shifts():
    shifts = resolvent_rate(2, 1.0, 5.0).energy_shifts
    assert set(shifts) == {"+,0", "-,2"}
    assert all(math.isfinite(v) for v in shifts.values())


def test_resolvent_warns_off_resonance():
    with pytest.warns(SimulationWarning):
        resolvent_rate(2, 1.0, 5.0, Delta_a=4.0)


@pytest.mark.parametrize("n, Omega", [(0, 5.0), (2, 0.0), (2, -1.0)])
def test_invalid_rate_arguments(n, Omega):
    with pytest.raises(ParameterError):
        mollow_rate(n, 1.0, Omega)


def test_ld_rate():
    assert ld_rate(2, 1.0, 2.0, 20.0).rate == pytest.approx(0.01)
    assert ld_rate(2, 150e3, 25e3, 1e6).rate == pytest.approx(1125.0)


def test_ld_rate_outside_lamb_dicke_regime():
    with pytest.raises(ParameterError):
        ld_rate(1, 1.0, 1.0, 1.0)
