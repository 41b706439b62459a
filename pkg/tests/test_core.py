import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ringqed import RingParams, ValidationError, effective_rates, eta, gamma, phase, t_single
from ringqed.core import coupling_weight

rate = st.floats(0.0, 10.0)
freq = st.floats(-50.0, 50.0)
angle = st.floats(0.0, 2 * math.pi)
kappa = st.floats(1e-3, 10.0)


def test_phase_examples():
    p = RingParams(theta_a=math.pi, tau_d=0.1, omega_a=2.0)
    assert phase(2.0, p) == math.pi
    assert phase(2.0 + 5.0, RingParams(theta_a=math.pi, omega_a=2.0)) == math.pi
    assert phase(7.0, p) == pytest.approx(math.pi + 0.5, abs=1e-15)


def test_phase_vectorised():
    p = RingParams(theta_a=1.0, tau_d=0.2)
    w = np.array([0.0, 1.0, 2.0])
    np.testing.assert_allclose(phase(w, p), 1.0 + 0.2 * w)


def test_gamma_examples():
    assert gamma(0.0, RingParams(g1=1.0)) == 1 + 0j
    p = RingParams(g1=1.0, g2=1.0, theta_a=math.pi)
    assert abs(gamma(3.7, p)) < 1e-15
    # independent high-precision value (1 + 2 e^{i pi/2}) / 1
    ref = complex((1 + 2 * mp.expj(mp.pi / 2)) / 1)
    got = gamma(0.0, RingParams(g1=1.0, g2=4.0, theta_a=math.pi / 2))
    assert abs(got - ref) < 1e-15
    assert abs(got - (1 + 2j)) < 1e-15


def test_t_single_examples():
    assert abs(t_single(0.3, RingParams(g1=1.0, g2=1.0, theta_a=math.pi)) - 1) < 1e-15
    assert t_single(0.0, RingParams(g1=1.0, kappa_a=1.0)) == 0j
    t = t_single(0.0, RingParams(g1=1.0, g2=1.0, theta_a=0.0))
    assert t == -3 + 0j
    assert abs(t - 1) == 4


def test_eta_examples():
    assert eta(0.0, RingParams()) == 1 + 0j
    assert abs(eta(-1.0, RingParams(kappa_a=1.0)) - (-1j)) < 1e-15


def test_effective_rates_examples():
    r = effective_rates(RingParams(g1=1, g2=1, gt1=1, gt2=1, kappa_a=0.2, theta_a=math.pi))
    assert r.g_minus == pytest.approx(0.4, abs=1e-15)
    assert abs(r.gh_minus) < 1e-15
    r = effective_rates(RingParams(g1=1, g2=1, kappa_a=0.2, theta_a=math.pi / 3))
    assert r.g_minus == pytest.approx(1.9, abs=1e-14)
    assert r.gh_minus == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    r = effective_rates(RingParams(kappa_a=0.7))
    assert r.g_minus == pytest.approx(1.4) and r.gh_minus == 0


def test_effective_rates_nonnegative_random():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        g = rng.uniform(0, 10, 4)
        p = RingParams(g1=g[0], g2=g[1], gt1=g[2], gt2=g[3], kappa_a=rng.uniform(1e-6, 5),
                       theta_a=rng.uniform(0, 2 * math.pi))
        r = effective_rates(p)
        assert r.g_minus >= 0 and r.g_plus >= 0


@given(kappa, rate, rate, angle, freq, st.floats(0.0, 2.0))
def test_eta_unit_modulus(k, g1, g2, th, w, tau):
    p = RingParams(kappa_a=k, g1=g1, g2=g2, theta_a=th, tau_d=tau)
    assert abs(abs(eta(w, p)) - 1) < 1e-14
    d = k + 1j * (p.omega_a - w)
    assert abs(eta(w, p) - d.conjugate() / d) < 1e-15


@given(kappa, rate, rate, angle, freq)
def test_t_single_swap_symmetry(k, g1, g2, th, w):
    a = t_single(w, RingParams(kappa_a=k, g1=g1, g2=g2, theta_a=th))
    b = t_single(w, RingParams(kappa_a=k, g1=g2, g2=g1, theta_a=th))
    assert a == b


@given(kappa, rate, freq, st.floats(0.0, 3.0))
def test_markovian_limit(k, g1, w, tau):
    p = RingParams(kappa_a=k, g1=g1, tau_d=tau, theta_a=1.3)
    ref = 1 - g1 / (k + 1j * (0.0 - w))
    # identical formula; numpy and Python complex division may round differently
    assert abs(t_single(w, p) - ref) <= 4 * np.finfo(float).eps * max(1.0, abs(ref), g1 / k)


@settings(max_examples=50)
@given(rate, freq, st.integers(-3, 3))
def test_gamma_vanishes_for_balanced_pi(g, w, n):
    p = RingParams(g1=g, g2=g, theta_a=math.pi * (2 * n + 1) if n >= 0 else math.pi)
    assert abs(gamma(w, p)) < 1e-12 * max(1.0, g)


def test_coupling_weight_is_modulus_squared():
    p = RingParams(g1=0.7, g2=1.9, theta_a=2.1, tau_d=0.3)
    w = np.linspace(-5, 5, 11)
    amp = math.sqrt(p.g1) + math.sqrt(p.g2) * np.exp(1j * phase(w, p))
    np.testing.assert_allclose(coupling_weight(w, p), np.abs(amp) ** 2, rtol=1e-14)


@pytest.mark.parametrize("kw", [
    {"kappa_a": 0.0}, {"kappa_a": -1.0}, {"g1": -1.0}, {"g2": -0.1}, {"gt1": -1},
    {"gt2": -1}, {"epsilon": -1}, {"tau_d": -0.5}, {"chi": math.nan}, {"g1": math.inf},
    {"g1": 1j}, {"theta_a": "abc"}, {"zeta": "x"},
])
def test_ringparams_rejects(kw):
    with pytest.raises(ValidationError):
        RingParams(**kw)


def test_ringparams_coerces_and_serialises():
    p = RingParams(g1=1, zeta=0.5)
    assert isinstance(p.g1, float) and p.zeta == 0.5 + 0j
    d = p.to_dict()
    assert d["zeta"] == [0.5, 0.0]
    assert p.replace(g2=2.0).g2 == 2.0
