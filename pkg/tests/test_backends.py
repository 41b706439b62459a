import math
import os
import subprocess
import sys

import numpy as np
import pytest

from ringqed import AmplitudeState, RingParams, TwoPhotonInput, t_correction
from ringqed import _accel, _kernels
from ringqed.driven import evolve

SNIPPET = "from ringqed import _accel; print(_accel.default_backend())"


@pytest.mark.parametrize("value,expected", [("1", "numpy"), ("true", "numpy"), ("0", "numba"), ("", "numba")])
def test_env_flag_selects_backend(value, expected):
    env = dict(os.environ, RINGQED_DISABLE_NUMBA=value)
    out = subprocess.run([sys.executable, "-c", SNIPPET], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip() == expected


def test_resolve_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _accel.resolve_backend("fortran")
    assert _accel.resolve_backend("numpy") == "numpy"


def test_shell_integrand_parity():
    pars = np.array([0.2, 1.0, 1.0, math.sqrt(0.5), 0.7, 0.3, 0.1])
    nu = np.linspace(-50, 50, 1001)
    a = _kernels.shell_integrand_np(nu, pars)
    b = _kernels.shell_integrand_nb(nu, pars)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("tau", [0.0, 0.5])
def test_t_correction_parity(tau):
    p = RingParams(kappa_a=1, chi=0.2, g1=1, g2=0.6, theta_a=0.7, tau_d=tau)
    inp = TwoPhotonInput(0.4, -0.9)
    a = t_correction(inp, p, backend="numpy")
    b = t_correction(inp, p, backend="numba")
    assert abs(a - b) < 1e-12 * abs(a)


def test_rk4_parity():
    p = RingParams(g1=1, g2=1, gt1=1, gt2=1, kappa_a=0.2, zeta=0.5, chi=4, epsilon=4, theta_a=1.0)
    a = evolve(AmplitudeState.vacuum(), p, 5.0, backend="numpy")
    b = evolve(AmplitudeState.vacuum(), p, 5.0, backend="numba")
    np.testing.assert_allclose(a.states, b.states, rtol=0, atol=1e-13)
    assert np.array_equal(a.times, b.times)


def test_etdrk4_parity():
    rng = np.random.default_rng(2)
    n = 50
    lin = np.concatenate([[-0.5 + 0j], -1j * np.linspace(-3, 3, n)])
    v = 0.1 * (rng.normal(size=n) + 1j * rng.normal(size=n))
    y0 = rng.normal(size=n + 1) + 0j
    coeffs = _kernels.etdrk4_coefficients(lin, 0.01)
    a = _kernels.etdrk4(y0, v, coeffs, 500, backend="numpy")
    b = _kernels.etdrk4(y0, v, coeffs, 500, backend="numba")
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-13)
