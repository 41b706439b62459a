"""One- and two-photon scattering observables of the forward output channel.

The two-photon S-matrix splits into the factorised product of single-photon
amplitudes and an energy-conserving bound part generated by the Kerr term.
Integrating the bound kernel along the energy shell gives the correction
``T(omega1, omega2)`` that enters the equal-time output correlation g2.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.special import sici

from . import _kernels
from .core import gamma, t_single, eta
from .errors import DegenerateTransmissionError, ValidationError
from .quadrature import QuadratureResult, QuadratureSpec, breakpoints, check_status, integrate

DEGENERATE_T = 1e-12


@dataclass(frozen=True)
class TwoPhotonInput:
    """Frequencies of the two incoming photons (rad*MHz)."""

    omega1: float
    omega2: float

    def __post_init__(self):
        for name in ("omega1", "omega2"):
            v = getattr(self, name)
            if isinstance(v, complex) or not math.isfinite(float(v)):
                raise ValidationError(f"{name} must be a finite real number, got {v!r}")
            object.__setattr__(self, name, float(v))

    @property
    def E(self):
        return self.omega1 + self.omega2

    def swapped(self):
        return TwoPhotonInput(self.omega2, self.omega1)


@dataclass(frozen=True)
class G2Result:
    t1: complex
    t2: complex
    T: complex
    g2: float
    quad_error: float = 0.0
    n_eval: int = 0


def _coupling_sum(p, exact_kernel):
    s = p.g1 + p.g2
    if exact_kernel:
        s += 2.0 * math.sqrt(p.g1 * p.g2) * math.cos(p.theta_a)
    return s


def _shell_prefactor(inp, p, exact_kernel):
    """Factor K with B(nu, E - nu) = K * h(nu) on the energy shell."""
    kap = p.kappa_a
    d2 = 2.0 * kap + 1j * (2.0 * p.omega_a - inp.E)
    den = kap * d2 + 2j * math.pi * p.chi * _coupling_sum(p, exact_kernel)
    return 4j * p.chi * kap * d2 * gamma(inp.omega1, p) * gamma(inp.omega2, p) / den


def bound_kernel(nu1, nu2, inp, p, exact_kernel=False):
    """Bound-state kernel B(nu1, nu2; omega1, omega2), without the energy delta.

    Parameters
    ----------
    nu1, nu2 : float or array_like
        Outgoing photon frequencies. Broadcast against each other.
    inp : TwoPhotonInput
    p : RingParams
    exact_kernel : bool
        Use g1 + g2 + 2 sqrt(g1 g2) cos(theta_a) in the denominator instead of
        g1 + g2 (self-consistent variant for the narrowband case).
    """
    nu1 = np.asarray(nu1, dtype=float)
    nu2 = np.asarray(nu2, dtype=float)
    kap = p.kappa_a
    d2 = 2.0 * kap + 1j * (2.0 * p.omega_a - nu1 - nu2)
    sym = t_single(nu1, p) * eta(nu2, p) + t_single(nu2, p) * eta(nu1, p)
    out_amp = np.conj(gamma(nu1, p)) * np.conj(gamma(nu2, p))
    in_amp = gamma(inp.omega1, p) * gamma(inp.omega2, p)
    den = kap * d2 + 2j * math.pi * p.chi * _coupling_sum(p, exact_kernel)
    val = 4j * p.chi * kap * sym * d2 * out_amp * in_amp / den
    return complex(val) if np.ndim(val) == 0 else val


def _cos_tail(tau, w):
    """Integral of cos(tau x) / x**2 over x in [w, inf)."""
    if tau == 0.0:
        return 1.0 / w
    si, _ = sici(tau * w)
    return math.cos(tau * w) / w - tau * (0.5 * math.pi - si)


def shell_tail(inp, p, half_width):
    """Leading-order contribution of the shell integrand h outside the window.

    Far from the resonances h(nu) -> -2 conj(N(nu) N(E - nu)) / x**2 with
    x = nu - E/2 and N the two-point coupling numerator, which integrates in
    closed form (the cross term through the cosine integral).
    """
    c = 0.5 * inp.E
    tau = p.tau_d
    g12 = math.sqrt(p.g1 * p.g2)
    flat = p.g1 + p.g2 * np.exp(-1j * (2.0 * p.theta_a + (inp.E - 2.0 * p.omega_a) * tau))
    cross = 2.0 * g12 * np.exp(-1j * (p.theta_a + (c - p.omega_a) * tau))
    return complex(-2.0 * (flat * (2.0 / half_width) + cross * 2.0 * _cos_tail(tau, half_width)))


def _period(p, max_intervals):
    return (2.0 * math.pi / p.tau_d, max_intervals // 4) if p.tau_d > 0 else (None, None)


def shell_breakpoints(inp, p, half_width, max_intervals=QuadratureSpec.max_intervals):
    c = 0.5 * inp.E
    centres = [c, p.omega_a, inp.E - p.omega_a]
    period, cap = _period(p, max_intervals)
    return breakpoints(c - half_width, c + half_width, centres, p.kappa_a, period=period, max_points=cap)


def t_correction(inp, p, quad=None, exact_kernel=False, backend=None, full_output=False):
    """Bound-state correction T = (1/2pi) * integral of B(nu, E - nu) d nu.

    The integral runs adaptively over ``E/2 +- quad.window * kappa_a``; the
    remainder outside the window is added from its asymptotic closed form.

    Returns
    -------
    complex, or QuadratureResult when ``full_output`` is true.

    Raises
    ------
    QuadratureError
        If the adaptive part misses ``quad.rel_tol`` within the interval budget.
    """
    quad = quad or QuadratureSpec()
    if p.chi == 0.0:
        res = QuadratureResult(0j, 0.0, 0)
        return res if full_output else res.value
    pref = _shell_prefactor(inp, p, exact_kernel)
    if pref == 0:
        res = QuadratureResult(0j, 0.0, 0)
        return res if full_output else res.value
    half = quad.window * p.kappa_a
    pars = np.array([p.omega_a, p.kappa_a, math.sqrt(p.g1), math.sqrt(p.g2),
                     p.theta_a, p.tau_d, inp.E])
    brk = shell_breakpoints(inp, p, half, quad.max_intervals)
    val, err, n_eval, status = _kernels.gk_shell(
        pars, brk, quad.rel_tol, quad.abs_tol, quad.max_intervals, backend=backend)
    check_status(val, err, n_eval, status, "shell integral")
    tail = shell_tail(inp, p, half)
    # odd corrections cancel between the two tails; the rest is O((scale / W)^2)
    scale = p.kappa_a + abs(0.5 * inp.E - p.omega_a) + p.g1 + p.g2
    tail_err = abs(tail) * (scale / half) ** 2
    if p.tau_d > 0:
        tail_err += 8.0 * math.sqrt(p.g1 * p.g2) * scale / half ** 2
    f = pref / (2.0 * math.pi)
    res = QuadratureResult(complex(f * (val + tail)), float(abs(f) * (err + tail_err)),
                           n_eval, complex(f * tail))
    return res if full_output else res.value


def g2_scatter(inp, p, quad=None, exact_kernel=False, backend=None):
    """Equal-time correlation of the scattered two-photon output.

    g2 = |t1 t2 + T|^2 / (|t1|^2 |t2|^2).

    Raises
    ------
    DegenerateTransmissionError
        If either single-photon amplitude is below 1e-12 in modulus.
    """
    t1 = t_single(inp.omega1, p)
    t2 = t_single(inp.omega2, p)
    if abs(t1) < DEGENERATE_T or abs(t2) < DEGENERATE_T:
        raise DegenerateTransmissionError(
            f"|t| below {DEGENERATE_T:g} (|t1| = {abs(t1):.3g}, |t2| = {abs(t2):.3g}); g2 undefined")
    res = t_correction(inp, p, quad, exact_kernel=exact_kernel, backend=backend, full_output=True)
    # |t1 t2 + T|^2 / |t1 t2|^2, written so that T = 0 gives exactly 1
    g2 = abs(1.0 + res.value / (t1 * t2)) ** 2
    return G2Result(t1, t2, res.value, float(g2), res.error, res.n_eval)


def residue_integral(nu2, p, mode="approx", quad=None):
    """Integral of |Gamma(w)|^2 / (kappa_a + i(omega_a - nu2 + w)) over the real line.

    ``mode="approx"`` returns the closed form pi (g1 + g2) / (kappa_a (2 kappa_a
    + i(2 omega_a - nu2))) which drops the oscillating cross term;
    ``mode="exact"`` integrates numerically, including the cross term.
    """
    kap = p.kappa_a
    if mode == "approx":
        return complex(math.pi * (p.g1 + p.g2) / (kap * (2.0 * kap + 1j * (2.0 * p.omega_a - nu2))))
    if mode != "exact":
        raise ValidationError(f"mode must be 'approx' or 'exact', got {mode!r}")
    quad = quad or QuadratureSpec()

    def f(w):
        g = gamma(w, p)
        return (g * np.conj(g)) / (kap + 1j * (p.omega_a - nu2 + w))

    pole2 = nu2 - p.omega_a
    c = 0.5 * (p.omega_a + pole2)
    half = quad.window * kap + 0.5 * abs(p.omega_a - pole2)
    period, cap = _period(p, quad.max_intervals)
    brk = breakpoints(c - half, c + half, [p.omega_a, pole2, c], kap, period=period, max_points=cap)
    core = integrate(f, brk, quad, "residue integral")

    # Outside the window only the non-oscillating part of |Gamma|^2 contributes
    # beyond O(1/W^2); it is integrated exactly after the map x -> 1/u.
    g12 = math.sqrt(p.g1 * p.g2)
    flat = p.g1 + p.g2 + (2.0 * g12 * math.cos(p.theta_a) if p.tau_d == 0 else 0.0)

    def tail_f(u, sign):
        w = c + sign / u
        return flat / ((kap ** 2 + (w - p.omega_a) ** 2)
                       * (kap + 1j * (p.omega_a - nu2 + w))) / u ** 2

    ub = np.array([0.0, 1.0 / half])
    tails = [integrate(lambda u, s=s: tail_f(u, s), ub, quad, "residue tail") for s in (1.0, -1.0)]
    return complex(core.value + tails[0].value + tails[1].value)
