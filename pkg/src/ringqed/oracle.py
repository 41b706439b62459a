"""Brute-force single-photon transmission from a discretized waveguide.

The forward waveguide channel is replaced by ``n_modes`` equally spaced modes
around the resonator frequency, each coupled to the counter-clockwise ring
mode at both contact points. A Gaussian one-photon packet is sent in, the
linear single-excitation system is integrated well past the ring-down, and
the transmission is read off as the ratio of outgoing to incoming spectral
amplitude at the probe mode. Nothing here uses the closed-form transmission.
The truncated band shifts the ring frequency by a principal-value term; that
shift is computed from the couplings and removed at the probe frequency.

Frame: rotating at omega_a, so bath mode k sits at detuning
``delta_k = (k - n_modes // 2) * d_omega``. The absolute carrier is placed at
``10 * bandwidth`` and the contact-point delay chosen so that the phase at the
carrier equals ``theta_a``; the coupling phase then varies across the band.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .core import RingParams, coupling_weight, t_single
from .errors import OracleConvergenceError, RecurrenceError, ResolutionError, ValidationError

CARRIER_FACTOR = 10.0
MAX_SPACING = 1.0 / 20.0
MIN_SIGMA_MODES = 5.0
MAX_SIGMA_FRACTION = 1.0 / 20.0
STEP_FACTOR = 0.05
LINEWIDTHS = ("dressed", "bare")


@dataclass(frozen=True)
class DiscretizedModel:
    """Single-excitation data: one ring mode plus ``n_modes`` waveguide modes.

    ``couplings[k]`` multiplies the ring amplitude in the equation of bath
    mode k; ``ring_decay`` and ``ring_shift`` define the ring mode's own
    complex frequency ``ring_shift - 1j * ring_decay`` in the rotating frame.
    """

    params: RingParams
    n_modes: int
    bandwidth: float
    mode_freqs: np.ndarray
    couplings: np.ndarray
    ring_decay: float
    ring_shift: float
    carrier: float
    delay: float
    linewidth: str

    @property
    def spacing(self):
        return self.bandwidth / self.n_modes

    @property
    def analytic_params(self):
        """Parameters with the oracle's own delay, for the closed-form comparison."""
        return self.params.replace(tau_d=self.delay)

    @property
    def total_linewidth(self):
        return _total_linewidth(self.params, self.linewidth)


@dataclass(frozen=True)
class TransmissionEstimate:
    omega: float
    t_numeric: complex
    t_analytic: complex
    rel_error: float


def _total_linewidth(p, linewidth):
    """Ring-mode decay rate including radiation into the waveguide at omega_a."""
    if linewidth == "dressed":
        return p.kappa_a
    return p.kappa_a + 0.5 * float(coupling_weight(p.omega_a, p))


def build_model(p, n_modes=4000, bandwidth=None, linewidth="dressed"):
    """Discretize the forward channel.

    Parameters
    ----------
    p : RingParams
    n_modes : int
    bandwidth : float, optional
        Total frequency span of the bath, default 100 ring linewidths.
    linewidth : {"dressed", "bare"}
        ``"dressed"`` treats ``kappa_a`` as the total ring linewidth, so the
        ring's bare decay and frequency are offset by the waveguide-induced
        damping at omega_a (this is the convention of the closed form).
        ``"bare"`` uses ``kappa_a`` as purely intrinsic loss; the model is
        then passive, and |t| <= 1.

    Raises
    ------
    ResolutionError
        If the mode spacing exceeds 1/20 of the ring linewidth (``kappa_a``
        for dressed models, intrinsic plus radiative for bare ones).
    """
    if linewidth not in LINEWIDTHS:
        raise ValidationError(f"linewidth must be one of {LINEWIDTHS}, got {linewidth!r}")
    n_modes = int(n_modes)
    if n_modes < 2:
        raise ValidationError("n_modes must be at least 2")
    width = _total_linewidth(p, linewidth)
    if bandwidth is None:
        bandwidth = 100.0 * width
    if not bandwidth > 0:
        raise ValidationError(f"bandwidth must be positive, got {bandwidth}")
    d_omega = bandwidth / n_modes
    if d_omega > MAX_SPACING * width:
        raise ResolutionError(
            f"mode spacing {d_omega:.4g} exceeds linewidth/20 = {MAX_SPACING * width:.4g}; "
            f"need n_modes >= {math.ceil(bandwidth / (MAX_SPACING * width))}")
    freqs = (np.arange(n_modes) - n_modes // 2) * d_omega
    carrier = CARRIER_FACTOR * bandwidth
    delay = p.theta_a / carrier
    weight = math.sqrt(d_omega / (2.0 * math.pi))
    couplings = (math.sqrt(p.g1) + math.sqrt(p.g2) * np.exp(-1j * (carrier + freqs) * delay)) * weight
    if linewidth == "dressed":
        # remove the radiative damping |V(omega_a)|^2 * pi / d_omega
        decay = p.kappa_a - 0.5 * float(coupling_weight(p.omega_a, p))
        shift = 0.0
    else:
        decay, shift = p.kappa_a, 0.0
    return DiscretizedModel(p, n_modes, float(bandwidth), freqs, couplings,
                            float(decay), float(shift), carrier, delay, linewidth)


def coupling_density(model, detuning):
    """Continuum coupling density |v(delta)|^2 = |V(delta)|^2 / d_omega."""
    p = model.params
    amp = math.sqrt(p.g1) + math.sqrt(p.g2) * np.exp(-1j * (model.carrier + detuning) * model.delay)
    return np.abs(amp) ** 2 / (2.0 * math.pi)


def lamb_shift(model, detuning, n_nodes=400):
    """Principal-value frequency shift of the ring mode from the finite band.

    ``P(delta) = PV integral of |v(w)|^2 / (delta - w) dw`` over the band edges
    of the discretized channel. It vanishes for an infinite flat band, so it
    is an artefact of truncation and is removed by the oracle at the probe
    frequency.
    """
    half_cell = 0.5 * model.spacing
    lo = model.mode_freqs[0] - half_cell
    hi = model.mode_freqs[-1] + half_cell
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    nodes = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    f0 = coupling_density(model, detuning)
    # subtract the pole so that the remainder is smooth
    smooth = (coupling_density(model, nodes) - f0) / (detuning - nodes)
    return float(0.5 * (hi - lo) * np.dot(w, smooth) + f0 * math.log((detuning - lo) / (hi - detuning)))


def loaded_transmission(omega, p):
    """Closed-form transmission when ``kappa_a`` is intrinsic loss only.

    The ring mode picks up the radiative damping N(omega)/2 with
    N = g1 + g2 + 2 sqrt(g1 g2) cos(phase); valid while the contact-point delay
    is short against the ring lifetime. This is what the ``"bare"`` oracle
    converges to.
    """
    num = coupling_weight(omega, p)
    val = 1.0 - num / (p.kappa_a + 0.5 * num + 1j * (p.omega_a - np.asarray(omega, dtype=float)))
    return complex(val) if np.ndim(val) == 0 else val


def _evolve_packet(model, probe_index, sigma, backend):
    freqs = model.mode_freqs
    d_omega = model.spacing
    centre = freqs[probe_index]
    t0 = 8.0 / sigma
    t_sim = t0 + 8.0 / sigma + 30.0 / max(model.total_linewidth, 1e-300)
    horizon = 2.0 * math.pi / d_omega
    if t_sim >= horizon:
        raise RecurrenceError(
            f"simulation time {t_sim:.4g} reaches the recurrence time 2pi/d_omega = {horizon:.4g}; "
            "increase n_modes or sigma")
    beta0 = np.exp(-0.5 * ((freqs - centre) / sigma) ** 2) * np.exp(1j * freqs * t0)
    y0 = np.concatenate([[0j], beta0])
    shift = model.ring_shift - lamb_shift(model, centre)
    lin = np.concatenate([[-(model.ring_decay + 1j * shift)], -1j * freqs])
    vnorm = math.sqrt(float(np.sum(np.abs(model.couplings) ** 2)))
    n_steps = max(1, math.ceil(t_sim * vnorm / STEP_FACTOR))
    dt = t_sim / n_steps
    coeffs = _kernels.etdrk4_coefficients(lin, dt)
    y = _kernels.etdrk4(y0, model.couplings, coeffs, n_steps, backend=backend)
    k = probe_index
    return y[k + 1] * np.exp(1j * freqs[k] * t_sim) / beta0[k]


def transmission(model, omega_probe, sigma=None, check_convergence=False, tol=0.01, backend=None):
    """Numerical transmission amplitude at ``omega_probe`` (absolute frequency).

    The probe is snapped to the nearest bath mode; the returned ``omega`` is
    that mode's frequency. ``t_analytic`` is the closed form of the ring model
    evaluated with the oracle's own delay (for ``"bare"`` models the loaded
    form, see :func:`loaded_transmission`).

    Parameters
    ----------
    sigma : float, optional
        Packet bandwidth, default a fifth of the ring linewidth.
    check_convergence : bool
        Repeat with twice the modes over the same band and raise
        :class:`OracleConvergenceError` if the amplitude moves by more than
        ``tol`` relative.
    """
    p = model.params
    if sigma is None:
        sigma = model.total_linewidth / 5.0
    if sigma < MIN_SIGMA_MODES * model.spacing:
        raise ResolutionError(f"sigma {sigma:.4g} below {MIN_SIGMA_MODES:g} mode spacings")
    if sigma > MAX_SIGMA_FRACTION * model.bandwidth:
        raise ValidationError(f"sigma {sigma:.4g} too wide for bandwidth {model.bandwidth:.4g}")
    det = omega_probe - p.omega_a
    k = int(round(det / model.spacing)) + model.n_modes // 2
    if not (0 <= k < model.n_modes):
        raise ValidationError(f"probe detuning {det:.4g} lies outside the discretized band")
    if abs(model.mode_freqs[k]) + 8.0 * sigma > 0.5 * model.bandwidth:
        raise ValidationError("probe packet does not fit inside the band")
    t_num = complex(_evolve_packet(model, k, sigma, backend))
    omega = p.omega_a + float(model.mode_freqs[k])
    ap = model.analytic_params
    t_an = t_single(omega, ap) if model.linewidth == "dressed" else loaded_transmission(omega, ap)
    if check_convergence:
        fine = build_model(p, 2 * model.n_modes, model.bandwidth, model.linewidth)
        kf = int(round(model.mode_freqs[k] / fine.spacing)) + fine.n_modes // 2
        t_fine = complex(_evolve_packet(fine, kf, sigma, backend))
        change = abs(t_fine - t_num) / max(abs(t_fine), 1e-12)
        if change > tol:
            raise OracleConvergenceError(
                f"doubling n_modes changed t by {change:.3g} (> {tol:g})")
    rel = abs(t_num - t_an) / max(abs(t_an), 1e-12)
    return TransmissionEstimate(omega, t_num, complex(t_an), float(rel))
