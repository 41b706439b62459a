"""Classically driven ring with at most two intracavity photons.

The state is expanded on |m, n> with m counter-clockwise and n clockwise
photons, m + n <= 2, and evolves under the effective non-Hermitian
Hamiltonian of the delayed-phase approximation. Amplitude order everywhere is
(C00, C10, C01, C11, C02, C20).
"""
from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .core import effective_rates
from .errors import SingularSystemError, StepSizeError, ValidationError, ZeroOccupationError

LABELS = ("c00", "c10", "c01", "c11", "c02", "c20")
I00, I10, I01, I11, I02, I20 = range(6)
SQ2 = math.sqrt(2.0)
STABILITY_LIMIT = 0.1
COND_LIMIT = 1e13


@dataclass(frozen=True)
class AmplitudeState:
    c00: complex = 1.0 + 0j
    c10: complex = 0j
    c01: complex = 0j
    c11: complex = 0j
    c02: complex = 0j
    c20: complex = 0j

    def __post_init__(self):
        for name in LABELS:
            object.__setattr__(self, name, complex(getattr(self, name)))

    def as_array(self):
        return np.array([getattr(self, n) for n in LABELS], dtype=complex)

    @classmethod
    def from_array(cls, arr):
        arr = np.asarray(arr, dtype=complex)
        if arr.shape != (6,):
            raise ValidationError(f"expected 6 amplitudes, got shape {arr.shape}")
        return cls(*arr)

    @classmethod
    def vacuum(cls):
        return cls()


@dataclass(frozen=True)
class DrivenObservables:
    populations: tuple
    n_ccw: float
    n2_ccw: float
    g2: float

    def population(self, label):
        return self.populations[LABELS.index(label)]


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    dt: float

    @property
    def final(self):
        return AmplitudeState.from_array(self.states[-1])


def generator(p, rates=None):
    """6x6 matrix M with dC/dt = M C for the truncated amplitude system."""
    r = rates or effective_rates(p)
    eps, zeta, chi = p.epsilon, p.zeta, p.chi
    zc = zeta.conjugate()
    m = np.zeros((6, 6), dtype=complex)
    m[I00, I10] = -1j * eps
    m[I10, I00] = -1j * eps
    m[I10, I20] = -1j * SQ2 * eps
    m[I10, I01] = -1j * zeta
    m[I10, I10] = -(0.5 * r.g_minus + 1j * r.gh_minus)
    m[I01, I11] = -1j * eps
    m[I01, I10] = -1j * zc
    m[I01, I01] = -(0.5 * r.g_plus + 1j * r.gh_plus)
    m[I11, I01] = -1j * eps
    m[I11, I02] = -1j * SQ2 * zeta
    m[I11, I20] = -1j * SQ2 * zc
    m[I11, I11] = -(0.5 * r.g_minus + 0.5 * r.g_plus + 1j * r.gh_minus + 1j * r.gh_plus + 2j * chi)
    m[I02, I11] = -1j * SQ2 * zc
    m[I02, I02] = -(r.g_plus + 2j * r.gh_plus + 2j * chi)
    m[I20, I11] = -1j * SQ2 * zeta
    m[I20, I10] = -1j * SQ2 * eps
    m[I20, I20] = -(r.g_minus + 2j * r.gh_minus + 2j * chi)
    return m


def amplitude_rhs(state, rates, p):
    """Time derivative of every amplitude, written out equation by equation."""
    c00, c10, c01, c11, c02, c20 = state.as_array()
    eps, zeta, chi = p.epsilon, p.zeta, p.chi
    zc = zeta.conjugate()
    gm, gp, hm, hp = rates.g_minus, rates.g_plus, rates.gh_minus, rates.gh_plus
    return AmplitudeState(
        c00=-1j * eps * c10,
        c10=-1j * eps * c00 - 1j * SQ2 * eps * c20 - 1j * zeta * c01 - (gm / 2 + 1j * hm) * c10,
        c01=-1j * eps * c11 - 1j * zc * c10 - (gp / 2 + 1j * hp) * c01,
        c11=(-1j * eps * c01 - 1j * SQ2 * zeta * c02 - 1j * SQ2 * zc * c20
             - (gm / 2 + gp / 2 + 1j * hm + 1j * hp + 2j * chi) * c11),
        c02=-1j * SQ2 * zc * c11 - (gp + 2j * hp + 2j * chi) * c02,
        c20=-1j * SQ2 * zeta * c11 - 1j * SQ2 * eps * c10 - (gm + 2j * hm + 2j * chi) * c20,
    )


def max_rate(p, rates=None):
    """Largest diagonal rate |M_jj|, the quantity bounded by the step guard."""
    return float(np.max(np.abs(np.diag(generator(p, rates)))))


def evolve(initial, p, t_end, dt=None, pin_vacuum=True, n_samples=1001, backend=None):
    """Integrate the amplitude equations with fixed-step RK4.

    Parameters
    ----------
    initial : AmplitudeState
    p : RingParams
    t_end : float
        Final time (us).
    dt : float, optional
        Step size. Defaults to ``0.1 / max_rate`` capped by the coupling scale.
        The step is shortened slightly so that an integer number of steps
        lands on ``t_end``.
    pin_vacuum : bool
        Hold C00 fixed at its initial value (weak-drive convention, the same
        one used by :func:`steady_state`). With ``False`` C00 evolves freely.
    n_samples : int
        Approximate number of stored samples, endpoints included.

    Raises
    ------
    StepSizeError
        If ``dt * max_rate > 0.1``.
    """
    if not t_end > 0:
        raise ValidationError(f"t_end must be positive, got {t_end}")
    mat = generator(p)
    rate = float(np.max(np.abs(np.diag(mat))))
    if dt is None:
        scale = max(rate, float(np.max(np.abs(mat).sum(axis=1))), 1e-300)
        dt = STABILITY_LIMIT / scale
    if not dt > 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    if dt * rate > STABILITY_LIMIT:
        raise StepSizeError(
            f"dt * max rate = {dt * rate:.3g} exceeds {STABILITY_LIMIT}; reduce dt below {STABILITY_LIMIT / rate:.3g}")
    n_steps = max(1, math.ceil(t_end / dt - 1e-12))
    h = t_end / n_steps
    if pin_vacuum:
        mat[I00, :] = 0.0
    stride = max(1, n_steps // max(1, n_samples - 1))
    states = _kernels.rk4_linear(mat, initial.as_array(), h, n_steps, stride, backend=backend)
    times = np.arange(states.shape[0]) * stride * h
    rem = n_steps - (states.shape[0] - 1) * stride
    if rem:
        # always store the state at t_end
        last = _kernels.rk4_linear(mat, states[-1], h, rem, rem, backend=backend)[-1]
        states = np.vstack([states, last])
        times = np.append(times, t_end)
    else:
        times[-1] = t_end
    return Trajectory(times, states, h)


def steady_state(p):
    """Steady amplitudes with C00 held at 1.

    Solves the five equations for (C10, C01, C11, C02, C20) with a dense
    LU factorisation with partial pivoting.

    Raises
    ------
    SingularSystemError
        If the 5x5 system is singular or numerically rank deficient.
    """
    mat = generator(p)
    a = mat[1:, 1:]
    b = -mat[1:, 0]
    cond = np.linalg.cond(a)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSystemError(f"steady-state system is singular (condition number {cond:.3g})")
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"steady-state solve failed: {exc}") from None
    return AmplitudeState.from_array(np.concatenate([[1.0 + 0j], x]))


def observables(state):
    """Populations, mean counter-clockwise photon number and intracavity g2.

    g2 = 2|C20|^2 / (2|C20|^2 + |C10|^2 + |C11|^2)^2, independent of C00.

    Raises
    ------
    ZeroOccupationError
        If the mean counter-clockwise photon number is below 1e-30.
    """
    arr = state.as_array()
    pops = np.abs(arr) ** 2
    n_ccw = pops[I10] + pops[I11] + 2.0 * pops[I20]
    n2 = 2.0 * pops[I20]
    if n_ccw < 1e-30:
        raise ZeroOccupationError(f"mean photon number {n_ccw:.3g} too small; g2 undefined")
    g2 = n2 / (pops[I20] * 2.0 + pops[I10] + pops[I11]) ** 2
    return DrivenObservables(tuple(float(x) for x in pops), float(n_ccw), float(n2), float(g2))
