"""Parameter model and the elementary spectral functions.

Units: rates and angular frequencies in rad*MHz, times in microseconds.
All spectral functions accept scalars or numpy arrays for ``omega``.
"""
from dataclasses import asdict, dataclass, fields, replace
import math

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class RingParams:
    """Rates, couplings and phases of the ring-waveguide system.

    ``g1``/``g2`` couple the counter-clockwise mode to the forward waveguide
    channel at the two contact points, ``gt1``/``gt2`` do the same for the
    clockwise mode. ``theta_a`` is the propagation phase between the contact
    points at the resonator frequency and ``tau_d`` the propagation delay;
    the phase at frequency ``omega`` is ``theta_a + (omega - omega_a) * tau_d``.
    """

    omega_a: float = 0.0
    kappa_a: float = 1.0
    g1: float = 0.0
    g2: float = 0.0
    gt1: float = 0.0
    gt2: float = 0.0
    chi: float = 0.0
    zeta: complex = 0j
    epsilon: float = 0.0
    theta_a: float = 0.0
    tau_d: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "zeta":
                try:
                    value = complex(value)
                except (TypeError, ValueError):
                    raise ValidationError(f"zeta must be complex, got {value!r}") from None
                if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                    raise ValidationError("zeta must be finite")
            else:
                if isinstance(value, complex):
                    raise ValidationError(f"{f.name} must be real, got {value!r}")
                try:
                    value = float(value)
                except (TypeError, ValueError):
                    raise ValidationError(f"{f.name} must be a real number, got {value!r}") from None
                if not math.isfinite(value):
                    raise ValidationError(f"{f.name} must be finite")
            object.__setattr__(self, f.name, value)
        if not self.kappa_a > 0:
            raise ValidationError(f"kappa_a > 0 required (got {self.kappa_a})")
        for name in ("g1", "g2", "gt1", "gt2", "epsilon"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} >= 0 required (got {getattr(self, name)})")
        if self.tau_d < 0:
            raise ValidationError(f"tau_d >= 0 required (got {self.tau_d})")

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        d = asdict(self)
        d["zeta"] = [self.zeta.real, self.zeta.imag]
        return d


@dataclass(frozen=True)
class EffectiveRates:
    """Decay-like (``g_*``) and dispersive (``gh_*``) rates at phase theta_a.

    ``minus`` refers to the counter-clockwise mode, ``plus`` to the clockwise one.
    """

    g_minus: float
    g_plus: float
    gh_minus: float
    gh_plus: float


def phase(omega, p):
    """Propagation phase between the two contact points at frequency omega."""
    theta = p.theta_a + (np.asarray(omega, dtype=float) - p.omega_a) * p.tau_d
    return float(theta) if theta.ndim == 0 else theta


def _denominator(omega, p):
    return p.kappa_a + 1j * (p.omega_a - np.asarray(omega, dtype=float))


def _scalar_or_array(value):
    return complex(value) if np.ndim(value) == 0 else value


def gamma(omega, p):
    """Coupling amplitude (sqrt(g1) + sqrt(g2) e^{i phase}) / (kappa_a + i(omega_a - omega))."""
    num = math.sqrt(p.g1) + math.sqrt(p.g2) * np.exp(1j * phase(omega, p))
    return _scalar_or_array(num / _denominator(omega, p))


def coupling_weight(omega, p):
    """g1 + g2 + 2 sqrt(g1 g2) cos(phase): the squared modulus of the two-point coupling."""
    return p.g1 + p.g2 + 2.0 * math.sqrt(p.g1 * p.g2) * np.cos(phase(omega, p))


def t_single(omega, p):
    """Single-photon transmission amplitude of the forward channel."""
    return _scalar_or_array(1.0 - coupling_weight(omega, p) / _denominator(omega, p))


def eta(omega, p):
    """Unit-modulus ratio (kappa_a - i(omega_a - omega)) / (kappa_a + i(omega_a - omega))."""
    d = _denominator(omega, p)
    return _scalar_or_array(np.conj(d) / d)


def effective_rates(p):
    c, s = math.cos(p.theta_a), math.sin(p.theta_a)
    r = math.sqrt(p.g1 * p.g2)
    rt = math.sqrt(p.gt1 * p.gt2)
    return EffectiveRates(
        g_minus=0.5 * (p.g1 + p.g2) + r * c + 2.0 * p.kappa_a,
        g_plus=0.5 * (p.gt1 + p.gt2) + rt * c + 2.0 * p.kappa_a,
        gh_minus=r * s,
        gh_plus=rt * s,
    )
