"""Adaptive Gauss-Kronrod quadrature settings and helpers."""
from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .errors import QuadratureError, ValidationError


@dataclass(frozen=True)
class QuadratureSpec:
    """Controls for the adaptive line integrals.

    Parameters
    ----------
    rel_tol : float
        Target relative accuracy of the windowed integral.
    window : float
        Half-width of the integration window in units of ``kappa_a``.
    max_intervals : int
        Bisection budget; exhausting it raises :class:`QuadratureError`.
    abs_tol : float
        Absolute floor for the error target (useful when the integral is 0).
    """

    rel_tol: float = 1e-8
    window: float = 1e3
    max_intervals: int = 50_000
    abs_tol: float = 0.0

    def __post_init__(self):
        if not (0 < self.rel_tol < 1):
            raise ValidationError(f"rel_tol must lie in (0, 1), got {self.rel_tol}")
        if not self.window > 0:
            raise ValidationError(f"window must be positive, got {self.window}")
        if int(self.max_intervals) < 1:
            raise ValidationError("max_intervals must be >= 1")
        if self.abs_tol < 0:
            raise ValidationError("abs_tol must be >= 0")

    def to_dict(self):
        return {"rel_tol": self.rel_tol, "window": self.window,
                "max_intervals": int(self.max_intervals), "abs_tol": self.abs_tol}


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    n_eval: int
    tail: complex = 0j


def breakpoints(lo, hi, centres, scale, n_shells=6, period=None, max_points=None):
    """Sorted unique break points in [lo, hi] clustered around ``centres``.

    Around each centre, points at offsets ``+-scale * 4**k`` (k < n_shells) are
    added so that the first bisection level already resolves the Lorentzian
    features of width ``scale``. For oscillatory integrands ``period`` adds a
    uniform grid of that spacing (capped at ``max_points`` points), so that no
    initial interval spans many oscillations.
    """
    pts = [lo, hi]
    if period is not None and period > 0:
        n = int(math.ceil((hi - lo) / period))
        if max_points is not None:
            n = min(n, int(max_points))
        pts.extend(np.linspace(lo, hi, n + 1))
    offsets = scale * 4.0 ** np.arange(n_shells)
    for c in centres:
        pts.append(c)
        pts.extend(c - offsets)
        pts.extend(c + offsets)
    pts = np.unique(np.asarray(pts, dtype=float))
    return pts[(pts >= lo) & (pts <= hi)]


def check_status(value, error, n_eval, status, what):
    if status != _kernels.STATUS_OK:
        raise QuadratureError(
            f"{what}: adaptive quadrature did not converge "
            f"(estimate {value:.6g}, error {error:.3g}, {n_eval} evaluations)",
            value=value, error=error, n_eval=n_eval)


def integrate(func, breaks, spec, what="integral"):
    """Adaptive integral of a vectorised complex function over ``breaks[0]..breaks[-1]``."""
    value, error, n_eval, status = _kernels.gk_adaptive_np(
        func, breaks, spec.rel_tol, spec.abs_tol, spec.max_intervals)
    check_status(value, error, n_eval, status, what)
    return QuadratureResult(value, error, n_eval)
