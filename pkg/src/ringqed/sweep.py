"""Parameter grids, per-point evaluation and the figure presets.

A sweep evaluates one observable on the tensor grid of one or two axes.
Points are independent; a failing point records its error status and leaves
NaN values instead of aborting the sweep. Results are stored in row-major
order (axis1 outer, axis2 inner) regardless of how many workers ran.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
import math

import numpy as np

from . import __version__
from ._accel import resolve_backend
from .core import RingParams, t_single
from .driven import LABELS, observables, steady_state
from .errors import RingQEDError, ValidationError
from .quadrature import QuadratureSpec
from .scattering import TwoPhotonInput, g2_scatter

PARAM_AXES = tuple(f.name for f in fields(RingParams))
DERIVED_AXES = ("detuning1", "detuning2", "phase", "split")
AXIS_NAMES = PARAM_AXES + DERIVED_AXES
LN_FLOOR = -30.0

OBSERVABLE_COLUMNS = {
    "t_minus_one_abs": ("t_minus_one_abs", "t_re", "t_im"),
    "ln_g2_scatter": ("ln_g2", "g2", "T_re", "T_im"),
    "ln_g2_driven": ("ln_g2", "g2", "n_ccw"),
    "populations": tuple(f"pop_{n}" for n in LABELS) + tuple(f"abs_{n}" for n in LABELS) + ("g2",),
}
OBSERVABLES = tuple(OBSERVABLE_COLUMNS)


@dataclass(frozen=True)
class Axis:
    """Uniform axis ``count`` points from ``min`` to ``max`` inclusive.

    Frequency-like derived axes are in units of ``kappa_a``: ``detuning1`` and
    ``detuning2`` are (omega_j - omega_a)/kappa_a, ``split`` is
    (omega1 - omega2)/kappa_a at fixed omega1 + omega2. ``phase`` sets theta_a.
    """

    name: str
    min: float
    max: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValidationError(f"unknown axis {self.name!r}; expected one of {', '.join(AXIS_NAMES)}")
        object.__setattr__(self, "min", float(self.min))
        object.__setattr__(self, "max", float(self.max))
        if int(self.count) != self.count or self.count < 2:
            raise ValidationError(f"axis {self.name}: count must be an integer >= 2, got {self.count}")
        object.__setattr__(self, "count", int(self.count))
        if not (math.isfinite(self.min) and math.isfinite(self.max)) or not self.min < self.max:
            raise ValidationError(f"axis {self.name}: need finite min < max, got {self.min}, {self.max}")

    def values(self):
        return np.linspace(self.min, self.max, self.count)

    def to_dict(self):
        return {"name": self.name, "min": self.min, "max": self.max, "count": self.count}


@dataclass(frozen=True)
class SweepSpec:
    axis1: Axis
    axis2: Axis = None
    observable: str = "t_minus_one_abs"

    def __post_init__(self):
        if self.observable not in OBSERVABLES:
            raise ValidationError(f"unknown observable {self.observable!r}; expected one of {OBSERVABLES}")
        if self.axis2 is not None and self.axis2.name == self.axis1.name:
            raise ValidationError("axis1 and axis2 must differ")

    @property
    def axes(self):
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    @property
    def columns(self):
        return OBSERVABLE_COLUMNS[self.observable]

    def to_dict(self):
        return {"axes": [a.to_dict() for a in self.axes], "observable": self.observable}


@dataclass(frozen=True)
class SweepSettings:
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    exact_kernel: bool = False
    backend: str = None
    workers: int = 1

    def to_dict(self):
        # workers are left out on purpose: they never change the output
        return {"quadrature": self.quad.to_dict(), "exact_kernel": self.exact_kernel,
                "backend": resolve_backend(self.backend)}


@dataclass
class SweepResult:
    spec: SweepSpec
    params: RingParams
    coords: np.ndarray      # (n_points, n_axes)
    values: np.ndarray      # (n_points, n_columns), NaN where a point failed
    statuses: list

    @property
    def columns(self):
        return self.spec.columns

    @property
    def shape(self):
        return tuple(a.count for a in self.spec.axes)

    def grid(self, column=0):
        """Values of one column reshaped to the axis grid."""
        j = column if isinstance(column, int) else self.columns.index(column)
        return self.values[:, j].reshape(self.shape)


@dataclass(frozen=True)
class Preset:
    name: str
    params: RingParams
    spec: SweepSpec
    description: str
    assumptions: tuple = ()


def apply_point(base, names, coords):
    """Parameters and input frequencies for one grid point."""
    changes = {}
    det = {"detuning1": 0.0, "detuning2": 0.0, "split": 0.0}
    for name, x in zip(names, coords):
        x = float(x)
        if name == "phase":
            changes["theta_a"] = x
        elif name in det:
            det[name] = x
        else:
            changes[name] = x
    p = base.replace(**changes) if changes else base
    k = p.kappa_a
    w1 = p.omega_a + k * (det["detuning1"] + 0.5 * det["split"])
    w2 = p.omega_a + k * (det["detuning2"] - 0.5 * det["split"])
    return p, w1, w2


def _ln(g2):
    if g2 < math.exp(LN_FLOOR):
        return LN_FLOOR, "clamped"
    return math.log(g2), "ok"


def evaluate_point(p, omega1, omega2, observable, settings):
    """Values for one observable at one point, as (tuple_of_floats, status)."""
    if observable == "t_minus_one_abs":
        t = t_single(omega1, p)
        return (abs(t - 1.0), t.real, t.imag), "ok"
    if observable == "ln_g2_scatter":
        r = g2_scatter(TwoPhotonInput(omega1, omega2), p, settings.quad,
                       exact_kernel=settings.exact_kernel, backend=settings.backend)
        ln, status = _ln(r.g2)
        return (ln, r.g2, r.T.real, r.T.imag), status
    state = steady_state(p)
    if observable == "ln_g2_driven":
        obs = observables(state)
        ln, status = _ln(obs.g2)
        return (ln, obs.g2, obs.n_ccw), status
    amps = state.as_array()
    try:
        g2 = observables(state).g2
    except RingQEDError:
        g2 = math.nan
    return tuple(np.abs(amps) ** 2) + tuple(np.abs(amps)) + (g2,), "ok"


def run_sweep(params, spec, settings=None):
    """Evaluate ``spec`` on the grid around ``params``."""
    settings = settings or SweepSettings()
    names = [a.name for a in spec.axes]
    mesh = np.meshgrid(*[a.values() for a in spec.axes], indexing="ij")
    coords = np.stack([m.ravel() for m in mesh], axis=1)
    ncol = len(spec.columns)

    def work(row):
        try:
            p, w1, w2 = apply_point(params, names, row)
            vals, status = evaluate_point(p, w1, w2, spec.observable, settings)
            return np.asarray(vals, dtype=float), status
        except RingQEDError as exc:
            return np.full(ncol, np.nan), exc.status

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            out = list(pool.map(work, coords))
    else:
        out = [work(row) for row in coords]
    values = np.array([v for v, _ in out]).reshape(len(coords), ncol)
    statuses = [s for _, s in out]
    return SweepResult(spec, params, coords, values, statuses)


def run_record(params, spec, settings, preset=None, assumptions=(), extra=None):
    """Metadata block embedded in every emitted file."""
    rec = {
        "tool": "ringqed",
        "version": __version__,
        "params": params.to_dict(),
        "sweep": spec.to_dict() if spec is not None else None,
        "settings": settings.to_dict(),
        "preset": preset,
        "assumptions": list(assumptions),
    }
    if extra:
        rec.update(extra)
    return rec


# --------------------------------------------------------------------------
# presets
# --------------------------------------------------------------------------

TWO_PI = 2.0 * math.pi
_SCATTER = dict(kappa_a=1.0, chi=0.1)
_DRIVEN = dict(g1=1.0, g2=1.0, gt1=1.0, gt2=1.0, kappa_a=0.2, zeta=0.5)
CHI_ASSUMPTION = "fig4b: chi = 4 MHz is not stated for this panel; the fig5 value is assumed"


def _presets(n):
    """Preset table; ``n`` is the per-axis grid size of the 2-D maps."""
    eps_axis = Axis("epsilon", 5.0 / n, 5.0, n)
    phase_axis = Axis("phase", 0.0, TWO_PI, n)
    split_axis = Axis("split", -10.0, 10.0, n)
    return [
        Preset("fig2a", RingParams(kappa_a=1.0, g2=0.0),
               SweepSpec(Axis("g1", 0.0, 4.0, n), Axis("detuning1", -10.0, 10.0, n), "t_minus_one_abs"),
               "|t - 1| versus g1/kappa_a and detuning, single contact point"),
        Preset("fig2b", RingParams(kappa_a=1.0, g1=1.0, g2=1.0),
               SweepSpec(phase_axis, Axis("detuning1", -10.0, 10.0, n), "t_minus_one_abs"),
               "|t - 1| versus contact phase and detuning, g1 = g2 = kappa_a"),
        Preset("fig3a", RingParams(g1=1.0, g2=1.0, theta_a=math.pi, **_SCATTER),
               SweepSpec(Axis("detuning1", -5.0, 5.0, n), Axis("detuning2", -5.0, 5.0, n), "ln_g2_scatter"),
               "ln g2 of the output versus both input detunings, g1 = g2, theta_a = pi"),
        Preset("fig3b", RingParams(g1=1.0, g2=1.0, **_SCATTER),
               SweepSpec(phase_axis, split_axis, "ln_g2_scatter"),
               "ln g2 versus theta_a and (omega1 - omega2)/kappa_a at omega1 + omega2 = 2 omega_a, g1 = g2"),
        Preset("fig3c", RingParams(g1=2.0 / 3.0, g2=4.0 / 3.0, theta_a=math.pi, **_SCATTER),
               SweepSpec(Axis("detuning1", -5.0, 5.0, n), Axis("detuning2", -5.0, 5.0, n), "ln_g2_scatter"),
               "ln g2 versus both input detunings, g2 = 2 g1 = 4/3, theta_a = pi"),
        Preset("fig3d", RingParams(g1=2.0 / 3.0, g2=4.0 / 3.0, **_SCATTER),
               SweepSpec(phase_axis, split_axis, "ln_g2_scatter"),
               "ln g2 versus theta_a and (omega1 - omega2)/kappa_a at omega1 + omega2 = 2 omega_a, g2 = 2 g1"),
        Preset("fig4a", RingParams(chi=0.0, **_DRIVEN),
               SweepSpec(eps_axis, phase_axis, "ln_g2_driven"),
               "intracavity ln g2 versus drive and theta_a without Kerr term"),
        Preset("fig4b", RingParams(chi=4.0, **_DRIVEN),
               SweepSpec(eps_axis, phase_axis, "ln_g2_driven"),
               "intracavity ln g2 versus drive and theta_a with chi = 4",
               (CHI_ASSUMPTION,)),
        Preset("fig5", RingParams(chi=4.0, **_DRIVEN),
               SweepSpec(Axis("epsilon", 1.0, 4.0, 2), Axis("phase", math.pi / 3.0, math.pi, 2), "populations"),
               "steady populations and amplitudes; rows (a) pi/3,1 (b) pi,1 (c) pi/3,4 (d) pi,4 in (theta_a, epsilon)"),
    ]


PRESET_NAMES = tuple(pr.name for pr in _presets(2))
DEFAULT_GRID = 41


def get_preset(name, n=DEFAULT_GRID):
    """Preset by name; ``n`` overrides the grid size of the 2-D maps (not fig5)."""
    for pr in _presets(int(n)):
        if pr.name == name:
            return pr
    raise ValidationError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")


def run_preset(name, settings=None, n=DEFAULT_GRID):
    """Run a preset and return ``(SweepResult, run_record)``."""
    settings = settings or SweepSettings()
    pr = get_preset(name, n)
    res = run_sweep(pr.params, pr.spec, settings)
    rec = run_record(pr.params, pr.spec, settings, preset=pr.name, assumptions=pr.assumptions,
                     extra={"description": pr.description})
    return res, rec
