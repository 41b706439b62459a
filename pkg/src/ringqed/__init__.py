"""Photon transport and blockade for a microring resonator coupled to a waveguide at two points."""
__version__ = "0.1.0"

from .core import RingParams, EffectiveRates, phase, gamma, t_single, eta, effective_rates
from .errors import (
    RingQEDError, ValidationError, ConfigParseError, ComputationError, QuadratureError,
    DegenerateTransmissionError, SingularSystemError, ZeroOccupationError, StepSizeError,
    ResolutionError, RecurrenceError, OracleConvergenceError,
)
from .quadrature import QuadratureSpec, QuadratureResult
from .scattering import (
    TwoPhotonInput, G2Result, bound_kernel, t_correction, g2_scatter, residue_integral,
)
from .driven import (
    AmplitudeState, DrivenObservables, Trajectory, amplitude_rhs, generator, evolve,
    steady_state, observables,
)
from .oracle import DiscretizedModel, TransmissionEstimate, build_model, transmission, loaded_transmission
from .sweep import Axis, SweepSpec, SweepSettings, SweepResult, run_sweep, run_preset, get_preset

__all__ = [n for n in dir() if not n.startswith("_")]
