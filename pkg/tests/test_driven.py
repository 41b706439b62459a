import math

import numpy as np
import pytest

from oracles import fock_generator
from ringqed import (AmplitudeState, RingParams, SingularSystemError, StepSizeError,
                     ZeroOccupationError, effective_rates, observables, steady_state)
from ringqed import driven
from ringqed.driven import amplitude_rhs, evolve, generator

FIG5 = RingParams(g1=1.0, g2=1.0, gt1=1.0, gt2=1.0, kappa_a=0.2, zeta=0.5, chi=4.0)
FIG5_SETS = [FIG5.replace(theta_a=th, epsilon=e)
             for e in (1.0, 4.0) for th in (math.pi / 3, math.pi)]


def _random_state(rng):
    return AmplitudeState.from_array(rng.normal(size=6) + 1j * rng.normal(size=6))


def test_vacuum_is_fixed_without_drive():
    p = FIG5.replace(epsilon=0.0)
    d = amplitude_rhs(AmplitudeState.vacuum(), effective_rates(p), p)
    assert np.all(d.as_array() == 0)


def test_single_drive_term():
    p = RingParams(g1=1.0, g2=0.5, epsilon=1.0, chi=2.0, theta_a=0.4)
    d = amplitude_rhs(AmplitudeState.vacuum(), effective_rates(p), p).as_array()
    assert d[1] == -1j
    assert np.all(d[[0, 2, 3, 4, 5]] == 0)


@pytest.mark.parametrize("p", FIG5_SETS + [RingParams(g1=0.3, g2=2.0, gt1=0.7, kappa_a=0.5,
                                                        zeta=0.2 - 0.4j, chi=1.3, epsilon=0.8,
                                                        theta_a=2.0)])
def test_generator_matches_fock_construction(p):
    rates = effective_rates(p)
    m = generator(p, rates)
    ref = fock_generator(p, rates)
    assert np.max(np.abs(m - ref)) < 1e-14
    rng = np.random.default_rng(3)
    for _ in range(5):
        s = _random_state(rng)
        got = amplitude_rhs(s, rates, p).as_array()
        assert np.max(np.abs(got - ref @ s.as_array())) < 1e-14 * max(1.0, np.abs(got).max())


def test_evolve_constant_without_drive():
    traj = evolve(AmplitudeState.vacuum(), FIG5.replace(epsilon=0.0), 5.0)
    assert np.all(traj.states == np.array([1, 0, 0, 0, 0, 0]))
    assert traj.times[-1] == 5.0


def test_evolve_single_photon_decay():
    p = RingParams(g1=1.0, g2=0.5, kappa_a=0.3, theta_a=1.1)
    gm = effective_rates(p).g_minus
    t_end = 1.0 / gm
    traj = evolve(AmplitudeState(c00=0, c10=1), p, t_end, dt=1e-3 / gm)
    got = abs(traj.final.c10)
    assert abs(got - math.exp(-0.5 * gm * t_end)) < 1e-8 * got


@pytest.mark.parametrize("p", FIG5_SETS)
def test_evolve_reaches_steady_state(p):
    gm = effective_rates(p).g_minus
    traj = evolve(AmplitudeState.vacuum(), p, 50.0 / gm)
    ss = steady_state(p).as_array()
    assert np.max(np.abs(traj.final.as_array() - ss)) < 1e-6


def test_evolve_step_guard():
    p = FIG5.replace(epsilon=1.0)
    rate = driven.max_rate(p)
    with pytest.raises(StepSizeError):
        evolve(AmplitudeState.vacuum(), p, 1.0, dt=0.2 / rate)
    evolve(AmplitudeState.vacuum(), p, 1.0, dt=0.099 / rate)


def test_evolve_rejects_bad_times():
    with pytest.raises(ValueError):
        evolve(AmplitudeState.vacuum(), FIG5, 0.0)
    with pytest.raises(ValueError):
        evolve(AmplitudeState.vacuum(), FIG5, 1.0, dt=-1.0)


def test_clockwise_sector_decouples():
    p = FIG5.replace(zeta=0.0, epsilon=2.0, theta_a=0.8)
    traj = evolve(AmplitudeState.vacuum(), p, 10.0)
    assert np.all(traj.states[:, [2, 3, 4]] == 0)
    assert np.any(traj.states[:, 5] != 0)


@pytest.mark.parametrize("seed", range(5))
def test_excited_norm_non_increasing_without_drive(seed):
    rng = np.random.default_rng(seed)
    p = RingParams(g1=rng.uniform(0, 2), g2=rng.uniform(0, 2), gt1=rng.uniform(0, 2),
                   gt2=rng.uniform(0, 2), kappa_a=rng.uniform(0.05, 1), chi=rng.uniform(0, 5),
                   zeta=complex(rng.normal(), rng.normal()), theta_a=rng.uniform(0, 2 * math.pi))
    traj = evolve(_random_state(rng), p, 20.0, pin_vacuum=False)
    norm = np.sum(np.abs(traj.states[:, 1:]) ** 2, axis=1)
    assert np.all(np.diff(norm) <= 1e-12 * norm[:-1])


def test_pin_vacuum_false_lets_c00_move():
    p = FIG5.replace(epsilon=1.0)
    traj = evolve(AmplitudeState.vacuum(), p, 1.0, pin_vacuum=False)
    assert traj.final.c00 != 1
    pinned = evolve(AmplitudeState.vacuum(), p, 1.0)
    assert pinned.final.c00 == 1


def test_steady_state_unforced():
    s = steady_state(FIG5.replace(epsilon=0.0))
    assert np.all(s.as_array() == np.array([1, 0, 0, 0, 0, 0]))


def test_steady_state_closed_form():
    k = 0.7
    p = RingParams(g1=1.0, g2=1.0, kappa_a=k, theta_a=math.pi, epsilon=k)
    s = steady_state(p)
    assert abs(s.c10 - (-0.5j)) < 1e-14
    assert abs(s.c20 - (-1 / (2 * math.sqrt(2)))) < 1e-14
    assert abs(observables(s).g2 - 1) < 1e-13


@pytest.mark.parametrize("p", FIG5_SETS)
def test_steady_state_residual(p):
    s = steady_state(p)
    d = amplitude_rhs(s, effective_rates(p), p).as_array()
    assert np.max(np.abs(d[1:])) < 1e-10 * p.epsilon


def test_steady_state_singular(monkeypatch):
    monkeypatch.setattr(driven, "COND_LIMIT", 1.0)
    with pytest.raises(SingularSystemError):
        steady_state(FIG5.replace(epsilon=1.0))


def test_observables_examples():
    o = observables(AmplitudeState(c10=0.3))
    assert o.g2 == 0 and o.n_ccw == pytest.approx(0.09)
    o = observables(AmplitudeState(c20=1 / math.sqrt(2)))
    assert o.g2 == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ZeroOccupationError):
        observables(AmplitudeState(c01=0.5))


def test_observables_independent_of_c00_and_explicit():
    rng = np.random.default_rng(11)
    for _ in range(20):
        arr = rng.normal(size=6) + 1j * rng.normal(size=6)
        a = observables(AmplitudeState.from_array(arr))
        arr2 = arr.copy()
        arr2[0] = rng.normal() + 1j
        b = observables(AmplitudeState.from_array(arr2))
        assert a.g2 == b.g2 and a.n_ccw == b.n_ccw
        c10, c11, c20 = abs(arr[1]) ** 2, abs(arr[3]) ** 2, abs(arr[5]) ** 2
        assert a.g2 == pytest.approx(2 * c20 / (2 * c20 + c10 + c11) ** 2, rel=1e-15)
        assert a.n_ccw == pytest.approx(c10 + c11 + 2 * c20, rel=1e-15)
        assert a.n2_ccw == pytest.approx(2 * c20, rel=1e-15)


def test_amplitude_state_shape_check():
    with pytest.raises(ValueError):
        AmplitudeState.from_array(np.zeros(5))
