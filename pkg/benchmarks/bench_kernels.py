"""Compare the numba kernels with their pure-numpy fallbacks.

Times the three hot loops (shell quadrature, RK4 amplitude integration and
the ETDRK4 waveguide evolution) on both backends, after one warm-up call so
that JIT compilation is excluded. Results of the two paths are compared too.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import math
import time

import numpy as np

from ringqed import AmplitudeState, RingParams, TwoPhotonInput, build_model, evolve, t_correction
from ringqed import _accel, oracle


def _shell(backend):
    p = RingParams(kappa_a=1.0, chi=0.2, g1=1.0, g2=0.6, theta_a=0.7, tau_d=0.5)
    return t_correction(TwoPhotonInput(0.4, -0.9), p, backend=backend)


def _rk4(backend):
    p = RingParams(g1=1, g2=1, gt1=1, gt2=1, kappa_a=0.2, zeta=0.5, chi=4.0, epsilon=4.0, theta_a=math.pi)
    return evolve(AmplitudeState.vacuum(), p, 50.0, backend=backend).final.as_array()


_MODEL = None


def _etdrk4(backend):
    global _MODEL
    if _MODEL is None:
        _MODEL = build_model(RingParams(kappa_a=1.0, g1=1.0, g2=0.5, theta_a=1.0), n_modes=4000)
    return oracle.transmission(_MODEL, 1.0, backend=backend).t_numeric


CASES = [("shell quadrature", _shell), ("rk4 driven ring", _rk4), ("etdrk4 oracle", _etdrk4)]


def best_time(fn, backend, repeat):
    fn(backend)  # warm-up, includes compilation for numba
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if _accel.HAS_NUMBA else [])
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in backends) + f"{'speed-up':>10}{'max diff':>11}")
    for name, fn in CASES:
        res = {b: best_time(fn, b, args.repeat) for b in backends}
        line = f"{name:<18}" + "".join(f"{res[b][0]:>11.4f}s" for b in backends)
        if len(backends) == 2:
            diff = float(np.max(np.abs(np.asarray(res["numpy"][1]) - np.asarray(res["numba"][1]))))
            line += f"{res['numpy'][0] / res['numba'][0]:>9.1f}x{diff:>11.1e}"
        print(line)


if __name__ == "__main__":
    main()
