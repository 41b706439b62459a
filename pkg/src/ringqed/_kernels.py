"""Hot numerical kernels, each in a numba and a numpy flavour.

The two flavours implement the same algorithm step for step; they agree to
rounding but are not bit-identical. Callers go through the dispatchers at the
bottom of the module, which pick the flavour via :mod:`ringqed._accel`.

Kernels:

* ``gk_shell``: globally adaptive 15-point Gauss-Kronrod quadrature of the
  two-photon bound-kernel integrand along the energy shell.
* ``etdrk4``: fourth-order exponential time differencing for the
  single-excitation resonator + discretized waveguide system (diagonal stiff
  part, rank-one coupling).
* ``rk4_linear``: classical RK4 for a small dense linear system y' = M y.
"""
import numpy as np

from ._accel import njit, resolve_backend

# 15-point Kronrod abscissae (positive half) and weights, 7-point Gauss weights.
XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# Full 15-node layout used by the vectorised flavour.
_NODES = np.concatenate([-XGK[:7], [0.0], XGK[:7][::-1]])
_WK = np.concatenate([WGK[:7], [WGK[7]], WGK[:7][::-1]])
_WG = np.zeros(15)
_WG[[1, 3, 5]] = WG[:3]
_WG[[9, 11, 13]] = WG[:3][::-1]
_WG[7] = WG[3]

# Layout of the ``pars`` vector for the shell integrand.
P_OMEGA_A, P_KAPPA, P_SG1, P_SG2, P_THETA, P_TAU, P_E = range(7)

STATUS_OK = 0
STATUS_BUDGET = 1


# --------------------------------------------------------------------------
# energy-shell integrand
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _shell_point_nb(nu, pars):
    wa = pars[0]
    kap = pars[1]
    sg1 = pars[2]
    sg2 = pars[3]
    th0 = pars[4]
    tau = pars[5]
    e_tot = pars[6]
    mu = e_tot - nu
    th_nu = th0 + (nu - wa) * tau
    th_mu = th0 + (mu - wa) * tau
    d_nu = complex(kap, wa - nu)
    d_mu = complex(kap, wa - mu)
    w_nu = sg1 * sg1 + sg2 * sg2 + 2.0 * sg1 * sg2 * np.cos(th_nu)
    w_mu = sg1 * sg1 + sg2 * sg2 + 2.0 * sg1 * sg2 * np.cos(th_mu)
    t_nu = 1.0 - w_nu / d_nu
    t_mu = 1.0 - w_mu / d_mu
    eta_nu = d_nu.conjugate() / d_nu
    eta_mu = d_mu.conjugate() / d_mu
    gam_nu = (sg1 + sg2 * complex(np.cos(th_nu), np.sin(th_nu))) / d_nu
    gam_mu = (sg1 + sg2 * complex(np.cos(th_mu), np.sin(th_mu))) / d_mu
    return (t_nu * eta_mu + t_mu * eta_nu) * gam_nu.conjugate() * gam_mu.conjugate()


def shell_integrand_np(nu, pars):
    """Vectorised shell integrand (t(nu)eta(E-nu) + t(E-nu)eta(nu)) conj(G(nu) G(E-nu))."""
    wa, kap, sg1, sg2, th0, tau, e_tot = pars
    nu = np.asarray(nu, dtype=float)
    mu = e_tot - nu
    th_nu = th0 + (nu - wa) * tau
    th_mu = th0 + (mu - wa) * tau
    d_nu = kap + 1j * (wa - nu)
    d_mu = kap + 1j * (wa - mu)
    w_nu = sg1 * sg1 + sg2 * sg2 + 2.0 * sg1 * sg2 * np.cos(th_nu)
    w_mu = sg1 * sg1 + sg2 * sg2 + 2.0 * sg1 * sg2 * np.cos(th_mu)
    t_nu = 1.0 - w_nu / d_nu
    t_mu = 1.0 - w_mu / d_mu
    eta_nu = np.conj(d_nu) / d_nu
    eta_mu = np.conj(d_mu) / d_mu
    gam_nu = (sg1 + sg2 * np.exp(1j * th_nu)) / d_nu
    gam_mu = (sg1 + sg2 * np.exp(1j * th_mu)) / d_mu
    return (t_nu * eta_mu + t_mu * eta_nu) * np.conj(gam_nu) * np.conj(gam_mu)


@njit(cache=True, nogil=True)
def shell_integrand_nb(nu, pars):
    out = np.empty(nu.size, dtype=np.complex128)
    for i in range(nu.size):
        out[i] = _shell_point_nb(nu[i], pars)
    return out


# --------------------------------------------------------------------------
# adaptive Gauss-Kronrod
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _gk15_nb(a, b, pars):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = _shell_point_nb(c, pars)
    res_k = fc * WGK[7]
    res_g = fc * WG[3]
    for j in range(7):
        x = h * XGK[j]
        pair = _shell_point_nb(c - x, pars) + _shell_point_nb(c + x, pars)
        res_k += WGK[j] * pair
        if j % 2 == 1:
            res_g += WG[j // 2] * pair
    return res_k * h, abs((res_k - res_g) * h)


@njit(cache=True, nogil=True)
def gk_shell_nb(pars, breaks, rel_tol, abs_tol, max_intervals):
    n0 = breaks.size - 1
    cap = max(max_intervals, n0)
    lo = np.empty(cap)
    hi = np.empty(cap)
    val = np.empty(cap, dtype=np.complex128)
    err = np.empty(cap)
    total = 0j
    etot = 0.0
    for i in range(n0):
        lo[i] = breaks[i]
        hi[i] = breaks[i + 1]
        v, e = _gk15_nb(lo[i], hi[i], pars)
        val[i] = v
        err[i] = e
        total += v
        etot += e
    n = n0
    n_eval = 15 * n0
    frozen = 0.0
    status = STATUS_OK
    while True:
        if etot + frozen <= max(abs_tol, rel_tol * abs(total)):
            break
        if n >= cap:
            status = STATUS_BUDGET
            break
        k = 0
        emax = -1.0
        for i in range(n):
            if err[i] > emax:
                emax = err[i]
                k = i
        if emax <= 0.0:
            status = STATUS_BUDGET
            break
        a = lo[k]
        b = hi[k]
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            # interval exhausted at machine resolution
            frozen += err[k]
            etot -= err[k]
            err[k] = 0.0
            continue
        v1, e1 = _gk15_nb(a, mid, pars)
        v2, e2 = _gk15_nb(mid, b, pars)
        n_eval += 30
        total += v1 + v2 - val[k]
        etot += e1 + e2 - err[k]
        hi[k] = mid
        val[k] = v1
        err[k] = e1
        lo[n] = mid
        hi[n] = b
        val[n] = v2
        err[n] = e2
        n += 1
    # final sums in index order for reproducibility
    total = 0j
    etot = frozen
    for i in range(n):
        total += val[i]
        etot += err[i]
    return total, etot, n_eval, status


def _gk15_np(a, b, pars):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    f = shell_integrand_np(c + h * _NODES, pars)
    res_k = np.dot(_WK, f)
    res_g = np.dot(_WG, f)
    return res_k * h, abs((res_k - res_g) * h)


def gk_shell_np(pars, breaks, rel_tol, abs_tol, max_intervals):
    return gk_adaptive_np(lambda x: shell_integrand_np(x, pars), breaks, rel_tol, abs_tol,
                          max_intervals)


def gk_adaptive_np(func, breaks, rel_tol, abs_tol, max_intervals):
    """Globally adaptive G7-K15 quadrature of a vectorised complex function.

    Same refinement rule as the numba shell kernel: always bisect the interval
    with the largest error estimate until the summed estimate meets
    ``max(abs_tol, rel_tol * |integral|)`` or ``max_intervals`` is reached.

    Returns ``(value, error_estimate, n_evaluations, status)``.
    """
    breaks = np.asarray(breaks, dtype=float)
    n0 = breaks.size - 1
    cap = max(int(max_intervals), n0)

    def rule(a, b):
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        f = func(c + h * _NODES)
        res_k = np.dot(_WK, f)
        res_g = np.dot(_WG, f)
        return res_k * h, abs((res_k - res_g) * h)

    lo = np.empty(cap)
    hi = np.empty(cap)
    val = np.empty(cap, dtype=complex)
    err = np.empty(cap)
    total = 0j
    etot = 0.0
    # evaluate all initial pieces in one vectorised call
    a0, b0 = breaks[:-1], breaks[1:]
    c0 = 0.5 * (a0 + b0)
    h0 = 0.5 * (b0 - a0)
    f0 = func((c0[:, None] + h0[:, None] * _NODES[None, :]).ravel()).reshape(n0, 15)
    vk = (f0 @ _WK) * h0
    vg = (f0 @ _WG) * h0
    lo[:n0], hi[:n0] = a0, b0
    val[:n0] = vk
    err[:n0] = np.abs(vk - vg)
    for i in range(n0):
        total += val[i]
        etot += err[i]
    n = n0
    n_eval = 15 * n0
    frozen = 0.0
    status = STATUS_OK
    while True:
        if etot + frozen <= max(abs_tol, rel_tol * abs(total)):
            break
        if n >= cap:
            status = STATUS_BUDGET
            break
        k = int(np.argmax(err[:n]))
        if err[k] <= 0.0:
            status = STATUS_BUDGET
            break
        a, b = lo[k], hi[k]
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            frozen += err[k]
            etot -= err[k]
            err[k] = 0.0
            continue
        v1, e1 = rule(a, mid)
        v2, e2 = rule(mid, b)
        n_eval += 30
        total += v1 + v2 - val[k]
        etot += e1 + e2 - err[k]
        hi[k] = mid
        val[k], err[k] = v1, e1
        lo[n], hi[n], val[n], err[n] = mid, b, v2, e2
        n += 1
    total = 0j
    etot = frozen
    for i in range(n):
        total += val[i]
        etot += err[i]
    return complex(total), float(etot), n_eval, status


# --------------------------------------------------------------------------
# ETDRK4 for the discretized waveguide
# --------------------------------------------------------------------------

def etdrk4_coefficients(lin, dt, n_contour=32):
    """Exponential integrator coefficients for a diagonal linear part.

    Uses the contour-integral evaluation of the phi-functions, which stays
    accurate when ``lin * dt`` is small or zero.
    """
    lin = np.asarray(lin, dtype=complex)
    z = lin * dt
    r = np.exp(2j * np.pi * (np.arange(1, n_contour + 1) - 0.5) / n_contour)
    zr = z[:, None] + r[None, :]
    e_full = np.exp(z)
    e_half = np.exp(z / 2)
    q = dt * np.mean((np.exp(zr / 2) - 1.0) / zr, axis=1)
    ezr = np.exp(zr)
    f1 = dt * np.mean((-4.0 - zr + ezr * (4.0 - 3.0 * zr + zr**2)) / zr**3, axis=1)
    f2 = dt * np.mean((2.0 + zr + ezr * (-2.0 + zr)) / zr**3, axis=1)
    f3 = dt * np.mean((-4.0 - 3.0 * zr - zr**2 + ezr * (4.0 - zr)) / zr**3, axis=1)
    return e_full, e_half, q, f1, f2, f3


@njit(cache=True, nogil=True)
def _couple_nb(y, v, out):
    s = 0j
    for k in range(v.size):
        s += v[k].conjugate() * y[k + 1]
        out[k + 1] = v[k] * y[0]
    out[0] = -s


@njit(cache=True, nogil=True)
def etdrk4_nb(y0, v, e_full, e_half, q, f1, f2, f3, n_steps):
    m = y0.size
    u = y0.copy()
    nu = np.empty(m, dtype=np.complex128)
    na = np.empty(m, dtype=np.complex128)
    nb = np.empty(m, dtype=np.complex128)
    nc = np.empty(m, dtype=np.complex128)
    a = np.empty(m, dtype=np.complex128)
    b = np.empty(m, dtype=np.complex128)
    c = np.empty(m, dtype=np.complex128)
    for _ in range(n_steps):
        _couple_nb(u, v, nu)
        for i in range(m):
            a[i] = e_half[i] * u[i] + q[i] * nu[i]
        _couple_nb(a, v, na)
        for i in range(m):
            b[i] = e_half[i] * u[i] + q[i] * na[i]
        _couple_nb(b, v, nb)
        for i in range(m):
            c[i] = e_half[i] * a[i] + q[i] * (2.0 * nb[i] - nu[i])
        _couple_nb(c, v, nc)
        for i in range(m):
            u[i] = (e_full[i] * u[i] + f1[i] * nu[i]
                    + 2.0 * f2[i] * (na[i] + nb[i]) + f3[i] * nc[i])
    return u


def etdrk4_np(y0, v, e_full, e_half, q, f1, f2, f3, n_steps):
    vc = np.conj(v)

    def couple(y):
        out = np.empty_like(y)
        out[0] = -np.dot(vc, y[1:])
        out[1:] = v * y[0]
        return out

    u = np.array(y0, dtype=complex)
    for _ in range(n_steps):
        nu = couple(u)
        a = e_half * u + q * nu
        na = couple(a)
        b = e_half * u + q * na
        nb = couple(b)
        c = e_half * a + q * (2.0 * nb - nu)
        nc = couple(c)
        u = e_full * u + f1 * nu + 2.0 * f2 * (na + nb) + f3 * nc
    return u


# --------------------------------------------------------------------------
# RK4 for y' = M y
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _matvec_nb(mat, y, out):
    n = y.size
    for i in range(n):
        s = 0j
        for j in range(n):
            s += mat[i, j] * y[j]
        out[i] = s


@njit(cache=True, nogil=True)
def rk4_linear_nb(mat, y0, dt, n_steps, stride):
    n = y0.size
    n_samples = n_steps // stride + 1
    traj = np.empty((n_samples, n), dtype=np.complex128)
    y = y0.copy()
    k1 = np.empty(n, dtype=np.complex128)
    k2 = np.empty(n, dtype=np.complex128)
    k3 = np.empty(n, dtype=np.complex128)
    k4 = np.empty(n, dtype=np.complex128)
    tmp = np.empty(n, dtype=np.complex128)
    traj[0] = y
    s = 1
    for step in range(1, n_steps + 1):
        _matvec_nb(mat, y, k1)
        for i in range(n):
            tmp[i] = y[i] + 0.5 * dt * k1[i]
        _matvec_nb(mat, tmp, k2)
        for i in range(n):
            tmp[i] = y[i] + 0.5 * dt * k2[i]
        _matvec_nb(mat, tmp, k3)
        for i in range(n):
            tmp[i] = y[i] + dt * k3[i]
        _matvec_nb(mat, tmp, k4)
        for i in range(n):
            y[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if step % stride == 0:
            traj[s] = y
            s += 1
    return traj


def rk4_linear_np(mat, y0, dt, n_steps, stride):
    n_samples = n_steps // stride + 1
    traj = np.empty((n_samples, y0.size), dtype=complex)
    y = np.array(y0, dtype=complex)
    traj[0] = y
    s = 1
    for step in range(1, n_steps + 1):
        k1 = mat @ y
        k2 = mat @ (y + 0.5 * dt * k1)
        k3 = mat @ (y + 0.5 * dt * k2)
        k4 = mat @ (y + dt * k3)
        y = y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if step % stride == 0:
            traj[s] = y
            s += 1
    return traj


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

def gk_shell(pars, breaks, rel_tol, abs_tol, max_intervals, backend=None):
    pars = np.ascontiguousarray(pars, dtype=np.float64)
    breaks = np.ascontiguousarray(breaks, dtype=np.float64)
    if resolve_backend(backend) == "numba":
        v, e, n, s = gk_shell_nb(pars, breaks, float(rel_tol), float(abs_tol), int(max_intervals))
        return complex(v), float(e), int(n), int(s)
    return gk_shell_np(pars, breaks, rel_tol, abs_tol, max_intervals)


def etdrk4(y0, v, coeffs, n_steps, backend=None):
    args = [np.ascontiguousarray(x, dtype=np.complex128) for x in (y0, v, *coeffs)]
    if resolve_backend(backend) == "numba":
        return etdrk4_nb(*args, int(n_steps))
    return etdrk4_np(*args, int(n_steps))


def rk4_linear(mat, y0, dt, n_steps, stride=1, backend=None):
    mat = np.ascontiguousarray(mat, dtype=np.complex128)
    y0 = np.ascontiguousarray(y0, dtype=np.complex128)
    if resolve_backend(backend) == "numba":
        return rk4_linear_nb(mat, y0, float(dt), int(n_steps), int(stride))
    return rk4_linear_np(mat, y0, float(dt), int(n_steps), int(stride))
