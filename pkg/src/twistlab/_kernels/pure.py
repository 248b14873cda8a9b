"""Numpy implementations of the hot kernels.

Same contract as the compiled backend in ``_fast.pyx``: piecewise Orlicz
evaluation, its derivative, the gauge sum used by the Luxemburg bisection,
the numeric Legendre conjugate, and the x*log^p(|x|/scale) primitive.

The Orlicz function is passed unpacked as ``(log_power, t0, a, b, c)``:
M(t) = t^2 * log(t)^log_power on (0, t0], and a*t^2 + b*t + c on (t0, inf),
with M(0) = 0.
"""

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - np.sqrt(5.0)) / 2.0


def xlog_power(x, power, scale):
    """Coordinatewise x * log(|x|/scale)**power with the 0*log(0) = 0 rule."""
    x = np.asarray(x, dtype=np.float64)
    ax = np.abs(x)
    pos = ax > 0.0
    safe = np.where(pos, ax, scale)
    lg = np.log(safe / scale)
    return np.where(pos, x * lg**power, 0.0)


def orlicz_values(t, log_power, t0, a, b, c):
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    pos = t > 0.0
    small = pos & (t <= t0)
    ts = np.where(small, t, 1.0)
    power_branch = t * t * np.log(ts) ** log_power
    ext_branch = a * t * t + b * t + c
    out = np.where(small, power_branch, ext_branch)
    return np.where(pos, out, 0.0)


def orlicz_deriv(t, log_power, t0, a, b, c):
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    pos = t > 0.0
    small = pos & (t <= t0)
    ts = np.where(small, t, 1.0)
    lg = np.log(ts)
    p = log_power
    if p == 0:
        power_branch = 2.0 * t
    else:
        power_branch = 2.0 * t * lg**p + p * t * lg ** (p - 1)
    ext_branch = 2.0 * a * t + b
    out = np.where(small, power_branch, ext_branch)
    return np.where(pos, out, 0.0)


def orlicz_gauge_sum(absx, rho, log_power, t0, a, b, c):
    """sum_i M(|x_i| / rho)."""
    return float(np.sum(orlicz_values(np.asarray(absx) / rho, log_power, t0, a, b, c)))


def legendre_conjugate(s, log_power, t0, a, b, c, tol=1e-10):
    """M*(s) = sup_{t >= 0} (s*t - M(t)), elementwise over s.

    The objective is concave; the bracket [0, hi] grows until M'(hi) >= s,
    then golden-section search shrinks it to relative width ``tol``.
    """
    s = np.atleast_1d(np.asarray(s, dtype=np.float64))
    out = np.zeros_like(s)
    pos = s > 0.0
    if not np.any(pos):
        return out
    sp = s[pos]
    hi = np.ones_like(sp)
    for _ in range(400):
        need = orlicz_deriv(hi, log_power, t0, a, b, c) < sp
        if not need.any():
            break
        hi[need] *= 2.0
    lo = np.zeros_like(sp)

    def obj(t):
        return sp * t - orlicz_values(t, log_power, t0, a, b, c)

    h = hi - lo
    x1 = lo + _INVPHI2 * h
    x2 = lo + _INVPHI * h
    f1 = obj(x1)
    f2 = obj(x2)
    n_iter = int(np.ceil(np.log(tol) / np.log(_INVPHI))) + 1
    for _ in range(n_iter):
        left = f1 >= f2
        hi = np.where(left, x2, hi)
        lo = np.where(left, lo, x1)
        h = hi - lo
        x1 = lo + _INVPHI2 * h
        x2 = lo + _INVPHI * h
        f1 = obj(x1)
        f2 = obj(x2)
    best = np.maximum(np.maximum(f1, f2), 0.0)
    out[pos] = best
    return out
