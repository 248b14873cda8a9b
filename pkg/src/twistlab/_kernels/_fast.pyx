# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as the numpy backend in pure.py."""

from libc.math cimport fabs, log, sqrt

import numpy as np


cdef double _INVPHI = (sqrt(5.0) - 1.0) / 2.0
cdef double _INVPHI2 = (3.0 - sqrt(5.0)) / 2.0


cdef inline double _logpow(double lg, int p) nogil:
    cdef double out = 1.0
    cdef int i
    for i in range(p):
        out *= lg
    return out


cdef inline double _mval(double t, int p, double t0, double a, double b, double c) nogil:
    if t <= 0.0:
        return 0.0
    if t <= t0:
        return t * t * _logpow(log(t), p)
    return a * t * t + b * t + c


cdef inline double _mder(double t, int p, double t0, double a, double b, double c) nogil:
    cdef double lg
    if t <= 0.0:
        return 0.0
    if t <= t0:
        if p == 0:
            return 2.0 * t
        lg = log(t)
        return 2.0 * t * _logpow(lg, p) + p * t * _logpow(lg, p - 1)
    return 2.0 * a * t + b


def xlog_power(x, int power, double scale):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double ax
    for i in range(n):
        ax = fabs(xv[i])
        if ax > 0.0:
            out[i] = xv[i] * _logpow(log(ax / scale), power)
        else:
            out[i] = 0.0
    return out_arr


def orlicz_values(t, int log_power, double t0, double a, double b, double c):
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    cdef double[::1] tv = np.ascontiguousarray(t_arr.ravel())
    cdef Py_ssize_t n = tv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _mval(tv[i], log_power, t0, a, b, c)
    return out_arr.reshape(t_arr.shape)


def orlicz_deriv(t, int log_power, double t0, double a, double b, double c):
    t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    cdef double[::1] tv = np.ascontiguousarray(t_arr.ravel())
    cdef Py_ssize_t n = tv.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _mder(tv[i], log_power, t0, a, b, c)
    return out_arr.reshape(t_arr.shape)


def orlicz_gauge_sum(absx, double rho, int log_power, double t0, double a, double b, double c):
    cdef double[::1] xv = np.ascontiguousarray(absx, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t i
    cdef double total = 0.0
    for i in range(n):
        total += _mval(xv[i] / rho, log_power, t0, a, b, c)
    return total


def legendre_conjugate(s, int log_power, double t0, double a, double b, double c, double tol=1e-10):
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    cdef double[::1] sv = np.ascontiguousarray(s_arr.ravel())
    cdef Py_ssize_t n = sv.shape[0]
    out_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int it, n_iter
    cdef double sp, lo, hi, h, x1, x2, f1, f2, best
    n_iter = <int>(np.ceil(np.log(tol) / np.log(_INVPHI))) + 1
    for i in range(n):
        sp = sv[i]
        if sp <= 0.0:
            out[i] = 0.0
            continue
        hi = 1.0
        for it in range(400):
            if _mder(hi, log_power, t0, a, b, c) >= sp:
                break
            hi *= 2.0
        lo = 0.0
        h = hi - lo
        x1 = lo + _INVPHI2 * h
        x2 = lo + _INVPHI * h
        f1 = sp * x1 - _mval(x1, log_power, t0, a, b, c)
        f2 = sp * x2 - _mval(x2, log_power, t0, a, b, c)
        for it in range(n_iter):
            if f1 >= f2:
                hi = x2
            else:
                lo = x1
            h = hi - lo
            x1 = lo + _INVPHI2 * h
            x2 = lo + _INVPHI * h
            f1 = sp * x1 - _mval(x1, log_power, t0, a, b, c)
            f2 = sp * x2 - _mval(x2, log_power, t0, a, b, c)
        best = f1 if f1 >= f2 else f2
        out[i] = best if best > 0.0 else 0.0
    return out_arr.reshape(s_arr.shape)
