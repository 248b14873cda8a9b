"""The extremal analytic selector for the (l_inf, l_1) couple at 1/2, its
closed-form strip derivatives, an independent finite-difference oracle, and
the conformal strip-to-disk data.

The selector is B x(z)_i = sgn(x_i) |x_i|^{2z} ||x||_2^{1-2z}; it satisfies
B x(1/2) = x and is boundary-optimal: the modulus vector has l_inf norm
||x||_2 on Re z = 0 and l_1 norm ||x||_2 on Re z = 1. Its Taylor
coefficients at 1/2 are the quasi-linear differentials used everywhere else.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from .sequences import as_vector, complex_lp_norm, safe_xlog, sgn

_STEP_RANGE = (1e-6, 1e-2)


def check_strip(z):
    """Validate 0 <= Re z <= 1 and return z as a complex number."""
    z = complex(z)
    if not 0.0 <= z.real <= 1.0:
        raise ValueError(f"point {z} lies outside the closed unit strip")
    return z


def extremal_selector(x, z):
    """Value of the extremal selector at a strip point, as a complex vector."""
    x = as_vector(x)
    z = check_strip(z)
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise ValueError("selector is undefined for the zero vector")
    ax = np.abs(x)
    pos = ax > 0.0
    la = np.log(np.where(pos, ax, 1.0))
    out = np.zeros(x.size, dtype=np.complex128)
    out[pos] = sgn(x)[pos] * np.exp(2.0 * z * la[pos] + (1.0 - 2.0 * z) * np.log(norm))
    return out


def selector_derivative(x, order):
    """Taylor coefficient of the selector at 1/2: order 0 is x itself,
    order 1 is 2x log(|x|/||x||_2), order 2 is (Bx)''(1/2)/2 = 2x log^2(...)."""
    x = as_vector(x)
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise ValueError("selector is undefined for the zero vector")
    if order == 0:
        return x.copy()
    if order in (1, 2):
        return 2.0 * safe_xlog(x, order, norm)
    raise ValueError("order must be 0, 1 or 2")


def numeric_derivative(x, order, h):
    """Finite-difference derivative of the selector along the real direction
    at z = 1/2, Richardson-extrapolated from steps h and h/2.

    Note the order-2 result approximates (Bx)''(1/2), which is twice the
    order-2 convention of :func:`selector_derivative`.
    """
    x = as_vector(x)
    if not _STEP_RANGE[0] <= h <= _STEP_RANGE[1]:
        raise ValueError(f"step h must lie in [{_STEP_RANGE[0]}, {_STEP_RANGE[1]}]")

    def diff(step):
        plus = extremal_selector(x, 0.5 + step)
        minus = extremal_selector(x, 0.5 - step)
        if order == 1:
            return (plus - minus) / (2.0 * step)
        if order == 2:
            center = extremal_selector(x, 0.5)
            return (plus - 2.0 * center + minus) / step**2
        raise ValueError("order must be 1 or 2")

    coarse = diff(h)
    fine = diff(h / 2.0)
    est = (4.0 * fine - coarse) / 3.0
    imag_max = float(np.max(np.abs(est.imag))) if est.size else 0.0
    if imag_max > 10.0 * h**2:
        raise ValueError("imaginary parts of the real-direction derivative failed to vanish")
    return est.real


@dataclass(frozen=True)
class ConformalData:
    """A strip-to-disk conformal map with phi(1/2) = 0, the constant
    d = phi''(1/2) / (2 phi'(1/2)), and the first derivative at 1/2."""

    phi_eval: object
    d: complex
    phi_prime_half: complex


def _symmetric_strip_map(z):
    u = cmath.exp(1j * cmath.pi * z)
    return (u - 1j) / (u + 1j)


def conformal_constant(phi_choice="symmetric_strip"):
    """Build the conformal map and differentiate it at 1/2 by central
    differences with Richardson extrapolation.

    For the symmetric strip map the strip is mirror-symmetric about
    Re z = 1/2, which forces phi''(1/2) = 0 and hence d = 0.
    """
    if phi_choice != "symmetric_strip":
        raise ValueError(f"unknown conformal map choice {phi_choice!r}")
    phi = _symmetric_strip_map

    def second(step):
        return (phi(0.5 + step) - 2.0 * phi(0.5) + phi(0.5 - step)) / step**2

    def first(step):
        return (phi(0.5 + step) - phi(0.5 - step)) / (2.0 * step)

    h = 1e-3
    d2 = (4.0 * second(h / 2.0) - second(h)) / 3.0
    d1 = (4.0 * first(h / 2.0) - first(h)) / 3.0
    return ConformalData(phi_eval=phi, d=d2 / (2.0 * d1), phi_prime_half=d1)


def boundary_norms(x, t):
    """(||Bx(it)||_inf, ||Bx(1+it)||_1); both equal ||x||_2 for x != 0."""
    left = complex_lp_norm(extremal_selector(x, 1j * t), np.inf)
    right = complex_lp_norm(extremal_selector(x, 1.0 + 1j * t), 1)
    return left, right


def boundary_norms_grid(x, ts):
    """Boundary norms over an array of boundary parameters t.

    Returns (linf_at_it, l1_at_1_plus_it) arrays; one full complex selector
    evaluation per grid row, broadcast over t.
    """
    x = as_vector(x)
    ts = np.asarray(ts, dtype=np.float64)
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise ValueError("selector is undefined for the zero vector")
    ax = np.abs(x)
    pos = ax > 0.0
    la = np.log(np.where(pos, ax, 1.0))
    sg = sgn(x)
    out = []
    for z_row in (1j * ts, 1.0 + 1j * ts):
        expo = 2.0 * z_row[:, None] * la[None, :] + (1.0 - 2.0 * z_row)[:, None] * np.log(norm)
        vals = np.where(pos[None, :], sg[None, :] * np.exp(expo), 0.0)
        out.append(np.abs(vals))
    return np.max(out[0], axis=1), np.sum(out[1], axis=1)
