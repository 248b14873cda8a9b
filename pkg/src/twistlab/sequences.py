"""Finite sequence arithmetic: validation, classical and weighted norms,
and the safe x*log^p primitive shared by every differential in the package.

Vectors are plain 1-d float64 numpy arrays. All operations are pure.
Conventions: natural logarithm everywhere, 0*log(0) = 0, and
||x||_{l2(v)} = ||v*x||_2 (multiplicative weight).
"""

import json

import numpy as np

from . import _kernels


def as_vector(x, name="x"):
    """Validate and return a finite 1-d float64 array of length >= 1."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a 1-d sequence with at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_complex_vector(x, name="x"):
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"{name} must be a 1-d sequence with at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_weights(w, name="w"):
    """Validate a weight sequence: strictly positive and non-increasing."""
    arr = as_vector(w, name)
    if np.any(arr <= 0.0):
        raise ValueError(f"{name} must be strictly positive")
    if np.any(np.diff(arr) > 0.0):
        raise ValueError(f"{name} must be non-increasing")
    return arr


def sgn(x):
    """Sign convention sgn(x) = x/|x|, sgn(0) = 0."""
    return np.sign(np.asarray(x, dtype=np.float64))


def lp_norm(x, p):
    """(sum |x_i|^p)^(1/p), or max|x_i| for p = inf. Rejects p < 1."""
    x = as_vector(x)
    if p != np.inf and p < 1:
        raise ValueError("p must be in [1, inf]")
    ax = np.abs(x)
    if p == np.inf:
        return float(np.max(ax))
    if p == 1:
        return float(np.sum(ax))
    if p == 2:
        return float(np.linalg.norm(ax))
    return float(np.sum(ax**p) ** (1.0 / p))


def complex_lp_norm(x, p):
    """lp norm of the modulus sequence of a complex vector."""
    return lp_norm(np.abs(as_complex_vector(x)), p)


def weighted_l2_norm(x, v):
    """||x||_{l2(v)} = (sum v_i^2 x_i^2)^(1/2) for a positive weight array v."""
    x = as_vector(x)
    v = as_vector(np.asarray(v, dtype=np.float64), "v")
    if v.size != x.size:
        raise ValueError("weight and vector dimensions differ")
    if np.any(v <= 0.0):
        raise ValueError("weights must be strictly positive")
    return float(np.linalg.norm(v * x))


def safe_xlog(x, power, scale):
    """Coordinatewise x_i * log^power(|x_i|/scale) with 0*log(0) = 0.

    ``power`` is a positive integer, ``scale`` > 0.
    """
    if int(power) != power or power < 1:
        raise ValueError("power must be a positive integer")
    if scale <= 0:
        raise ValueError("scale must be positive")
    x = as_vector(x)
    return _kernels.xlog_power(x, int(power), float(scale))


def vector_to_json(x):
    """Serialize a vector as a JSON array of numbers."""
    return json.dumps([float(v) for v in np.asarray(x)])


def vector_from_json(text, name="x"):
    """Read a vector from a JSON array; the dimension is the array length."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError(f"{name}: expected a JSON array of numbers")
    return as_vector(np.asarray(data, dtype=np.float64), name)
