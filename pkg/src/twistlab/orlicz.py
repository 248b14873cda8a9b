"""Orlicz functions t^2 * log^p(t), their Luxemburg norms, numeric Legendre
conjugates and dual norms, and the strict-singularity criterion search for
canonical inclusions between the generated sequence spaces.

An Orlicz gauge here is the piecewise law

    M(t) = t^2 * log(t)^log_power      on (0, t0],   M(0) = 0,
    M(t) = a*t^2 + b*t + c             on (t0, inf),

where the quadratic coefficients are the second-order Taylor continuation at
the cutoff t0 (value, slope and curvature all match). The sequence-space
equivalence class only depends on M near 0, so any convex increasing
extension is admissible; this one is the canonical C^2 choice.

Cutoffs must keep the power branch convex. For t^2 log^2 t that means
log t0 <= (-3 - sqrt(5))/2, for t^2 log^4 t it means log t0 <= -3 - sqrt(3);
the defaults e^-3 and e^-5 sit safely inside those regions and construction
re-checks convexity by sampling the second derivative.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .sequences import as_vector, lp_norm

_DEFAULT_CUTOFF = {"f": math.exp(-3.0), "g": math.exp(-5.0), "square": 0.5}
_LOG_POWER = {"f": 2, "g": 4, "square": 0}

GAUGE_TOL = 1e-10
CONJUGATE_TOL = 1e-10


@dataclass(frozen=True)
class OrliczFunction:
    """Immutable piecewise Orlicz gauge; build via :meth:`make`."""

    kind: str
    log_power: int
    cutoff: float
    ext_a: float
    ext_b: float
    ext_c: float

    @classmethod
    def make(cls, kind, cutoff=None, log_power=None):
        """Construct and validate an Orlicz function.

        kind is one of "f", "g", "square", "custom"; for "custom" an even
        nonnegative ``log_power`` is required. Raises ValueError if the
        power branch is not convex and increasing on (0, cutoff].
        """
        if kind in _LOG_POWER:
            if log_power is not None and log_power != _LOG_POWER[kind]:
                raise ValueError(f"kind {kind!r} fixes log_power={_LOG_POWER[kind]}")
            log_power = _LOG_POWER[kind]
        elif kind == "custom":
            if log_power is None:
                raise ValueError("custom kind requires log_power")
        else:
            raise ValueError(f"unknown Orlicz kind {kind!r}")
        if log_power < 0 or log_power % 2 != 0:
            raise ValueError("log_power must be a nonnegative even integer")
        t0 = float(cutoff) if cutoff is not None else _DEFAULT_CUTOFF.get(kind)
        if t0 is None:
            raise ValueError("custom kind requires an explicit cutoff")
        if not 0.0 < t0 < 1.0:
            raise ValueError("cutoff must lie in (0, 1)")
        val, der, der2 = _power_branch_jet(t0, log_power)
        _check_power_branch(t0, log_power)
        a = der2 / 2.0
        b = der - der2 * t0
        c = val - der * t0 + der2 * t0 * t0 / 2.0
        return cls(kind, int(log_power), t0, a, b, c)

    @property
    def params(self):
        return (self.log_power, self.cutoff, self.ext_a, self.ext_b, self.ext_c)


def _power_branch_jet(t, p):
    """(M, M', M'') of t^2 log^p t at a point of the power branch."""
    lg = math.log(t)
    val = t * t * lg**p
    if p == 0:
        return val, 2.0 * t, 2.0
    der = 2.0 * t * lg**p + p * t * lg ** (p - 1)
    der2 = 2.0 * lg**p + 3.0 * p * lg ** (p - 1)
    if p >= 2:
        der2 += p * (p - 1) * lg ** (p - 2)
    return val, der, der2


def _check_power_branch(t0, p, samples=512):
    """Sample M'' >= 0 and M' > 0 on (0, t0]; raise if the branch fails."""
    lg = np.log(t0) - np.linspace(0.0, 40.0, samples)
    if p == 0:
        return
    der2 = 2.0 * lg**p + 3.0 * p * lg ** (p - 1)
    if p >= 2:
        der2 = der2 + p * (p - 1) * lg ** (p - 2)
    if np.min(der2) < 0.0:
        raise ValueError(
            f"t^2 log^{p} t is not convex on (0, {t0:.6g}]; choose a smaller cutoff"
        )
    der_factor = 2.0 * lg + p  # sign of M' is sign of lg^(p-1) * (2 lg + p), both < 0
    if np.max(der_factor) >= 0.0:
        raise ValueError(
            f"t^2 log^{p} t is not increasing on (0, {t0:.6g}]; choose a smaller cutoff"
        )


def orlicz_eval(M, t):
    """M(t) for scalar or array t >= 0."""
    t_arr = np.asarray(t, dtype=np.float64)
    if np.any(t_arr < 0.0):
        raise ValueError("t must be nonnegative")
    out = _kernels.orlicz_values(np.atleast_1d(t_arr), *M.params)
    return float(out[0]) if t_arr.ndim == 0 else out.reshape(t_arr.shape)


def orlicz_inverse(M, y):
    """The unique t >= 0 with M(t) = y (M is increasing)."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    if y == 0:
        return 0.0
    return _increasing_root(lambda t: orlicz_eval(M, t), y)


def conjugate_eval(M, s):
    """Legendre conjugate M*(s) = sup_t (s*t - M(t)) for scalar or array s."""
    s_arr = np.asarray(s, dtype=np.float64)
    if np.any(s_arr < 0.0):
        raise ValueError("s must be nonnegative")
    out = _kernels.legendre_conjugate(np.atleast_1d(s_arr), *M.params, tol=CONJUGATE_TOL)
    return float(out[0]) if s_arr.ndim == 0 else out.reshape(s_arr.shape)


def conjugate_inverse(M, y):
    """The t >= 0 with M*(t) = y."""
    if y < 0:
        raise ValueError("y must be nonnegative")
    if y == 0:
        return 0.0
    return _increasing_root(lambda t: conjugate_eval(M, t), y)


def _increasing_root(fn, target, rel_tol=1e-13):
    lo, hi = 0.0, 1.0
    for _ in range(200):
        if fn(hi) >= target:
            break
        lo = hi
        hi *= 2.0
    else:
        raise ValueError("root bracket growth failed")
    for _ in range(200):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if fn(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def luxemburg_brackets(M, x):
    """The (lower, upper) gauge brackets: ||x||_inf / M^-1(k) with k the
    support size, and ||x||_1 * max(1, 1/M^-1(1)). Both are valid by
    monotonicity and convexity of M."""
    x = as_vector(x)
    ax = np.abs(x)
    k = int(np.count_nonzero(ax))
    if k == 0:
        raise ValueError("zero vector has no brackets")
    lo = float(np.max(ax)) / orlicz_inverse(M, float(k))
    hi = float(np.sum(ax)) * max(1.0, 1.0 / orlicz_inverse(M, 1.0))
    return lo, hi


def _gauge_norm(sum_at, lo, hi, rel_tol=GAUGE_TOL):
    """Bisection for inf{rho > 0 : sum_at(rho) <= 1}; sum_at is decreasing.

    Returns the upper bracket end, so the result is always admissible.
    """
    for _ in range(100):
        if sum_at(lo) >= 1.0:
            break
        lo *= 0.5
    for _ in range(100):
        if sum_at(hi) <= 1.0:
            break
        hi *= 2.0
    for _ in range(200):
        if hi - lo <= rel_tol * hi:
            break
        mid = 0.5 * (lo + hi)
        if sum_at(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return hi


def luxemburg_norm(M, x):
    """inf{rho > 0 : sum_i M(|x_i|/rho) <= 1}; 0 for the zero vector."""
    x = as_vector(x)
    ax = np.abs(x)
    if not np.any(ax > 0.0):
        return 0.0
    lo, hi = luxemburg_brackets(M, x)
    return _gauge_norm(lambda rho: _kernels.orlicz_gauge_sum(ax, rho, *M.params), lo, hi)


def dual_norm(M, y):
    """Luxemburg norm of y with respect to the numeric conjugate M*.

    This is the computable representative of the dual-space norm; it agrees
    with the operator dual norm up to a universal factor 2.
    """
    y = as_vector(y)
    ay = np.abs(y)
    if not np.any(ay > 0.0):
        return 0.0
    k = int(np.count_nonzero(ay))
    lo = float(np.max(ay)) / conjugate_inverse(M, float(k))
    hi = float(np.sum(ay)) * max(1.0, 1.0 / conjugate_inverse(M, 1.0))

    def sum_at(rho):
        return float(
            np.sum(_kernels.legendre_conjugate(ay / rho, *M.params, tol=CONJUGATE_TOL))
        )

    return _gauge_norm(sum_at, lo, hi)


@dataclass(frozen=True)
class CriterionWitness:
    """A sequence tau in (0,1] certifying sum M(tau_i t) >= B sum N(tau_i t)
    on [0,1]; margin is the sampled minimum of the difference."""

    tau: tuple
    B: float
    margin: float

    def to_json(self):
        return json.dumps(
            {"tau": list(self.tau), "B": self.B, "margin": self.margin},
            sort_keys=True,
        )


_R_GRID = (
    0.5,
    0.25,
    0.1,
    math.exp(-3.0),
    0.02,
    0.01,
    math.exp(-5.0),
    math.exp(-6.0),
    math.exp(-8.0),
)


def criterion_search(M, N, B, n_max=8, t_points=1000):
    """Search geometric families tau_i = r^i for a witness of the
    strict-singularity criterion; returns a CriterionWitness or None.

    None means the search space was exhausted, not that no witness exists.
    """
    if B <= 0:
        raise ValueError("B must be positive")
    t = np.linspace(0.0, 1.0, t_points)
    for r in _R_GRID:
        for n in range(1, n_max + 1):
            tau = r ** np.arange(1, n + 1)
            grid = tau[:, None] * t[None, :]
            lhs = _kernels.orlicz_values(grid, *M.params).sum(axis=0)
            rhs = _kernels.orlicz_values(grid, *N.params).sum(axis=0)
            margin = float(np.min(lhs - B * rhs))
            if margin >= 0.0:
                return CriterionWitness(tuple(float(v) for v in tau), float(B), margin)
    return None


def orlicz_f(cutoff=None):
    return OrliczFunction.make("f", cutoff)


def orlicz_g(cutoff=None):
    return OrliczFunction.make("g", cutoff)


def orlicz_square():
    return OrliczFunction.make("square")


def single_coordinate_norm(M, c):
    """Closed form c / M^-1(1) for the Luxemburg norm of c*e1, c > 0."""
    return c / orlicz_inverse(M, 1.0)


def normalization_residual(M, x):
    """sum M(|x_i| / ||x||_M) - 1; should be <= 0 and tiny for x != 0."""
    rho = luxemburg_norm(M, x)
    ax = np.abs(as_vector(x))
    return _kernels.orlicz_gauge_sum(ax, rho, *M.params) - 1.0


def lp2_reference(x):
    """l2 norm, the Luxemburg norm of the square gauge."""
    return lp_norm(x, 2)
