"""The weighted Hilbert couple: the selector w^{2z-1} x, its linear
differentials, the general selector-composition rule with the conformal
constant, membership norms for the weighted twisted spaces, and the
triviality certificate (all differentials here are exactly linear).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .calderon import check_strip, conformal_constant
from .sequences import as_vector, as_weights, lp_norm, vector_from_json

_OMEGA_LEVELS = ("om10", "om21_0", "om2_10", "om10_inverse")
_SPACES = ("Z2w", "Circle_w", "Z2w_log", "l2_log2w")


@dataclass(frozen=True)
class WeightedCouple:
    """A positive non-increasing weight truncation; only positivity and
    monotonicity are enforced at finite dimension."""

    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", as_weights(self.w))

    @property
    def dim(self):
        return self.w.size

    @property
    def log_w(self):
        return np.log(self.w)


@lru_cache(maxsize=1)
def _conformal_d():
    data = conformal_constant("symmetric_strip")
    d = data.d
    if abs(d.imag) > 1e-8:
        raise AssertionError("conformal constant has a non-vanishing imaginary part")
    return float(d.real)


def weighted_selector(c, x, z):
    """Coordinatewise w_i^{2z-1} x_i at a strip point."""
    x = as_vector(x)
    if x.size != c.dim:
        raise ValueError("dimension mismatch")
    z = check_strip(z)
    return np.exp((2.0 * z - 1.0) * c.log_w) * x


def weighted_omega(c, level, arg):
    """The explicit linear differentials of the weighted couple.

    om10: x -> 2 log w * x
    om21_0: x -> (2 log^2 w * x, 2 log w * x)
    om2_10: (y, x) -> (2 log w + d) y - (2 log^2 w + 2 d log w) x
    om10_inverse: x -> x / (2 log w), rejecting coordinates with w_i = 1
    """
    if level not in _OMEGA_LEVELS:
        raise ValueError(f"unknown differential level {level!r}")
    lw = c.log_w
    if level == "om2_10":
        y, x = (as_vector(v) for v in arg)
        if y.size != c.dim or x.size != c.dim:
            raise ValueError("dimension mismatch")
        d = _conformal_d()
        return (2.0 * lw + d) * y - (2.0 * lw**2 + 2.0 * d * lw) * x
    x = as_vector(arg)
    if x.size != c.dim:
        raise ValueError("dimension mismatch")
    if level == "om10":
        return 2.0 * lw * x
    if level == "om21_0":
        return 2.0 * lw**2 * x, 2.0 * lw * x
    if np.any(lw == 0.0):
        raise ValueError("inverse differential is singular where w_i = 1")
    return x / (2.0 * lw)


def selector_composition(c, y, x):
    """Closed form of the second Taylor coefficient of the composed selector
    W(y, x)(z) = phi(z)/phi'(1/2) * B(y - om10 x)(z) + B(x)(z):

        om10(y - om10 x) + d * (y - om10 x) + 2 log^2 w * x.
    """
    y = as_vector(y)
    x = as_vector(x)
    if y.size != c.dim or x.size != c.dim:
        raise ValueError("dimension mismatch")
    lw = c.log_w
    v = y - 2.0 * lw * x
    d = _conformal_d()
    return 2.0 * lw * v + d * v + 2.0 * lw**2 * x


def selector_composition_fd(c, y, x, h=1e-3):
    """Independent oracle: numeric second derivative (halved) of the
    assembled analytic function W along the real direction at 1/2."""
    y = as_vector(y)
    x = as_vector(x)
    if y.size != c.dim or x.size != c.dim:
        raise ValueError("dimension mismatch")
    data = conformal_constant("symmetric_strip")
    phi = data.phi_eval
    dphi = data.phi_prime_half
    v = y - weighted_omega(c, "om10", x)

    def W(z):
        scale = phi(z) / dphi
        return scale * weighted_selector(c, v, z) + weighted_selector(c, x, z)

    def second(step):
        val = (W(0.5 + step) - 2.0 * W(0.5) + W(0.5 - step)) / step**2
        return val

    est = (4.0 * second(h / 2.0) - second(h)) / 3.0
    return est.real / 2.0


def membership(c, space, v, bound):
    """Defining norm of a weighted-space membership predicate, compared with
    a bound. At finite dimension membership always holds; the norm value is
    what the ladder experiments track.

    Z2w:      (y, x) -> ||y - 2 log w * x||_2 + ||x||_2
    Circle_w: (y, x) -> || |log w| (y - log w * x) ||_2 + ||x||_2
    Z2w_log:  (y, x) -> || |log w| (y - 2 log w * x) ||_2 + || |log w| x ||_2
    l2_log2w: x -> || log^2 w * x ||_2
    """
    if space not in _SPACES:
        raise ValueError(f"unknown space {space!r}")
    lw = c.log_w
    if space != "Z2w" and np.any(lw == 0.0):
        raise ValueError("log-weighted norms require w_i != 1")
    alw = np.abs(lw)
    if space == "l2_log2w":
        x = as_vector(v)
        if x.size != c.dim:
            raise ValueError("dimension mismatch")
        norm = lp_norm(lw**2 * x, 2)
    else:
        y, x = (as_vector(part) for part in v)
        if y.size != c.dim or x.size != c.dim:
            raise ValueError("dimension mismatch")
        if space == "Z2w":
            norm = lp_norm(y - 2.0 * lw * x, 2) + lp_norm(x, 2)
        elif space == "Circle_w":
            norm = lp_norm(alw * (y - lw * x), 2) + lp_norm(x, 2)
        else:
            norm = lp_norm(alw * (y - 2.0 * lw * x), 2) + lp_norm(alw * x, 2)
    return norm <= bound, norm


def triviality_defect(c, samples, rng=None):
    """Max additivity defect of the weighted differentials over random
    sign-vector pairs; the maps are linear, so the defect is exactly zero.
    This is the computational witness that every sequence here splits (the
    linear map itself serves as the trivializing map).

    Sampling from {-1, 0, 1} keeps every float product exact (multiplying a
    double by 0, +-1 or +-2 never rounds), so linearity is verified with
    defect 0.0 literally, not merely at rounding level.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng)
    worst = 0.0
    for _ in range(samples):
        x1 = rng.integers(-1, 2, c.dim).astype(np.float64)
        x2 = rng.integers(-1, 2, c.dim).astype(np.float64)
        gap10 = (
            weighted_omega(c, "om10", x1 + x2)
            - weighted_omega(c, "om10", x1)
            - weighted_omega(c, "om10", x2)
        )
        worst = max(worst, float(np.max(np.abs(gap10))))
        w12, y12 = weighted_omega(c, "om21_0", x1 + x2)
        w1, y1 = weighted_omega(c, "om21_0", x1)
        w2, y2 = weighted_omega(c, "om21_0", x2)
        worst = max(worst, float(np.max(np.abs(w12 - w1 - w2))))
        worst = max(worst, float(np.max(np.abs(y12 - y1 - y2))))
    return worst


def log_weight_couple(dim):
    """Truncation of the admissible weight w_n = 1/log(n+2)."""
    n = np.arange(1, dim + 1, dtype=np.float64)
    return WeightedCouple(1.0 / np.log(n + 2.0))


def quarter_power_couple(dim):
    """Truncation of the admissible weight w_n = (n+1)^(-1/4); avoids w = 1."""
    n = np.arange(1, dim + 1, dtype=np.float64)
    return WeightedCouple((n + 1.0) ** -0.25)


WEIGHT_FAMILIES = {"log": log_weight_couple, "quarter_power": quarter_power_couple}


def weight_family(name, dim):
    """Build a named weight-family truncation (used by the CLI config)."""
    try:
        return WEIGHT_FAMILIES[name](dim)
    except KeyError:
        raise ValueError(f"unknown weight family {name!r}") from None


def weight_from_json(text):
    """Read a weight sequence from a JSON array of positive numbers."""
    return WeightedCouple(vector_from_json(text, "w"))
