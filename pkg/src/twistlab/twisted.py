"""Quasi-norms on the second and third twisted sequence spaces, the
distinguished subspaces and Orlicz corners, domain norms of the
differentials, and the duality pairings.

Coordinate convention for triples: (w, y, x) = (second-derivative slot,
first-derivative slot, value slot). The pair differential on the value slot
is Omega_pair(x) = (2x log^2(|x|/||x||_2), 2x log(|x|/||x||_2)), and all
differentials send 0 to 0.
"""

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .calderon import selector_derivative
from .orlicz import dual_norm, orlicz_f
from .sequences import as_vector, lp_norm


@dataclass(frozen=True)
class Twisted2:
    """Pair (y, x): derivative slot and base slot, same dimension."""

    y: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "y", as_vector(self.y, "y"))
        object.__setattr__(self, "x", as_vector(self.x, "x"))
        if self.y.size != self.x.size:
            raise ValueError("slots of a twisted pair must share a dimension")

    @property
    def dim(self):
        return self.x.size

    def to_json(self):
        return json.dumps({"y": list(map(float, self.y)), "x": list(map(float, self.x))},
                          sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(np.asarray(data["y"], float), np.asarray(data["x"], float))


@dataclass(frozen=True)
class Twisted3:
    """Triple (w, y, x): second-derivative, first-derivative and value slots."""

    w: np.ndarray
    y: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", as_vector(self.w, "w"))
        object.__setattr__(self, "y", as_vector(self.y, "y"))
        object.__setattr__(self, "x", as_vector(self.x, "x"))
        if not self.w.size == self.y.size == self.x.size:
            raise ValueError("slots of a twisted triple must share a dimension")

    @property
    def dim(self):
        return self.x.size

    def to_json(self):
        return json.dumps(
            {"w": list(map(float, self.w)), "y": list(map(float, self.y)),
             "x": list(map(float, self.x))},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(np.asarray(data["w"], float), np.asarray(data["y"], float),
                   np.asarray(data["x"], float))


class SubspaceTag(Enum):
    """Zero-slot patterns of the distinguished subspaces of the triple space."""

    Z3 = "z3"
    Z2_CORNER = "z2_corner"  # (w, y, 0)
    WEDGE = "wedge"          # (w, 0, x)
    CIRCLE = "circle"        # (0, y, x)
    L2 = "l2"                # (w, 0, 0)
    LF = "lf"                # (0, y, 0)
    LG = "lg"                # (0, 0, x)


_ZERO_SLOTS = {
    SubspaceTag.Z3: (),
    SubspaceTag.Z2_CORNER: ("x",),
    SubspaceTag.WEDGE: ("y",),
    SubspaceTag.CIRCLE: ("w",),
    SubspaceTag.L2: ("y", "x"),
    SubspaceTag.LF: ("w", "x"),
    SubspaceTag.LG: ("w", "y"),
}

_ORLICZ_F = orlicz_f()


def omega_kp(x):
    """The Kalton-Peck differential 2x log(|x|/||x||_2), with 0 -> 0."""
    x = as_vector(x)
    if not np.any(x):
        return np.zeros_like(x)
    return selector_derivative(x, 1)


def omega_square_log(x):
    """The order-2 differential 2x log^2(|x|/||x||_2), with 0 -> 0."""
    x = as_vector(x)
    if not np.any(x):
        return np.zeros_like(x)
    return selector_derivative(x, 2)


def omega_pair(x):
    """The pair differential (2x log^2(...), 2x log(...)), with 0 -> (0, 0)."""
    return omega_square_log(x), omega_kp(x)


def z2_quasinorm(v):
    """||y - Omega_kp x||_2 + ||x||_2."""
    if not isinstance(v, Twisted2):
        raise TypeError("expected a Twisted2")
    return lp_norm(v.y - omega_kp(v.x), 2) + lp_norm(v.x, 2)


def z3_quasinorm(v):
    """||(w, y) - Omega_pair x||_{Z2} + ||x||_2."""
    if not isinstance(v, Twisted3):
        raise TypeError("expected a Twisted3")
    dw, dy = omega_pair(v.x)
    return z2_quasinorm(Twisted2(v.w - dw, v.y - dy)) + lp_norm(v.x, 2)


def subspace_norm(v, tag):
    """Restriction of the triple quasi-norm to a tagged subspace; the
    forbidden slots of the tag must vanish."""
    if not isinstance(v, Twisted3):
        raise TypeError("expected a Twisted3")
    for slot in _ZERO_SLOTS[SubspaceTag(tag)]:
        if np.any(getattr(v, slot)):
            raise ValueError(f"slot {slot!r} must be zero for tag {tag}")
    return z3_quasinorm(v)


def domain_norm(omega_id, x):
    """||Omega x||_target + ||x||_2 for the identified differential.

    Targets: l2 for "om10"; the dual Orlicz norm of f for "om20" (the order-2
    differential lands in the dual of l_f); the pair quasi-norm for "om21_0".
    """
    x = as_vector(x)
    if omega_id == "om10":
        return lp_norm(omega_kp(x), 2) + lp_norm(x, 2)
    if omega_id == "om20":
        img = omega_square_log(x)
        target = dual_norm(_ORLICZ_F, img) if np.any(img) else 0.0
        return target + lp_norm(x, 2)
    if omega_id == "om21_0":
        dw, dy = omega_pair(x)
        return z2_quasinorm(Twisted2(dw, dy)) + lp_norm(x, 2) if np.any(x) else 0.0
    raise ValueError(f"unknown differential id {omega_id!r}")


def u2_pairing(a, b):
    """<U2 a, b> = -<x_a, y_b> + <y_a, x_b>; antisymmetric."""
    if not (isinstance(a, Twisted2) and isinstance(b, Twisted2)):
        raise TypeError("expected Twisted2 operands")
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return float(-np.dot(a.x, b.y) + np.dot(a.y, b.x))


def u3_pairing(a, b):
    """<U3 a, b> = <x_a, w_b> - <y_a, y_b> + <w_a, x_b>; symmetric."""
    if not (isinstance(a, Twisted3) and isinstance(b, Twisted3)):
        raise TypeError("expected Twisted3 operands")
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    return float(np.dot(a.x, b.w) - np.dot(a.y, b.y) + np.dot(a.w, b.x))


def quasilinearity_defect(omega_id, x1, x2):
    """||Omega(x1+x2) - Omega x1 - Omega x2||_target / (||x1||_2 + ||x2||_2)."""
    x1 = as_vector(x1)
    x2 = as_vector(x2)
    denom = lp_norm(x1, 2) + lp_norm(x2, 2)
    if denom == 0.0:
        return 0.0
    if omega_id == "om10":
        gap = omega_kp(x1 + x2) - omega_kp(x1) - omega_kp(x2)
        return lp_norm(gap, 2) / denom
    if omega_id == "om21_0":
        w12, y12 = omega_pair(x1 + x2)
        w1, y1 = omega_pair(x1)
        w2, y2 = omega_pair(x2)
        gap = Twisted2(w12 - w1 - w2, y12 - y1 - y2)
        return z2_quasinorm(gap) / denom
    raise ValueError(f"unknown differential id {omega_id!r}")
