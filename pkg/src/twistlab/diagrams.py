"""The six diagram map families, block-basis operators, the duality-pairing
projection onto the range of the triple block operator, and the finite
identity checks they satisfy.

Diagram elements are raw coordinate data: a single vector, a pair, or a
triple of vectors (tuples of 1-d arrays). The eight maps j, k, l, q, i, s,
r, p are exact coordinate inclusions/projections, so every composition
identity holds with deviation zero.
"""

import json
from dataclasses import dataclass

import numpy as np

from .orlicz import luxemburg_norm, orlicz_g
from .sequences import as_vector
from .twisted import Twisted2, Twisted3, z2_quasinorm, z3_quasinorm

_PERMS = ((2, 1, 0), (0, 1, 2), (1, 2, 0), (1, 0, 2), (2, 0, 1), (0, 2, 1))

# Corner spaces of each diagram: top kernel space (appears twice), the
# middle-left subspace, the bottom-left space, the right quotient (appears
# twice) and the bottom-center twisted space. The center is always Z3.
_CORNERS = {
    (2, 1, 0): {"top": "l2", "middle_left": "Z2", "bottom_left": "l2",
                "right": "l2", "bottom_center": "Z2"},
    (0, 1, 2): {"top": "lg", "middle_left": "circle", "bottom_left": "l2",
                "right": "lg*", "bottom_center": "circle*"},
    (1, 2, 0): {"top": "lf", "middle_left": "Z2", "bottom_left": "lf*",
                "right": "l2", "bottom_center": "wedge*"},
    (1, 0, 2): {"top": "lf", "middle_left": "circle", "bottom_left": "lf",
                "right": "lg*", "bottom_center": "wedge*"},
    (2, 0, 1): {"top": "l2", "middle_left": "wedge", "bottom_left": "lf",
                "right": "lf*", "bottom_center": "Z2"},
    (0, 2, 1): {"top": "lg", "middle_left": "wedge", "bottom_left": "lf*",
                "right": "lf*", "bottom_center": "circle*"},
}

MAP_IDS = ("j", "k", "l", "q", "i", "s", "r", "p")


@dataclass(frozen=True)
class DiagramSpec:
    perm: tuple
    corner_labels: dict

    @property
    def name(self):
        return "".join(str(k) for k in self.perm)

    @property
    def center(self):
        return "Z3"


def all_diagrams():
    """Registry of the six diagrams keyed by permutation name."""
    return {
        "".join(map(str, p)): DiagramSpec(p, dict(_CORNERS[p], center="Z3"))
        for p in _PERMS
    }


def _zeros_like(h):
    return np.zeros_like(as_vector(h))


def diagram_maps(spec, element, map_id):
    """Apply one of the eight coordinate maps of the diagram.

    j: h -> (h, 0)          k: h -> (h, 0, 0)
    l: (g1, g2) -> (g1, g2, 0)   q: (g1, g2) -> g2   i: g -> (g, 0)
    s: (f1, f2, f3) -> f3   r: (f1, f2, f3) -> (f2, f3)   p: (h1, h2) -> h2
    """
    if map_id not in MAP_IDS:
        raise ValueError(f"unknown map id {map_id!r}")
    if map_id in ("j", "k", "i"):
        h = as_vector(element, "element")
        if map_id == "j" or map_id == "i":
            return (h.copy(), _zeros_like(h))
        return (h.copy(), _zeros_like(h), _zeros_like(h))
    if map_id in ("q", "p", "l"):
        if not (isinstance(element, tuple) and len(element) == 2):
            raise ValueError(f"map {map_id!r} expects a pair")
        g1, g2 = (as_vector(g, "element") for g in element)
        if map_id == "l":
            return (g1.copy(), g2.copy(), _zeros_like(g1))
        return g2.copy()
    if not (isinstance(element, tuple) and len(element) == 3):
        raise ValueError(f"map {map_id!r} expects a triple")
    f1, f2, f3 = (as_vector(f, "element") for f in element)
    if map_id == "s":
        return f3.copy()
    return (f2.copy(), f3.copy())


def _max_abs(parts):
    if isinstance(parts, tuple):
        return max(float(np.max(np.abs(p))) for p in parts)
    return float(np.max(np.abs(parts)))


def _tuple_diff(a, b):
    if isinstance(a, tuple):
        return tuple(ai - bi for ai, bi in zip(a, b))
    return a - b


def check_diagram_identities(spec, samples, dim=8, rng=None):
    """Verify every composable identity of the diagram on random elements.

    Checked: l(j h) = k h, q(j h) = 0, r(k h) = 0, s(k h) = 0, s(l g) = 0,
    r(l g) = i(q g), p(i g) = 0, p(r f) = s f. Returns a report with the
    maximum deviation per identity (all are exact coordinate operations).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng)
    names = ("l∘j=k", "q∘j=0", "r∘k=0", "s∘k=0", "s∘l=0", "r∘l=i∘q", "p∘i=0", "p∘r=s")
    worst = dict.fromkeys(names, 0.0)
    m = diagram_maps
    for _ in range(samples):
        h = rng.standard_normal(dim)
        g = (rng.standard_normal(dim), rng.standard_normal(dim))
        f = tuple(rng.standard_normal(dim) for _ in range(3))
        checks = {
            "l∘j=k": _tuple_diff(m(spec, m(spec, h, "j"), "l"), m(spec, h, "k")),
            "q∘j=0": m(spec, m(spec, h, "j"), "q"),
            "r∘k=0": m(spec, m(spec, h, "k"), "r"),
            "s∘k=0": m(spec, m(spec, h, "k"), "s"),
            "s∘l=0": m(spec, m(spec, g, "l"), "s"),
            "r∘l=i∘q": _tuple_diff(
                m(spec, m(spec, g, "l"), "r"), m(spec, m(spec, g, "q"), "i")
            ),
            "p∘i=0": m(spec, m(spec, g[1], "i"), "p"),
            "p∘r=s": m(spec, m(spec, f, "r"), "p") - m(spec, f, "s"),
        }
        for name, dev in checks.items():
            worst[name] = max(worst[name], _max_abs(dev))
    return {
        "diagram": spec.name,
        "checks": [{"name": n, "max_deviation": worst[n]} for n in names],
        "ratios": [],
        "max_deviation": max(worst.values()),
    }


def report_to_json(rep):
    """Serialize a diagram report: {diagram, checks: [{name, max_deviation}],
    ratios: [{dim, value}]}."""
    return json.dumps(
        {
            "diagram": rep["diagram"],
            "checks": rep["checks"],
            "ratios": rep.get("ratios", []),
        },
        sort_keys=True,
    )


class BlockBasis:
    """Normalized, disjointly supported blocks in a common ambient space.

    Stored as an (m, ambient_dim) array whose rows are the blocks; supports
    must be pairwise disjoint and each row must have unit l2 norm within
    1e-12.
    """

    def __init__(self, rows):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise ValueError("expected a nonempty 2-d array of block rows")
        if not np.all(np.isfinite(rows)):
            raise ValueError("blocks contain non-finite entries")
        support = rows != 0.0
        if np.any(support.sum(axis=0) > 1):
            raise ValueError("block supports are not pairwise disjoint")
        norms = np.linalg.norm(rows, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise ValueError("blocks must be l2-normalized within 1e-12")
        self.rows = rows

    @property
    def count(self):
        return self.rows.shape[0]

    @property
    def ambient_dim(self):
        return self.rows.shape[1]

    @classmethod
    def standard(cls, m):
        """u_n = e_n."""
        return cls(np.eye(m))

    @classmethod
    def paired(cls, m):
        """u_n = (e_{2n-1} + e_{2n}) / sqrt(2)."""
        rows = np.zeros((m, 2 * m))
        for n in range(m):
            rows[n, 2 * n : 2 * n + 2] = 1.0 / np.sqrt(2.0)
        return cls(rows)

    @classmethod
    def irrational(cls, m):
        """u_n = (sqrt(2) e_{2n-1} + sqrt(3) e_{2n}) / sqrt(5)."""
        rows = np.zeros((m, 2 * m))
        for n in range(m):
            rows[n, 2 * n] = np.sqrt(2.0 / 5.0)
            rows[n, 2 * n + 1] = np.sqrt(3.0 / 5.0)
        return cls(rows)


def block_log(u):
    """log|u_i| on the support of a block, 0 off the support."""
    u = np.asarray(u, dtype=np.float64)
    pos = np.abs(u) > 0.0
    return np.where(pos, np.log(np.where(pos, np.abs(u), 1.0)), 0.0)


def tau_block(U, x):
    """The block substitution operator: e_n -> u_n, extended linearly."""
    x = as_vector(x)
    if x.size > U.count:
        raise ValueError("too few blocks for the given coefficients")
    return x @ U.rows[: x.size]


def block_operator_S(U, v):
    """S_U(y, x) with generators S_U(e_n, 0) = (u_n, 0) and
    S_U(0, e_n) = (2 u_n log u_n, u_n)."""
    if not isinstance(v, Twisted2):
        raise TypeError("expected a Twisted2")
    if v.dim > U.count:
        raise ValueError("too few blocks for the given element")
    rows = U.rows[: v.dim]
    ulog = 2.0 * rows * block_log(rows)
    return Twisted2(v.y @ rows + v.x @ ulog, v.x @ rows)


def block_operator_R(U, v):
    """R_U(w, y, x) with generators R_U(e_n,0,0) = (u_n,0,0),
    R_U(0,e_n,0) = (2 u_n log u_n, u_n, 0) and
    R_U(0,0,e_n) = (2 u_n log^2 u_n, 2 u_n log u_n, u_n)."""
    if not isinstance(v, Twisted3):
        raise TypeError("expected a Twisted3")
    if v.dim > U.count:
        raise ValueError("too few blocks for the given element")
    rows = U.rows[: v.dim]
    lg = block_log(rows)
    ulog = 2.0 * rows * lg
    ulog2 = 2.0 * rows * lg * lg
    return Twisted3(
        v.w @ rows + v.y @ ulog + v.x @ ulog2,
        v.y @ rows + v.x @ ulog,
        v.x @ rows,
    )


def block_matrix_R(U, m=None):
    """Dense matrix of R_U from stacked (w, y, x) block coefficients in
    R^{3m} to stacked ambient coordinates in R^{3N}."""
    m = U.count if m is None else m
    if m > U.count:
        raise ValueError("too few blocks")
    rows = U.rows[:m]
    N = U.ambient_dim
    lg = block_log(rows)
    u = rows.T
    ul = (2.0 * rows * lg).T
    ul2 = (2.0 * rows * lg * lg).T
    A = np.zeros((3 * N, 3 * m))
    A[0:N, 0:m] = u
    A[0:N, m : 2 * m] = ul
    A[0:N, 2 * m :] = ul2
    A[N : 2 * N, m : 2 * m] = u
    A[N : 2 * N, 2 * m :] = ul
    A[2 * N :, 2 * m :] = u
    return A


def u3_matrix(n):
    """Matrix of the triple duality pairing on stacked (w, y, x) coordinates."""
    D = np.zeros((3 * n, 3 * n))
    eye = np.eye(n)
    D[0:n, 2 * n :] = eye
    D[n : 2 * n, n : 2 * n] = -eye
    D[2 * n :, 0:n] = eye
    return D


def pairing_identity_check(U, max_index):
    """Max deviation of <R'_U(generator i,j,k), R'_U(generator l,m,n)> from
    delta_in - delta_jm + delta_kl over all generator pairs with indices
    below max_index."""
    m = min(max_index, U.count)
    A = block_matrix_R(U, m)
    D = u3_matrix(U.ambient_dim)
    gram = A.T @ D @ A
    expected = u3_matrix(m)
    return float(np.max(np.abs(gram - expected)))


def commutativity_check_12_13(U, samples, rng=None):
    """Commutativity of the block-operator squares.

    Pair level: S_U(y, 0) = (tau_U y, 0) and the base slot of S_U(y, x) is
    tau_U x. Triple level: R_U on (w, y, 0) agrees with (S_U(w, y), 0) and
    the value slot of R_U(w, y, x) is tau_U x. Reports the max deviation.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng)
    m = U.count
    worst = 0.0
    for _ in range(samples):
        y, x, w = (rng.standard_normal(m) for _ in range(3))
        sv = block_operator_S(U, Twisted2(y, x))
        worst = max(worst, float(np.max(np.abs(sv.x - tau_block(U, x)))))
        emb = block_operator_S(U, Twisted2(y, np.zeros(m)))
        worst = max(worst, float(np.max(np.abs(emb.y - tau_block(U, y)))))
        worst = max(worst, float(np.max(np.abs(emb.x))))
        rv = block_operator_R(U, Twisted3(w, y, x))
        worst = max(worst, float(np.max(np.abs(rv.x - tau_block(U, x)))))
        corner = block_operator_R(U, Twisted3(w, y, np.zeros(m)))
        s_corner = block_operator_S(U, Twisted2(w, y))
        worst = max(worst, float(np.max(np.abs(corner.w - s_corner.y))))
        worst = max(worst, float(np.max(np.abs(corner.y - s_corner.x))))
        worst = max(worst, float(np.max(np.abs(corner.x))))
    return {"checks": [{"name": "diagrams_12_13", "max_deviation": worst}],
            "max_deviation": worst}


def projection_onto_RU(U, v, trunc_dim):
    """Apply the projection onto the range of R_U assembled from the pairing
    matrix D, the block Gram form D_U and the transpose of R'_U.

    The element and the matrices are truncated to the first trunc_dim
    ambient coordinates; a near-singular D_U (blocks cut by the truncation)
    raises ValueError.
    """
    if not isinstance(v, Twisted3):
        raise TypeError("expected a Twisted3")
    if trunc_dim > U.ambient_dim:
        raise ValueError("trunc_dim exceeds the ambient dimension")
    if v.dim != trunc_dim:
        raise ValueError("element dimension must equal trunc_dim")
    m = U.count
    A = block_matrix_R(U)
    N = U.ambient_dim
    keep = np.concatenate([np.arange(trunc_dim), N + np.arange(trunc_dim),
                           2 * N + np.arange(trunc_dim)])
    A = A[keep]
    D = u3_matrix(trunc_dim)
    DU = A.T @ D @ A
    if np.linalg.cond(DU) > 1e12:
        raise ValueError("D_U is singular at this truncation; blocks too degenerate")
    stacked = np.concatenate([v.w, v.y, v.x])
    coeffs = np.linalg.solve(DU, A.T @ (D @ stacked))
    out = A @ coeffs
    t = trunc_dim
    return Twisted3(out[:t], out[t : 2 * t], out[2 * t :])


_ORLICZ_G = orlicz_g()


def seqinZ3_identity(U, x):
    """Both sides of the block-coefficient identity

        x Omega_pair u - Omega_pair(x u)
            = (-2xu (log^2 x + 2 log x log u), -2xu log x)

    for positive blocks and positive coefficients, with x normalized so that
    ||xu||_2 = 1. Returns the max coordinate residual of the two components
    and the ratio of the triple quasi-norm of (x Omega u, xu) to the Orlicz
    norm of the coefficient sequence under the fourth-power gauge.
    """
    x = as_vector(x)
    if np.any(x <= 0.0):
        raise ValueError("coefficients must be strictly positive")
    if np.any(U.rows < 0.0):
        raise ValueError("blocks must be nonnegative")
    if x.size > U.count:
        raise ValueError("too few blocks")
    rows = U.rows[: x.size]
    x = x / np.linalg.norm(x)  # blocks are orthonormal, so ||xu||_2 = ||x||_2
    xu = x @ rows
    lg = block_log(rows)
    w_lhs = x @ (2.0 * rows * lg * lg)
    y_lhs = x @ (2.0 * rows * lg)
    lxu = block_log(xu)
    w_pair = w_lhs - 2.0 * xu * (lxu * lxu)
    y_pair = y_lhs - 2.0 * xu * lxu
    log_x = np.zeros(xu.size)
    support = rows != 0.0
    for n in range(x.size):
        log_x[support[n]] = np.log(x[n])
    logu = lg.sum(axis=0)
    w_rhs = -2.0 * xu * (log_x * log_x + 2.0 * log_x * logu)
    y_rhs = -2.0 * xu * log_x
    residual = max(
        float(np.max(np.abs(w_pair - w_rhs))), float(np.max(np.abs(y_pair - y_rhs)))
    )
    z3 = z3_quasinorm(Twisted3(w_lhs, y_lhs, xu))
    ratio = z3 / luxemburg_norm(_ORLICZ_G, x)
    return {"residual": residual, "z3_norm": z3, "lg_ratio": ratio}


def generator_isometry_deviation(U):
    """Max deviation of the quasi-norms of S_U and R_U generator images from
    1; every generator has quasi-norm 1 and its image cancels exactly against
    the differential of the block, so the operators are isometric there."""
    worst = 0.0
    m = U.count
    for n in range(m):
        e = np.zeros(m)
        e[n] = 1.0
        z = np.zeros(m)
        for v in (Twisted2(e, z), Twisted2(z, e)):
            worst = max(worst, abs(z2_quasinorm(block_operator_S(U, v)) - 1.0))
        for v in (Twisted3(e, z, z), Twisted3(z, e, z), Twisted3(z, z, e)):
            worst = max(worst, abs(z3_quasinorm(block_operator_R(U, v)) - 1.0))
    return worst
