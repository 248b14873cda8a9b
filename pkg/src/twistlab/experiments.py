"""Named verification suites over dimension ladders.

Each suite draws its randomness from a generator seeded by
(seed, suite code, dim), so a suite is reproducible independently of which
dims are requested, and a rerun with the same config yields the same report
bytes. Checks carry a default threshold that can be overridden through
ExperimentConfig.tolerances.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from . import calderon, diagrams, weighted
from .orlicz import (
    conjugate_eval,
    criterion_search,
    dual_norm,
    luxemburg_norm,
    orlicz_eval,
    orlicz_f,
    orlicz_g,
    orlicz_square,
)
from .report import CheckRecord, Report
from .sequences import lp_norm
from .twisted import (
    SubspaceTag,
    Twisted2,
    Twisted3,
    domain_norm,
    omega_kp,
    quasilinearity_defect,
    subspace_norm,
    u2_pairing,
    u3_pairing,
    z3_quasinorm,
)

_SUITE_CODES = {
    "selector": 1,
    "quasilinearity": 2,
    "diagrams": 3,
    "hidden_symmetry": 4,
    "block_identity": 5,
    "duality": 6,
    "orlicz_criterion": 7,
    "weighted": 8,
    "nontriviality": 9,
}

DEFAULT_DIMS = {
    "selector": (8, 16, 32, 64),
    "quasilinearity": (64, 256, 1024),
    "diagrams": (8,),
    "hidden_symmetry": (16, 64, 256, 1024, 4096),
    "block_identity": (16, 64, 256, 1024),
    "duality": (16, 64),
    "orlicz_criterion": (16,),
    "weighted": (16, 64, 256),
    "nontriviality": (16, 32, 64, 128, 256, 512, 1024),
}

DEFAULT_SAMPLES = {
    "selector": 250,
    "quasilinearity": 2000,
    "diagrams": 100,
    "hidden_symmetry": 1,
    "block_identity": 100,
    "duality": 500,
    "orlicz_criterion": 1,
    "weighted": 100,
    "nontriviality": 2000,
}


@dataclass(frozen=True)
class ExperimentConfig:
    suite: str
    dims: tuple = ()
    samples: int = 0
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)  # family name + parameters

    def __post_init__(self):
        if self.suite not in _SUITE_CODES:
            raise ValueError(f"unknown suite {self.suite!r}")
        dims = tuple(int(d) for d in self.dims) or DEFAULT_DIMS[self.suite]
        if any(b <= a for a, b in zip(dims, dims[1:])):
            raise ValueError("dims must be strictly increasing")
        if any(d < 1 for d in dims):
            raise ValueError("dims must be positive")
        object.__setattr__(self, "dims", dims)
        samples = int(self.samples) or DEFAULT_SAMPLES[self.suite]
        if samples < 1:
            raise ValueError("samples must be >= 1")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "tolerances", dict(self.tolerances))
        object.__setattr__(self, "params", dict(self.params))

    def as_dict(self):
        return {
            "suite": self.suite,
            "dims": list(self.dims),
            "samples": self.samples,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "params": self.params,
        }


def _rng(cfg, *key):
    return np.random.default_rng(
        np.random.SeedSequence([cfg.seed, _SUITE_CODES[cfg.suite], *key])
    )


def _tol(cfg, name, default):
    return float(cfg.tolerances.get(name, default))


class _Recorder:
    """Collects timed checks into a report."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.report = Report(suite=cfg.suite, seed=cfg.seed, config=cfg.as_dict())
        self._t0 = time.perf_counter()

    def _elapsed_ms(self):
        now = time.perf_counter()
        ms = (now - self._t0) * 1000.0
        self._t0 = now
        return ms

    def below(self, name, value, default_tol):
        tol = _tol(self.cfg, name, default_tol)
        self.report.add(CheckRecord(name, float(value), tol, float(value) <= tol,
                                    self._elapsed_ms()))

    def above(self, name, value, default_floor):
        floor = _tol(self.cfg, name, default_floor)
        self.report.add(CheckRecord(name, float(value), floor, float(value) >= floor,
                                    self._elapsed_ms()))

    def flag(self, name, ok, value=None):
        self.report.add(CheckRecord(name, float(1.0 if ok else 0.0) if value is None
                                    else float(value), None, bool(ok),
                                    self._elapsed_ms()))


def _random_unit_free(rng, dim):
    """Random vector with no zero coordinates (Gaussian)."""
    x = rng.standard_normal(dim)
    x[x == 0.0] = 1.0
    return x


def run_selector(cfg):
    rec = _Recorder(cfg)
    t_grid = np.linspace(-5.0, 5.0, 100)
    worst_boundary = 0.0
    worst_base = 0.0
    worst_d1 = 0.0
    worst_d2 = 0.0
    worst_formula = 0.0
    for dim in cfg.dims:
        rng = _rng(cfg, dim)
        for _ in range(cfg.samples):
            x = _random_unit_free(rng, dim)
            norm = lp_norm(x, 2)
            for t in t_grid[:: max(1, len(t_grid) // 25)]:
                linf, l1 = calderon.boundary_norms(x, t)
                worst_boundary = max(worst_boundary, abs(max(linf, l1) - norm) / norm)
            base = calderon.extremal_selector(x, 0.5)
            worst_base = max(worst_base, float(np.max(np.abs(base - x))) / norm)
            d1 = calderon.selector_derivative(x, 1)
            f1 = calderon.numeric_derivative(x, 1, 1e-4)
            worst_d1 = max(worst_d1, float(np.linalg.norm(d1 - f1) / np.linalg.norm(d1)))
            d2 = calderon.selector_derivative(x, 2)
            f2 = calderon.numeric_derivative(x, 2, 1e-3)
            worst_d2 = max(
                worst_d2, float(np.linalg.norm(2.0 * d2 - f2) / np.linalg.norm(2.0 * d2))
            )
            direct = 2.0 * (x * np.log(np.abs(x) / norm))
            worst_formula = max(
                worst_formula,
                float(np.max(np.abs(d1 - direct)) / np.max(np.abs(direct))),
            )
        rec.report.add_curve(dim, "boundary_max_rel_dev", worst_boundary)
    rec.below("boundary_optimality", worst_boundary, 1e-9)
    rec.below("base_point_identity", worst_base, 1e-12)
    rec.below("derivative_order1", worst_d1, 1e-6)
    rec.below("derivative_order2", worst_d2, 1e-4)
    # machine-precision equality: the backends' libm may differ by one ulp
    rec.below("omega_formula_exact", worst_formula, 5e-15)
    return rec.report


def _defect_ladder(cfg, omega_id):
    values = []
    for dim in cfg.dims:
        rng = _rng(cfg, dim, 0 if omega_id == "om10" else 1)
        worst = 0.0
        for _ in range(cfg.samples):
            x1 = rng.standard_normal(dim)
            x2 = rng.standard_normal(dim)
            worst = max(worst, quasilinearity_defect(omega_id, x1, x2))
        values.append(worst)
    return values


def run_quasilinearity(cfg):
    rec = _Recorder(cfg)
    c10 = _defect_ladder(cfg, "om10")
    c21 = _defect_ladder(cfg, "om21_0")
    for dim, a, b in zip(cfg.dims, c10, c21):
        rec.report.add_curve(dim, "defect_om10", a)
        rec.report.add_curve(dim, "defect_om21_0", b)
    rec.flag("defect_constants_finite", all(np.isfinite(c10 + c21)),
             value=max(c10 + c21))
    rec.below("defect_om10_variation", abs(c10[-1] - c10[0]) / c10[0], 0.20)
    rec.below("defect_om21_variation", abs(c21[-1] - c21[0]) / c21[0], 0.20)
    f = orlicz_f()
    bounded = []
    for dim in cfg.dims:
        rng = _rng(cfg, dim, 2)
        worst = 0.0
        for _ in range(min(cfg.samples, 40)):
            x = _random_unit_free(rng, dim)
            img = omega_kp(x)
            worst = max(worst, dual_norm(f, img) / lp_norm(x, 2))
        bounded.append(worst)
        rec.report.add_curve(dim, "range_bound", worst)
    # stability means no blow-up along the ladder, not equality of estimates
    rec.below("range_bound_growth", max(bounded) / bounded[0], 1.5)
    return rec.report


def run_diagrams(cfg):
    rec = _Recorder(cfg)
    dim = cfg.dims[0]
    for name, spec in sorted(diagrams.all_diagrams().items()):
        rng = _rng(cfg, int(name))
        rep = diagrams.check_diagram_identities(spec, cfg.samples, dim=dim, rng=rng)
        rec.below(f"identities_{name}", rep["max_deviation"], 0.0)
    return rec.report


_ALPHAS = (0.6, 0.75, 1.0)


def run_hidden_symmetry(cfg):
    rec = _Recorder(cfg)
    f = orlicz_f()
    g = orlicz_g()
    bands = {"om20_f": [], "corner_f": [], "corner_g": []}
    for alpha in _ALPHAS:
        tag = f"a{alpha:g}"
        for dim in cfg.dims:
            x = np.arange(1, dim + 1, dtype=np.float64) ** -alpha
            zero = np.zeros(dim)
            lf = luxemburg_norm(f, x)
            lg = luxemburg_norm(g, x)
            r1 = domain_norm("om20", x) / lf
            r2 = subspace_norm(Twisted3(zero, x, zero), SubspaceTag.LF) / lf
            r3 = subspace_norm(Twisted3(zero, zero, x), SubspaceTag.LG) / lg
            bands["om20_f"].append(r1)
            bands["corner_f"].append(r2)
            bands["corner_g"].append(r3)
            rec.report.add_curve(dim, f"om20_f_{tag}", r1)
            rec.report.add_curve(dim, f"corner_f_{tag}", r2)
            rec.report.add_curve(dim, f"corner_g_{tag}", r3)
    for key, ratios in bands.items():
        c = max(max(r, 1.0 / r) for r in ratios)
        rec.below(f"band_{key}", c, 50.0)
    return rec.report


def _families(m):
    return (
        ("standard", diagrams.BlockBasis.standard(m)),
        ("paired", diagrams.BlockBasis.paired(m)),
        ("irrational", diagrams.BlockBasis.irrational(m)),
    )


def run_block_identity(cfg):
    rec = _Recorder(cfg)
    worst_pairing = 0.0
    worst_commute = 0.0
    worst_idem = 0.0
    worst_fix = 0.0
    worst_iso = 0.0
    for idx, (name, U) in enumerate(_families(12)):
        rng = _rng(cfg, idx)
        worst_pairing = max(worst_pairing, diagrams.pairing_identity_check(U, 12))
        worst_commute = max(
            worst_commute,
            diagrams.commutativity_check_12_13(U, cfg.samples, rng=rng)["max_deviation"],
        )
        worst_iso = max(worst_iso, diagrams.generator_isometry_deviation(U))
        N = U.ambient_dim
        v = Twisted3(*rng.standard_normal((3, N)))
        pv = diagrams.projection_onto_RU(U, v, N)
        ppv = diagrams.projection_onto_RU(U, pv, N)
        worst_idem = max(
            worst_idem,
            max(
                float(np.max(np.abs(ppv.w - pv.w))),
                float(np.max(np.abs(ppv.y - pv.y))),
                float(np.max(np.abs(ppv.x - pv.x))),
            ),
        )
        coeff = Twisted3(*rng.standard_normal((3, U.count)))
        rw = diagrams.block_operator_R(U, coeff)
        prw = diagrams.projection_onto_RU(U, rw, N)
        worst_fix = max(
            worst_fix,
            max(
                float(np.max(np.abs(prw.w - rw.w))),
                float(np.max(np.abs(prw.y - rw.y))),
                float(np.max(np.abs(prw.x - rw.x))),
            ),
        )
    rec.below("pairing_identity", worst_pairing, 1e-12)
    rec.below("commute_12_13", worst_commute, 1e-10)
    rec.below("projection_idempotent", worst_idem, 1e-8)
    rec.below("projection_fixes_range", worst_fix, 1e-8)
    rec.below("generator_isometry", worst_iso, 1e-8)
    worst_resid = 0.0
    ratios = []
    for dim in cfg.dims:
        U = diagrams.BlockBasis.paired(dim)
        x = np.arange(1, dim + 1, dtype=np.float64) ** -0.75
        rep = diagrams.seqinZ3_identity(U, x)
        worst_resid = max(worst_resid, rep["residual"])
        ratios.append(rep["lg_ratio"])
        rec.report.add_curve(dim, "seqinz3_lg_ratio", rep["lg_ratio"])
    rec.below("seqinz3_residual", worst_resid, 1e-10)
    rec.below("seqinz3_ratio_band", max(ratios) / min(ratios), 4.0)
    return rec.report


def run_duality(cfg):
    rec = _Recorder(cfg)
    f = orlicz_f()
    worst_u2 = 0.0
    worst_u3 = 0.0
    worst_fy = 0.0
    worst_holder = 0.0
    u3_bound = []
    for dim in cfg.dims:
        rng = _rng(cfg, dim)
        worst_dim = 0.0
        for _ in range(cfg.samples):
            a2 = Twisted2(rng.standard_normal(dim), rng.standard_normal(dim))
            b2 = Twisted2(rng.standard_normal(dim), rng.standard_normal(dim))
            worst_u2 = max(worst_u2, abs(u2_pairing(a2, a2)))
            worst_u2 = max(worst_u2, abs(u2_pairing(a2, b2) + u2_pairing(b2, a2)))
            a3 = Twisted3(*rng.standard_normal((3, dim)))
            b3 = Twisted3(*rng.standard_normal((3, dim)))
            worst_u3 = max(worst_u3, abs(u3_pairing(a3, b3) - u3_pairing(b3, a3)))
            worst_dim = max(
                worst_dim,
                abs(u3_pairing(a3, b3)) / (z3_quasinorm(a3) * z3_quasinorm(b3)),
            )
        u3_bound.append(worst_dim)
        rec.report.add_curve(dim, "u3_bound", worst_dim)
        s = 3.0 * rng.random(cfg.samples)
        t = 3.0 * rng.random(cfg.samples)
        mt = orlicz_eval(f, t)
        ms = conjugate_eval(f, s)
        worst_fy = max(
            worst_fy, float(np.max((s * t - mt - ms) / (1.0 + mt + ms)))
        )
        for _ in range(min(cfg.samples, 40)):
            x = _random_unit_free(rng, dim)
            y = _random_unit_free(rng, dim)
            gap = abs(float(np.dot(x, y))) / (luxemburg_norm(f, x) * dual_norm(f, y))
            worst_holder = max(worst_holder, gap)
    rec.below("u2_antisymmetry", worst_u2, 1e-12)
    rec.below("u3_symmetry", worst_u3, 1e-12)
    rec.below("fenchel_young", worst_fy, 1e-10)
    rec.below("holder_gap", worst_holder, 2.0)
    # the estimated constant must not grow with dimension
    rec.below("u3_bound_growth", max(u3_bound) / u3_bound[0], 1.5)
    return rec.report


def run_orlicz_criterion(cfg):
    rec = _Recorder(cfg)
    f = orlicz_f()
    g = orlicz_g()
    sq = orlicz_square()
    for mname, m_fun, n_fun in (("f_to_square", f, sq), ("g_to_f", g, f)):
        for b in (2.0, 4.0, 8.0):
            witness = criterion_search(m_fun, n_fun, b)
            ok = witness is not None and witness.margin >= 0.0
            rec.flag(f"{mname}_B{b:g}", ok, value=witness.margin if witness else -1.0)
    rec.flag("square_square_B2_fails", criterion_search(sq, sq, 2.0) is None)
    return rec.report


def run_weighted(cfg):
    rec = _Recorder(cfg)
    family = cfg.params.get("weight_family", "log")
    alpha = float(cfg.params.get("alpha", 0.6))
    worst_defect = 0.0
    worst_inverse = 0.0
    worst_comp = 0.0
    worst_graph = 0.0
    z2w_norms = []
    l2_norms = []
    for dim in cfg.dims:
        rng = _rng(cfg, dim)
        couple = weighted.weight_family(family, dim)
        worst_defect = max(worst_defect, weighted.triviality_defect(couple, cfg.samples, rng=rng))
        x = _random_unit_free(rng, dim)
        back = weighted.weighted_omega(
            couple, "om10_inverse", weighted.weighted_omega(couple, "om10", x)
        )
        worst_inverse = max(
            worst_inverse, float(np.max(np.abs(back - x)) / np.max(np.abs(x)))
        )
        for _ in range(min(cfg.samples, 25)):
            y = rng.standard_normal(dim)
            x = rng.standard_normal(dim)
            closed = weighted.selector_composition(couple, y, x)
            fd = weighted.selector_composition_fd(couple, y, x)
            scale = float(np.max(np.abs(closed)))
            worst_comp = max(worst_comp, float(np.max(np.abs(closed - fd))) / scale)
        xpos = np.arange(1, dim + 1, dtype=np.float64) ** -alpha
        _, graph_norm = weighted.membership(
            couple, "Z2w", (2.0 * couple.log_w * xpos, xpos), np.inf
        )
        worst_graph = max(worst_graph, abs(graph_norm - lp_norm(xpos, 2)) / lp_norm(xpos, 2))
        _, circ_norm = weighted.membership(
            couple, "Circle_w", (couple.log_w * xpos, xpos), np.inf
        )
        worst_graph = max(worst_graph, abs(circ_norm - lp_norm(xpos, 2)) / lp_norm(xpos, 2))
        _, z2w0 = weighted.membership(couple, "Z2w", (np.zeros(dim), xpos), np.inf)
        z2w_norms.append(z2w0)
        l2_norms.append(lp_norm(xpos, 2))
        rec.report.add_curve(dim, "z2w_zero_graph_norm", z2w0)
        rec.report.add_curve(dim, "l2_norm", l2_norms[-1])
    rec.below("defect_zero", worst_defect, 0.0)
    rec.below("inverse_identity", worst_inverse, 1e-12)
    rec.below("composition_fd", worst_comp, 1e-4)
    d = abs(calderon.conformal_constant("symmetric_strip").d)
    rec.below("conformal_d", d, 1e-8)
    rec.below("graph_cancellation", worst_graph, 1e-12)
    # relative inflation of the zero-graph norm against the base l2 norm
    growth = (z2w_norms[-1] / z2w_norms[0]) / (l2_norms[-1] / l2_norms[0])
    rec.above("z2w_ladder_growth", growth, 1.1)
    return rec.report


def _sign_family_sample(rng, dim, j_max):
    j = int(rng.integers(0, j_max + 1))
    k = 1 << j
    support = rng.choice(dim, size=k, replace=False)
    x = np.zeros(dim)
    x[support] = rng.choice((-1.0, 1.0), size=k)
    return x


def run_nontriviality(cfg):
    rec = _Recorder(cfg)
    means = []
    for dim in cfg.dims:
        rng = _rng(cfg, dim)
        j_max = int(np.floor(np.log2(dim)))
        X = np.stack([_sign_family_sample(rng, dim, j_max) for _ in range(cfg.samples)])
        Y = np.stack([omega_kp(row) for row in X])
        gram = X.T @ X
        try:
            L = np.linalg.solve(gram, X.T @ Y)
        except np.linalg.LinAlgError:
            L = np.linalg.lstsq(X, Y, rcond=None)[0]
        n_eval = max(cfg.samples // 4, 50)
        Xe = np.stack([_sign_family_sample(rng, dim, j_max) for _ in range(n_eval)])
        Ye = np.stack([omega_kp(row) for row in Xe])
        resid = Ye - Xe @ L
        means.append(float(np.mean(np.linalg.norm(resid, axis=1))))
        rec.report.add_curve(dim, "mean_residual", means[-1])
    slope = float(np.polyfit(np.log(cfg.dims), np.log(means), 1)[0])
    rec.above("residual_log_slope", slope, 0.0)
    rec.flag("residual_monotone", all(b > a for a, b in zip(means, means[1:])),
             value=min(b / a for a, b in zip(means, means[1:])))
    return rec.report


SUITES = {
    "selector": run_selector,
    "quasilinearity": run_quasilinearity,
    "diagrams": run_diagrams,
    "hidden_symmetry": run_hidden_symmetry,
    "block_identity": run_block_identity,
    "duality": run_duality,
    "orlicz_criterion": run_orlicz_criterion,
    "weighted": run_weighted,
    "nontriviality": run_nontriviality,
}


def run_suite(cfg):
    """Execute one suite; deterministic given the config and seed."""
    return SUITES[cfg.suite](cfg)


def list_suites():
    return sorted(SUITES)
