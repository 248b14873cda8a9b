import json
import math

import numpy as np
import pytest

from twistlab import _kernels
from twistlab.orlicz import (
    CriterionWitness,
    OrliczFunction,
    conjugate_eval,
    conjugate_inverse,
    criterion_search,
    dual_norm,
    luxemburg_brackets,
    luxemburg_norm,
    normalization_residual,
    orlicz_eval,
    orlicz_f,
    orlicz_g,
    orlicz_inverse,
    orlicz_square,
)
from twistlab.sequences import lp_norm

F = orlicz_f()
G = orlicz_g()
SQ = orlicz_square()


class TestConstruction:
    def test_kind_parameters(self):
        assert F.log_power == 2 and F.cutoff == pytest.approx(math.exp(-3.0))
        assert G.log_power == 4 and G.cutoff == pytest.approx(math.exp(-5.0))
        assert SQ.log_power == 0

    def test_square_extension_is_seamless(self):
        # Taylor continuation of t^2 is t^2 itself
        assert (SQ.ext_a, SQ.ext_b, SQ.ext_c) == (1.0, 0.0, 0.0)

    def test_extension_is_c2_at_cutoff(self):
        for M in (F, G):
            t0 = M.cutoff
            p = M.log_power
            power_val = t0 * t0 * math.log(t0) ** p
            ext_val = M.ext_a * t0 * t0 + M.ext_b * t0 + M.ext_c
            assert ext_val == pytest.approx(power_val, rel=1e-12)
            eps = 1e-7
            slope_below = (orlicz_eval(M, t0) - orlicz_eval(M, t0 - eps)) / eps
            slope_above = (orlicz_eval(M, t0 + eps) - orlicz_eval(M, t0)) / eps
            assert slope_above == pytest.approx(slope_below, rel=1e-4)

    def test_fourth_power_rejects_nonconvex_cutoff(self):
        # t^2 log^4 t is concave between e^(-3-sqrt(3)) and e^(-3+sqrt(3));
        # a cutoff of e^-3 therefore violates the convexity invariant
        with pytest.raises(ValueError):
            OrliczFunction.make("g", cutoff=math.exp(-3.0))

    def test_convexity_sampled_on_power_branch(self):
        M = OrliczFunction.make("custom", cutoff=math.exp(-6.0), log_power=4)
        t = np.exp(np.linspace(math.log(M.cutoff) - 20.0, math.log(M.cutoff), 200))
        vals = orlicz_eval(M, t)
        second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
        assert np.min(second) >= -1e-18

    def test_rejects_bad_kinds(self):
        with pytest.raises(ValueError):
            OrliczFunction.make("h")
        with pytest.raises(ValueError):
            OrliczFunction.make("custom", cutoff=0.01, log_power=3)
        with pytest.raises(ValueError):
            OrliczFunction.make("f", cutoff=1.5)


class TestEval:
    def test_square(self):
        assert orlicz_eval(SQ, 3.0) == pytest.approx(9.0)
        assert orlicz_eval(SQ, 0.0) == 0.0

    def test_f_power_branch(self):
        assert orlicz_eval(F, math.exp(-4.0)) == pytest.approx(16.0 * math.exp(-8.0), rel=1e-14)

    def test_g_power_branch(self):
        # e^-6 lies below the fourth-power cutoff e^-5
        assert orlicz_eval(G, math.exp(-6.0)) == pytest.approx(1296.0 * math.exp(-12.0), rel=1e-14)

    def test_monotone_increasing(self):
        t = np.linspace(0.0, 4.0, 4000)
        for M in (F, G, SQ):
            vals = orlicz_eval(M, t)
            assert np.all(np.diff(vals) >= 0.0)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            orlicz_eval(F, -1.0)


class TestLuxemburg:
    def test_square_gauge_is_l2(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            x = rng.standard_normal(int(rng.integers(1, 40)))
            assert luxemburg_norm(SQ, x) == pytest.approx(lp_norm(x, 2), rel=1e-9)

    def test_zero_vector(self):
        assert luxemburg_norm(F, np.zeros(5)) == 0.0

    def test_single_coordinate_closed_form(self):
        for M in (F, G):
            for c in (0.5, 2.0, 7.0):
                expected = c / orlicz_inverse(M, 1.0)
                got = luxemburg_norm(M, np.array([0.0, c, 0.0]))
                assert got == pytest.approx(expected, rel=1e-9)

    def test_normalization_within_tolerance(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            x = rng.standard_normal(int(rng.integers(2, 64)))
            resid = normalization_residual(F, x)
            assert -1e-8 <= resid <= 0.0 + 1e-12

    def test_brackets_are_valid(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            x = rng.standard_normal(int(rng.integers(1, 50)))
            lo, hi = luxemburg_brackets(F, x)
            norm = luxemburg_norm(F, x)
            assert lo <= norm * (1 + 1e-9)
            assert norm <= hi * (1 + 1e-9)
            ax = np.abs(x)
            assert _kernels.orlicz_gauge_sum(ax, lo, *F.params) >= 1.0 - 1e-9
            assert _kernels.orlicz_gauge_sum(ax, hi, *F.params) <= 1.0 + 1e-9

    def test_homogeneity_exact_for_dyadic(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal(24)
        base = luxemburg_norm(F, x)
        assert luxemburg_norm(F, 4.0 * x) == 4.0 * base

    def test_homogeneity_general(self):
        rng = np.random.default_rng(7)
        x = rng.standard_normal(24)
        base = luxemburg_norm(F, x)
        for lam in (0.3, 1.7, 11.0):
            assert luxemburg_norm(F, lam * x) == pytest.approx(lam * base, rel=1e-9)

    def test_triangle_inequality(self):
        # 10^4 random triples
        rng = np.random.default_rng(8)
        for _ in range(10_000):
            dim = int(rng.integers(2, 64))
            x = rng.standard_normal(dim)
            y = rng.standard_normal(dim)
            assert luxemburg_norm(F, x + y) <= (
                luxemburg_norm(F, x) + luxemburg_norm(F, y)
            ) * (1 + 1e-9)

    def test_monotone_inclusion_constants_stable(self):
        # l2 <= C l_f <= C' l_g on the power families, uniformly in dimension
        for alpha in (0.6, 0.75, 1.0):
            r_sq_f = []
            r_f_g = []
            for dim in (16, 64, 256, 1024, 4096):
                x = np.arange(1, dim + 1, dtype=np.float64) ** -alpha
                n2 = lp_norm(x, 2)
                nf = luxemburg_norm(F, x)
                ng = luxemburg_norm(G, x)
                r_sq_f.append(n2 / nf)
                r_f_g.append(nf / ng)
            for ratios in (r_sq_f, r_f_g):
                assert max(ratios) <= 2.0
                assert max(ratios) / min(ratios) <= 2.0


class TestConjugate:
    def test_square_conjugate(self):
        for s in (0.5, 1.0, 3.0):
            assert conjugate_eval(SQ, s) == pytest.approx(s * s / 4.0, rel=1e-9)

    def test_zero(self):
        assert conjugate_eval(F, 0.0) == 0.0

    def test_f_against_dense_grid_oracle(self):
        s = 0.1
        t = np.linspace(0.0, 10.0, 10_000_001)
        vals = s * t - _kernels.orlicz_values(t, *F.params)
        oracle = float(np.max(vals))
        assert conjugate_eval(F, s) == pytest.approx(oracle, abs=1e-9)

    def test_fenchel_young(self):
        rng = np.random.default_rng(9)
        s = 3.0 * rng.random(10_000)
        t = 3.0 * rng.random(10_000)
        mt = orlicz_eval(F, t)
        ms = conjugate_eval(F, s)
        slack = s * t - mt - ms
        assert np.max(slack / (1.0 + mt + ms)) <= 1e-10

    def test_convex_in_s(self):
        s = np.linspace(0.0, 5.0, 501)
        vals = conjugate_eval(F, s)
        second = vals[:-2] - 2.0 * vals[1:-1] + vals[2:]
        assert np.min(second) >= -1e-8


class TestDualNorm:
    def test_zero(self):
        assert dual_norm(F, np.zeros(4)) == 0.0

    def test_square_self_duality_scaling(self):
        # conjugate of t^2 is s^2/4, so the dual gauge is half the l2 norm
        rng = np.random.default_rng(10)
        y = rng.standard_normal(12)
        assert dual_norm(SQ, y) == pytest.approx(lp_norm(y, 2) / 2.0, rel=1e-9)

    def test_single_coordinate_closed_form(self):
        expected = 1.0 / conjugate_inverse(F, 1.0)
        assert dual_norm(F, np.array([1.0, 0.0])) == pytest.approx(expected, rel=1e-9)

    def test_duality_gap_factor_two(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            dim = int(rng.integers(2, 48))
            x = rng.standard_normal(dim)
            y = rng.standard_normal(dim)
            bound = 2.0 * luxemburg_norm(F, x) * dual_norm(F, y)
            assert abs(float(np.dot(x, y))) <= bound * (1 + 1e-9)


class TestCriterion:
    @pytest.mark.parametrize("B", [2.0, 4.0, 8.0])
    def test_f_into_square(self, B):
        witness = criterion_search(F, SQ, B)
        assert witness is not None
        assert witness.margin >= 0.0
        assert all(0.0 < tau <= 1.0 for tau in witness.tau)

    @pytest.mark.parametrize("B", [2.0, 4.0, 8.0])
    def test_g_into_f(self, B):
        witness = criterion_search(G, F, B)
        assert witness is not None
        assert witness.margin >= 0.0

    def test_square_square_fails(self):
        assert criterion_search(SQ, SQ, 2.0) is None

    def test_witness_margin_is_true_minimum(self):
        witness = criterion_search(F, SQ, 4.0)
        t = np.linspace(0.0, 1.0, 1000)
        tau = np.asarray(witness.tau)
        grid = tau[:, None] * t[None, :]
        lhs = _kernels.orlicz_values(grid, *F.params).sum(axis=0)
        rhs = _kernels.orlicz_values(grid, *SQ.params).sum(axis=0)
        assert float(np.min(lhs - witness.B * rhs)) == pytest.approx(witness.margin, abs=1e-15)

    def test_witness_json(self):
        w = CriterionWitness(tau=(0.5, 0.25), B=2.0, margin=0.0)
        data = json.loads(w.to_json())
        assert data == {"tau": [0.5, 0.25], "B": 2.0, "margin": 0.0}
