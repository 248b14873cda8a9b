"""Parity between the compiled kernel backend and the numpy fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest

from twistlab import _kernels
from twistlab._kernels import pure
from twistlab.orlicz import orlicz_f, orlicz_g, orlicz_square

compiled = pytest.importorskip(
    "twistlab._kernels._fast", reason="compiled kernel extension not built"
)

PARAM_SETS = [orlicz_f().params, orlicz_g().params, orlicz_square().params]


def test_backend_is_compiled_by_default():
    if os.environ.get("TWISTLAB_PURE"):
        pytest.skip("forced pure backend")
    assert _kernels.BACKEND == "compiled"


def test_env_var_forces_pure_backend():
    code = "import twistlab; print(twistlab.kernel_backend)"
    env = dict(os.environ, TWISTLAB_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "pure"


@pytest.mark.parametrize("params", PARAM_SETS)
def test_orlicz_values_parity(params):
    rng = np.random.default_rng(50)
    t = np.abs(rng.standard_normal(4096)) * 3.0
    a = compiled.orlicz_values(t, *params)
    b = pure.orlicz_values(t, *params)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("params", PARAM_SETS)
def test_orlicz_deriv_parity(params):
    rng = np.random.default_rng(51)
    t = np.abs(rng.standard_normal(2048)) * 2.0
    np.testing.assert_allclose(
        compiled.orlicz_deriv(t, *params), pure.orlicz_deriv(t, *params), rtol=1e-13
    )


@pytest.mark.parametrize("params", PARAM_SETS)
def test_gauge_sum_parity(params):
    rng = np.random.default_rng(52)
    x = np.abs(rng.standard_normal(1000))
    for rho in (0.3, 1.0, 17.0):
        a = compiled.orlicz_gauge_sum(x, rho, *params)
        b = pure.orlicz_gauge_sum(x, rho, *params)
        assert a == pytest.approx(b, rel=1e-12)


@pytest.mark.parametrize("params", PARAM_SETS)
def test_conjugate_parity(params):
    rng = np.random.default_rng(53)
    s = np.abs(rng.standard_normal(500)) * 4.0
    a = compiled.legendre_conjugate(s, *params)
    b = pure.legendre_conjugate(s, *params)
    np.testing.assert_allclose(a, b, rtol=1e-8, atol=1e-14)


def test_xlog_power_parity():
    rng = np.random.default_rng(54)
    x = rng.standard_normal(2048)
    x[::17] = 0.0
    for power in (1, 2):
        a = compiled.xlog_power(x, power, 1.7)
        b = pure.xlog_power(x, power, 1.7)
        np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


def test_shapes_match_between_backends():
    params = PARAM_SETS[0]
    grid = np.abs(np.random.default_rng(55).standard_normal((4, 7)))
    a = compiled.orlicz_values(grid, *params)
    b = pure.orlicz_values(grid, *params)
    assert a.shape == b.shape == (4, 7)
