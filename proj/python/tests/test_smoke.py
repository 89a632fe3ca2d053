import cmath
import math

import numpy as np
import pytest

import ballspec


def f(r, theta):
    return (1 - r) * math.exp(r) * cmath.exp(1j * (theta + 0.5))


def test_jacobi_and_quadrature():
    assert ballspec.jacobi_eval(2, 0.0, 0.0, 0.3) == pytest.approx(1.5 * 0.09 - 0.5)
    x, w = ballspec.gauss_jacobi(6, 0.0, 0.0)
    assert sum(w) == pytest.approx(2.0)
    assert np.dot(w, np.asarray(x) ** 4) == pytest.approx(2.0 / 5.0)


def test_dr_is_skew():
    D = ballspec.build_Dr(20, 2.0)
    assert D.shape == (21, 21)
    assert np.max(np.abs(D + D.T)) == 0.0
    Q = ballspec.radial_diff_quadrature(20, 2.0, 2.0)
    assert np.max(np.abs(Q - 2.0 * D)) < 1e-10


def test_asymmetry():
    assert ballspec.asymmetry_beta0(0, 0, 2.0) == pytest.approx(3.0)
    assert ballspec.asymmetry_S_ex1(3, 2.0)[0, 0] == 4.0


def test_example5_expansion():
    c = ballspec.expand(f)
    assert len(c) == 77
    assert c.has_affine
    err = ballspec.error_report(f, c)
    assert err["e_inf"] <= 1e-8
    assert abs(c(0.3, [0.2]) - f(0.3, 0.2)) < 1e-8


def test_unitarity():
    rng = np.random.default_rng(0)
    v = rng.normal(size=9 * 18) + 1j * rng.normal(size=9 * 18)
    v /= np.linalg.norm(v)
    out = ballspec.propagate("schrodinger", 16, 4, 2.0, v, 1.0)
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-9)


def test_expm():
    A = np.diag([0.5j, -0.25j, 1.0])
    out = ballspec.expm_apply(A, [1, 1, 1], 2.0)
    assert np.allclose(out, np.exp(2.0 * np.diag(A)), atol=1e-9)


def test_run_example_and_errors():
    rep = ballspec.run_example("ex2")
    assert rep["passed"]
    assert {c["name"] for c in rep["checks"]} >= {"asymmetry_00_error"}
    with pytest.raises(ValueError):
        ballspec.run_example("nope")
    with pytest.raises(RuntimeError):
        ballspec.propagate("diffusion", 6, 2, 2.0, [0.0] * 10, 1.0)
