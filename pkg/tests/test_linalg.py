import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import lyapunov_kronecker, poly_from_roots, random_psd, random_stable

from optodiscord.cvmodel import build_diffusion, build_drift
from optodiscord.errors import DimensionMismatch, DimensionTooLarge, UnstableDrift
from optodiscord.linalg import (
    char_poly,
    eigenvalues,
    lyapunov_residual,
    solve_lyapunov,
    spectral_abscissa,
)
from optodiscord.sweepcli import Scenario

scipy_linalg = pytest.importorskip("scipy.linalg")


# Lyapunov

def test_lyapunov_minus_identity():
    C = solve_lyapunov(-np.eye(2), np.eye(2))
    assert np.array_equal(C, 0.5 * np.eye(2))


def test_lyapunov_decoupled_damping():
    k = 3.7
    C = solve_lyapunov(-k * np.eye(4), 2 * k * np.eye(4) / 2)
    assert np.allclose(C, 0.5 * np.eye(4), rtol=0, atol=1e-15)


def test_lyapunov_damped_oscillator_closed_form():
    # dq = w p, dp = -w q - g p + noise on p only
    w, g, n = 2.0, 0.3, 1.5
    D = np.array([[0, w], [-w, -g]])
    F = np.diag([0, g * (2 * n + 1)])
    C = solve_lyapunov(D, F)
    assert C == pytest.approx(np.diag([n + 0.5, n + 0.5]), abs=1e-13)


@pytest.mark.parametrize("n", [2, 4, 8, 12])
def test_lyapunov_matches_kronecker_oracle(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        D, F = random_stable(rng, n), random_psd(rng, n)
        C = solve_lyapunov(D, F)
        assert np.abs(C - lyapunov_kronecker(D, F)).max() <= 1e-9
        assert lyapunov_residual(D, C, F) <= 1e-10 * max(1.0, np.abs(F).max())


@pytest.mark.parametrize("n", [3, 12])
def test_lyapunov_matches_bartels_stewart(n):
    rng = np.random.default_rng(7 * n)
    D, F = random_stable(rng, n), random_psd(rng, n)
    ref = scipy_linalg.solve_continuous_lyapunov(D, -F)
    assert np.abs(solve_lyapunov(D, F) - ref).max() <= 1e-9 * max(1.0, np.abs(ref).max())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 6, 12]))
def test_lyapunov_psd_preserved(seed, n):
    rng = np.random.default_rng(seed)
    D, F = random_stable(rng, n), random_psd(rng, n)
    C = solve_lyapunov(D, F)
    assert np.array_equal(C, C.T)
    assert np.linalg.eigvalsh(C).min() >= -1e-10 * max(1.0, np.abs(C).max())


def test_lyapunov_scenario_a_residual():
    p = Scenario(id="a").system_params(5.0)
    D, F = build_drift(p), build_diffusion(p)
    C = solve_lyapunov(D, F)
    assert lyapunov_residual(D, C, F) <= 1e-10 * max(1.0, np.abs(F).max())


def test_lyapunov_unstable():
    with pytest.raises(UnstableDrift) as info:
        solve_lyapunov(np.diag([-1.0, 0.5]), np.eye(2))
    assert info.value.abscissa == pytest.approx(0.5)
    with pytest.raises(UnstableDrift):
        solve_lyapunov(np.array([[0.0, 1.0], [-1.0, 0.0]]), np.eye(2))


def test_lyapunov_shape_errors():
    with pytest.raises(DimensionMismatch):
        solve_lyapunov(-np.eye(3), np.eye(2))
    with pytest.raises(DimensionMismatch):
        solve_lyapunov(-np.ones((2, 3)), np.eye(2))
    with pytest.raises(ValueError):
        solve_lyapunov(-np.eye(2), np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_dimension_too_large():
    with pytest.raises(DimensionTooLarge):
        char_poly(-np.eye(17))
    with pytest.raises(DimensionTooLarge):
        eigenvalues(-np.eye(17))


# characteristic polynomial

def test_char_poly_diagonal():
    assert np.array_equal(char_poly(np.diag([-1.0, -2.0])), [1.0, 3.0, 2.0])


def test_char_poly_companion():
    A = np.array([[0, 1, 0], [0, 0, 1], [-4, -3, -2]], dtype=float)
    assert np.array_equal(char_poly(A), [1.0, 2.0, 3.0, 4.0])


def test_char_poly_zero_matrix():
    assert np.array_equal(char_poly(np.zeros((3, 3))), [1, 0, 0, 0])


@pytest.mark.parametrize("exact", [True, False])
def test_char_poly_eigen_product(exact):
    rng = np.random.default_rng(3)
    for n in (2, 5, 8, 12):
        A = rng.normal(size=(n, n))
        ref = poly_from_roots(np.linalg.eigvals(A))
        c = char_poly(A, exact=exact)
        assert np.abs(c - ref).max() <= 1e-8 * np.abs(ref).max()


def test_char_poly_exact_on_integer_matrix():
    rng = np.random.default_rng(11)
    A = rng.integers(-3, 4, size=(6, 6)).astype(float)
    c = char_poly(A)
    assert np.all(c == np.round(c))
    assert c == pytest.approx(np.poly(A), abs=1e-6)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 8))
def test_char_poly_similarity_invariant(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, n))
    P = np.eye(n)[rng.permutation(n)]
    assert np.array_equal(char_poly(A), char_poly(P @ A @ P.T))


def test_char_poly_trace_and_det():
    rng = np.random.default_rng(5)
    A = rng.normal(size=(7, 7))
    c = char_poly(A)
    assert c[1] == pytest.approx(-np.trace(A), rel=1e-14)
    assert c[-1] == pytest.approx(-np.linalg.det(A), rel=1e-10)


def test_char_poly_drift_constant_term():
    p = Scenario(id="a").system_params(5.0)
    D = build_drift(p)
    assert char_poly(D)[-1] == pytest.approx(np.linalg.det(D), rel=1e-8)


# spectral abscissa

def test_spectral_abscissa_examples():
    assert spectral_abscissa(np.diag([-1.0, -2.0])) == -1.0
    assert spectral_abscissa(np.array([[0.0, 1.0], [-1.0, 0.0]])) == pytest.approx(0.0, abs=1e-15)
    assert spectral_abscissa(np.array([[-1.0, 5.0], [-5.0, -1.0]])) == pytest.approx(-1.0)


def test_spectral_abscissa_scenario_a_negative():
    p = Scenario(id="a").system_params(5.0)
    assert spectral_abscissa(build_drift(p)) < 0
