"""Small dense kernels: continuous Lyapunov solve, characteristic polynomial, spectral abscissa."""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    NoConvergence,
    SingularSystem,
    UnstableDrift,
)

MAX_DIM = 16
STABILITY_MARGIN = 1e-12
# rcond below which the vectorized Lyapunov operator is treated as singular
_RCOND_MIN = 1e-14


def as_square(A, name="matrix") -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} has non-finite entries")
    return A


def eigenvalues(D) -> np.ndarray:
    """Eigenvalues of a dense real matrix (LAPACK Hessenberg + shifted QR)."""
    D = as_square(D, "D")
    if D.shape[0] > MAX_DIM:
        raise DimensionTooLarge(f"n = {D.shape[0]} exceeds {MAX_DIM}")
    try:
        return np.linalg.eigvals(D)
    except np.linalg.LinAlgError as exc:  # LAPACK's QR iteration cap (30 sweeps per eigenvalue)
        raise NoConvergence(str(exc)) from exc


def spectral_abscissa(D) -> float:
    return float(np.max(eigenvalues(D).real))


def lyapunov_operator(D) -> np.ndarray:
    """Matrix of C -> D C + C D^T acting on column-stacked vec(C)."""
    n = D.shape[0]
    eye = np.eye(n)
    return np.kron(eye, D) + np.kron(D, eye)


def solve_lyapunov(D, F) -> np.ndarray:
    """Solve ``D C + C D^T = -F`` for the steady-state covariance ``C``.

    The equation is vectorized, ``(I kron D + D kron I) vec(C) = -vec(F)``,
    and solved by LU with one step of iterative refinement. ``D`` must be
    Hurwitz; the result is symmetrized before it is returned.

    Raises
    ------
    DimensionMismatch
        Shapes differ or are not square.
    UnstableDrift
        Spectral abscissa of ``D`` is >= -1e-12.
    SingularSystem
        The vectorized operator is numerically singular.
    """
    D = as_square(D, "D")
    F = as_square(F, "F")
    if D.shape != F.shape:
        raise DimensionMismatch(f"D is {D.shape} but F is {F.shape}")
    if not np.allclose(F, F.T, rtol=0, atol=1e-12 * max(1.0, np.abs(F).max())):
        raise ValueError("F must be symmetric")
    abscissa = spectral_abscissa(D)
    if abscissa >= -STABILITY_MARGIN:
        raise UnstableDrift(abscissa)

    n = D.shape[0]
    K = lyapunov_operator(D)
    rhs = -F.reshape(-1, order="F")
    try:
        x = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    if 1.0 / np.linalg.cond(K, 1) < _RCOND_MIN:
        raise SingularSystem("vectorized Lyapunov operator is ill-conditioned")
    x += np.linalg.solve(K, rhs - K @ x)
    C = x.reshape((n, n), order="F")
    return 0.5 * (C + C.T)


def lyapunov_residual(D, C, F) -> float:
    return float(np.abs(D @ C + C @ D.T + F).max())


def _integer_matrix(A: np.ndarray):
    """Exact representation ``A = A_int / L`` with Python-int entries and L a power of two."""
    ratios = [float(x).as_integer_ratio() for x in A.ravel()]
    L = max(d for _, d in ratios)
    A_int = np.array([num * (L // d) for num, d in ratios], dtype=object).reshape(A.shape)
    return A_int, L


def char_poly(D, exact: bool = True) -> np.ndarray:
    """Coefficients ``[1, c_{n-1}, ..., c_0]`` of det(lambda I - D) by Faddeev-LeVerrier.

    With ``exact=True`` the recurrence runs in integer arithmetic on the
    exact dyadic representation of ``D`` (every division by k is exact), so
    each returned coefficient is the correctly rounded coefficient of the
    floating-point input. Drift matrices mix rates of order 10^3 with
    eigenvalues of order 10^-3, and the float recurrence loses most of the
    low-order digits there. ``exact=False`` runs the plain float recurrence
    on the max-norm-scaled matrix.
    """
    D = as_square(D, "D")
    n = D.shape[0]
    if n > MAX_DIM:
        raise DimensionTooLarge(f"n = {n} exceeds {MAX_DIM}")
    if exact:
        A, L = _integer_matrix(D)
        eye = np.identity(n, dtype=object)
        coeffs = [1]
        M = np.zeros((n, n), dtype=object)
        for k in range(1, n + 1):
            M = A.dot(M) + coeffs[-1] * eye
            q, r = divmod(-A.dot(M).trace(), k)
            assert r == 0
            coeffs.append(q)
        return np.array([c / L**k for k, c in enumerate(coeffs)], dtype=float)

    s = np.abs(D).max()
    out = np.zeros(n + 1)
    out[0] = 1.0
    if s == 0:
        return out
    A = D / s
    M = np.zeros_like(A)
    eye = np.eye(n)
    for k in range(1, n + 1):
        M = A @ M + out[k - 1] * eye
        out[k] = -np.trace(A @ M) / k
    return out * s ** np.arange(n + 1)
