"""Routh-Hurwitz analysis of the drift matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .cvmodel import SystemParams, build_drift

STABLE = "stable"
UNSTABLE = "unstable"
MARGINAL = "marginal"

EPS_REL = 1e-12


@dataclass(frozen=True)
class StabilityReport:
    """Characteristic-polynomial coefficients and both stability verdicts.

    ``coeffs`` runs from the leading coefficient (S_n = 1) down to S_0.
    ``coefficient_positivity[i]`` refers to ``coeffs[i]``. ``verdict`` always
    comes from the Routh array; ``consistent`` records whether it agrees with
    the sign of ``spectral_abscissa`` (``None`` when no eigenvalues were
    computed).
    """

    coeffs: tuple
    coefficient_positivity: tuple
    routh_first_column: tuple
    routh_positive: bool
    verdict: str
    epsilon_substituted: bool = False
    degenerate_row: bool = False
    spectral_abscissa: float | None = None
    consistent: bool | None = None

    @property
    def all_coefficients_positive(self) -> bool:
        return all(self.coefficient_positivity)

    @property
    def S(self) -> tuple:
        """Coefficients indexed by power: ``S[i]`` multiplies lambda**i."""
        return tuple(reversed(self.coeffs))


def _to_float(x: Fraction) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def routh_array(coeffs) -> tuple[list, bool, bool]:
    """Full Routh array for a polynomial with the given descending coefficients.

    Runs in exact rational arithmetic on the floating-point coefficients, so
    a pivot is zero only if it is exactly zero. Zero pivots are replaced by
    ``eps = 1e-12 * max|coeff|``; a vanishing row is rebuilt from the
    derivative of the auxiliary polynomial above it. Returns the array (rows
    of Fractions) and the two degeneracy flags.
    """
    a = [Fraction(float(c)) for c in coeffs]
    n = len(a) - 1
    width = n // 2 + 1
    table = [[Fraction(0)] * width for _ in range(n + 1)]
    table[0][: len(a[0::2])] = a[0::2]
    if n >= 1:
        table[1][: len(a[1::2])] = a[1::2]
    eps = Fraction(EPS_REL) * max(abs(c) for c in a)
    substituted = degenerate = False

    def fix_row(i):
        nonlocal substituted, degenerate
        row = table[i]
        if all(x == 0 for x in row):
            degenerate = True
            order = n - i + 1
            table[i] = row = [
                table[i - 1][j] * (order - 2 * j) if order - 2 * j > 0 else Fraction(0) for j in range(width)
            ]
        if row[0] == 0:
            substituted = True
            row[0] = eps

    if n >= 1:
        fix_row(1)
    for i in range(2, n + 1):
        up, piv = table[i - 2], table[i - 1]
        table[i] = [(piv[0] * up[j + 1] - up[0] * piv[j + 1]) / piv[0] for j in range(width - 1)] + [Fraction(0)]
        fix_row(i)
    return table, substituted, degenerate


def routh_hurwitz(coeffs) -> StabilityReport:
    a = np.asarray(coeffs, dtype=float)
    if a.ndim != 1 or len(a) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if a[0] != 1.0:
        raise ValueError("leading coefficient must be 1")
    table, substituted, degenerate = routh_array(a)
    first = tuple(_to_float(row[0]) for row in table)
    positive = all(row[0] > 0 for row in table)
    # after row rebuilding or epsilon substitution the sign changes still count
    # right-half-plane roots; with none left, the degeneracy means roots on the axis
    if not positive:
        verdict = UNSTABLE
    elif substituted or degenerate:
        verdict = MARGINAL
    else:
        verdict = STABLE
    return StabilityReport(
        coeffs=tuple(float(x) for x in a),
        coefficient_positivity=tuple(bool(x > 0) for x in a),
        routh_first_column=first,
        routh_positive=positive,
        verdict=verdict,
        epsilon_substituted=substituted,
        degenerate_row=degenerate,
    )


def stability_report(D) -> StabilityReport:
    """Routh verdict from the characteristic polynomial, checked against the eigenvalues."""
    D = linalg.as_square(D, "D")
    rep = routh_hurwitz(linalg.char_poly(D))
    abscissa = linalg.spectral_abscissa(D)
    if rep.verdict == MARGINAL:
        consistent = abs(abscissa) <= 1e-6 * max(1.0, np.abs(D).max())
    else:
        consistent = (rep.verdict == STABLE) == (abscissa < 0)
    return StabilityReport(**{**rep.__dict__, "spectral_abscissa": abscissa, "consistent": consistent})


@dataclass(frozen=True)
class StabilityRow:
    delta_over_omega_m: float
    report: StabilityReport

    @property
    def verdict(self) -> str:
        return self.report.verdict


def stability_sweep(params: SystemParams, detuning_grid, detuning: str = "langevin") -> list[StabilityRow]:
    """One StabilityReport per normalized detuning.

    Both cavities get Delta = (Delta/omega_m) * omega_m with omega_m taken
    from cavity A.
    """
    grid = [float(x) for x in detuning_grid]
    if not grid:
        raise ValueError("detuning grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("detuning grid must be strictly increasing")
    wm = params.cavity_a.omega_m
    rows = []
    for x in grid:
        D = build_drift(params.with_detuning(x * wm), detuning=detuning)
        rows.append(StabilityRow(x, stability_report(D)))
    return rows
