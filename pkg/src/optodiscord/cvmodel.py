"""Physical parameters and the linearized drift/diffusion matrices.

The fluctuation vector is ordered

    (q_A, p_A, X_A, Y_A, q_B, p_B, X_B, Y_B, Q_A, P_A, Q_B, P_B)

i.e. mirror, cavity field, mirror, cavity field, then the two BEC modes.
All rates share one frequency unit; nothing here assumes SI.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ParameterError

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K

# Slack for the |M| <= sqrt(N(N+1)) check so that M = sqrt(N(N+1)) survives round-off.
_M_SLACK = 1e-12


class StateIndex(enum.IntEnum):
    """1-based positions of the twelve quadratures."""

    q_A = 1
    p_A = 2
    X_A = 3
    Y_A = 4
    q_B = 5
    p_B = 6
    X_B = 7
    Y_B = 8
    Q_A = 9
    P_A = 10
    Q_B = 11
    P_B = 12


# Two-mode sub-blocks of the 12x12 covariance (1-based index sets).
BLOCKS = {
    1: (1, 2, 3, 4),      # mirror A - field A
    2: (5, 6, 7, 8),      # mirror B - field B
    3: (1, 2, 5, 6),      # mirror A - mirror B
    4: (3, 4, 7, 8),      # field A - field B
    5: (1, 2, 9, 10),     # mirror A - BEC A
    6: (5, 6, 11, 12),    # mirror B - BEC B
    7: (3, 4, 9, 10),     # field A - BEC A
    8: (7, 8, 11, 12),    # field B - BEC B
}

# A <-> B relabeling as a 0-based permutation.
SWAP_AB = np.array([4, 5, 6, 7, 0, 1, 2, 3, 10, 11, 8, 9])

DETUNING_CONVENTIONS = ("langevin", "printed")


@dataclass(frozen=True)
class CavityParams:
    """Rates of one hybrid cavity, all in the same frequency unit.

    ``Delta`` is the effective detuning that enters the drift matrix,
    ``mu`` couples the field X quadrature into the mirror and BEC momenta
    and ``S`` couples the mirror position into the field Y quadrature.
    """

    omega_m: float
    kappa: float
    gamma_m: float
    gamma_sm: float
    Omega: float
    Delta: float
    mu: float
    S: float
    nbar: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v):
                raise ParameterError(f"{f.name} must be finite, got {v!r}")
        if self.omega_m <= 0:
            raise ParameterError("omega_m must be > 0")
        if self.kappa <= 0:
            raise ParameterError("kappa must be > 0")
        if self.gamma_m < 0 or self.gamma_sm < 0:
            raise ParameterError("damping rates must be >= 0")
        if self.Omega < 0:
            raise ParameterError("Omega must be >= 0")
        if self.nbar < 0:
            raise ParameterError("nbar must be >= 0")

    @classmethod
    def unchecked(cls, **kw) -> "CavityParams":
        """Build without validation (for deliberately unphysical test inputs)."""
        obj = object.__new__(cls)
        for f in fields(cls):
            object.__setattr__(obj, f.name, float(kw.get(f.name, f.default)))
        return obj


@dataclass(frozen=True)
class SystemParams:
    cavity_a: CavityParams
    cavity_b: CavityParams
    J: float
    N_sq: float = 0.0
    M_sq: float | None = None

    def __post_init__(self):
        if self.M_sq is None:
            object.__setattr__(self, "M_sq", ideal_squeezing_m(self.N_sq) if self.N_sq >= 0 else 0.0)
        if not (math.isfinite(self.J) and math.isfinite(self.N_sq) and math.isfinite(self.M_sq)):
            raise ParameterError("J, N_sq and M_sq must be finite")
        if self.J < 0:
            raise ParameterError("J must be >= 0")
        if self.N_sq < 0:
            raise ParameterError("N_sq must be >= 0")
        bound = math.sqrt(self.N_sq * (self.N_sq + 1.0))
        if abs(self.M_sq) > bound * (1 + _M_SLACK) + _M_SLACK:
            raise ParameterError(f"|M_sq| = {abs(self.M_sq):.6g} exceeds sqrt(N(N+1)) = {bound:.6g}")

    def with_detuning(self, delta_a: float, delta_b: float | None = None) -> "SystemParams":
        if delta_b is None:
            delta_b = delta_a
        return replace(
            self,
            cavity_a=_replace_unchecked(self.cavity_a, Delta=delta_a),
            cavity_b=_replace_unchecked(self.cavity_b, Delta=delta_b),
        )

    def swapped(self) -> "SystemParams":
        return replace(self, cavity_a=self.cavity_b, cavity_b=self.cavity_a)


def _replace_unchecked(cav: CavityParams, **changes) -> CavityParams:
    # keeps deliberately-unchecked instances unchecked
    kw = {f.name: getattr(cav, f.name) for f in fields(cav)}
    kw.update(changes)
    try:
        return CavityParams(**kw)
    except ParameterError:
        return CavityParams.unchecked(**kw)


@dataclass(frozen=True)
class SqueezedSourceSpec:
    omega_k: float
    omega_SL: float
    pi1: float
    pi2: float

    @property
    def lambda1(self) -> float:
        return 0.5 * self.pi1 - self.pi2

    @property
    def lambda2(self) -> float:
        return 0.5 * self.pi1 + self.pi2


def thermal_occupation(omega_m: float, T: float) -> float:
    """Bose-Einstein occupation of a mode of angular frequency ``omega_m`` (rad/s) at ``T`` kelvin."""
    if not omega_m > 0:
        raise ParameterError("omega_m must be > 0")
    if not T >= 0:
        raise ParameterError("temperature must be >= 0")
    if T == 0:
        return 0.0
    x = HBAR * omega_m / (K_B * T)
    if x > 700.0:  # exp overflows; occupation underflows to 0
        return 0.0
    return 1.0 / math.expm1(x)


def squeezed_correlations(spec: SqueezedSourceSpec) -> tuple[float, float]:
    """Photon number N and two-photon correlation C of the squeezed source at ``omega_k``.

    Both are the Lorentzian difference/sum weighted by (L1^2 - L2^2)/4.
    """
    l1, l2 = spec.lambda1, spec.lambda2
    if not l2 > 0:
        raise ParameterError("Lambda2 = pi1/2 + pi2 must be > 0")
    dw2 = (spec.omega_k - spec.omega_SL) ** 2
    d1 = dw2 + l1 * l1
    d2 = dw2 + l2 * l2
    if d1 == 0 or d2 == 0:
        raise ParameterError("squeezed-source Lorentzian denominator vanishes")
    pref = (l1 * l1 - l2 * l2) / 4.0
    return pref * (1.0 / d2 - 1.0 / d1), pref * (1.0 / d2 + 1.0 / d1)


def ideal_squeezing_m(N: float) -> float:
    if N < 0:
        raise ParameterError("N must be >= 0")
    return math.sqrt(N * (N + 1.0))


def build_drift(params: SystemParams, detuning: str = "langevin") -> np.ndarray:
    """Drift matrix of the linearized fluctuation dynamics (12x12, 0-based storage).

    Parameters
    ----------
    params : SystemParams
    detuning : {"langevin", "printed"}
        Placement of the detuning inside each optical block. ``"langevin"``
        follows from the field equation da/dt = (i Delta - kappa) a + ... and
        gives dX/dt = -Delta Y, dY/dt = +Delta X (a rotation, eigenvalues
        -kappa +/- i Delta). ``"printed"`` uses the symmetric pair
        dX/dt = +Delta Y, dY/dt = +Delta X, whose optical block has real
        eigenvalues -kappa +/- Delta.

    Returns
    -------
    numpy.ndarray
        ``D`` such that dR/dt = D R + noise. Constant drive terms are omitted.
    """
    if detuning not in DETUNING_CONVENTIONS:
        raise ValueError(f"detuning must be one of {DETUNING_CONVENTIONS}")
    xy_sign = -1.0 if detuning == "langevin" else 1.0

    D = np.zeros((12, 12))
    # (q, p, X, Y, Q, P, X_other, Y_other) 0-based
    layout = (
        (params.cavity_a, 0, 1, 2, 3, 8, 9, 6, 7),
        (params.cavity_b, 4, 5, 6, 7, 10, 11, 2, 3),
    )
    J = params.J
    for c, q, p, X, Y, Q, P, Xo, Yo in layout:
        D[q, p] = c.omega_m
        D[p, q] = -c.omega_m
        D[p, p] = -c.gamma_m
        D[p, X] = c.mu
        D[X, X] = -c.kappa
        D[X, Y] = xy_sign * c.Delta
        D[X, Yo] = J
        D[Y, q] = c.S
        D[Y, X] = c.Delta
        D[Y, Y] = -c.kappa
        D[Y, Xo] = -J
        D[Q, Q] = -c.gamma_sm
        D[Q, P] = -c.Omega
        D[P, Q] = c.Omega
        D[P, X] = c.mu
        D[P, P] = -c.gamma_sm
    return D


def build_diffusion(params: SystemParams) -> np.ndarray:
    """Symmetric diffusion matrix of the input noises (vacuum variance 1/2)."""
    a, b = params.cavity_a, params.cavity_b
    N, M = params.N_sq, params.M_sq
    diag = [
        0.0, a.gamma_m * (1 + 2 * a.nbar), a.kappa * (1 + 2 * N), a.kappa * (1 + 2 * N),
        0.0, b.gamma_m * (1 + 2 * b.nbar), b.kappa * (1 + 2 * N), b.kappa * (1 + 2 * N),
        a.gamma_sm * (1 + 2 * a.nbar), a.gamma_sm * (1 + 2 * a.nbar),
        b.gamma_sm * (1 + 2 * b.nbar), b.gamma_sm * (1 + 2 * b.nbar),
    ]
    F = np.diag(diag)
    cross = 2.0 * M * math.sqrt(a.kappa * b.kappa) if M else 0.0
    F[2, 6] = F[6, 2] = cross
    F[3, 7] = F[7, 3] = -cross
    return F
