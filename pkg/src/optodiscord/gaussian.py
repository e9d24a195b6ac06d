"""Two-mode Gaussian analysis: blocks, symplectic invariants and eigenvalues, discord.

Covariances use the convention in which the vacuum has variance 1/2, so
physical symplectic eigenvalues satisfy s >= 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cvmodel import BLOCKS
from .errors import ComplexEigenvalue, DomainError, InvalidBlockId, NegativeRadicand

H_DOMAIN_TOL = 1e-9
RADICAND_TOL = 1e-12
PHYSICALITY_TOL = 1e-6
# h has infinite slope at 1/2; arguments this close are taken as exactly 1/2
SNAP_TOL = 1e-12

CORRELATED = "correlated"
INDETERMINATE = "indeterminate"
NEGATIVE_FLAG = "negative-flag"

VARIANTS = ("standard", "literal-paper")

# 4x4 symplectic form, modes ordered (x1, p1, x2, p2)
OMEGA4 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@dataclass(frozen=True, eq=False)
class TwoModeBlock:
    block_id: int
    sigma: np.ndarray

    def __post_init__(self):
        s = np.array(self.sigma, dtype=float)
        if s.shape != (4, 4):
            raise ValueError(f"two-mode block must be 4x4, got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("block has non-finite entries")
        if np.abs(s - s.T).max() > 1e-12 * max(1.0, np.abs(s).max()):
            raise ValueError("block is not symmetric")
        s.setflags(write=False)
        object.__setattr__(self, "sigma", s)

    @property
    def sigma1(self) -> np.ndarray:
        return self.sigma[:2, :2]

    @property
    def sigma2(self) -> np.ndarray:
        return self.sigma[2:, 2:]

    @property
    def sigma3(self) -> np.ndarray:
        return self.sigma[:2, 2:]


@dataclass(frozen=True)
class SymplecticInvariants:
    b1: float
    b2: float
    b3: float
    b4: float

    @property
    def Z(self) -> float:
        return self.b1 + self.b2 + 2.0 * self.b3

    @property
    def Z_pt(self) -> float:
        return self.b1 + self.b2 - 2.0 * self.b3


@dataclass(frozen=True)
class DiscordReport:
    block_id: int
    invariants: SymplecticInvariants
    s_minus: float
    s_plus: float
    s_pt_minus: float
    s_pt_plus: float
    discord: float
    classification: str
    # one flag per h-term: h(sqrt b2), h(s-), h(s+), h(last)
    clamped_terms: tuple = (False, False, False, False)
    warnings: tuple = field(default=())

    @property
    def clamped(self) -> bool:
        return any(self.clamped_terms)


def extract_block(C, block_id: int) -> TwoModeBlock:
    """Principal 4x4 submatrix of the 12x12 covariance on the catalogued index set."""
    if block_id not in BLOCKS:
        raise InvalidBlockId(f"block_id must be in 1..8, got {block_id!r}")
    C = np.asarray(C, dtype=float)
    if C.shape != (12, 12):
        raise ValueError(f"covariance must be 12x12, got {C.shape}")
    idx = np.array(BLOCKS[block_id]) - 1
    return TwoModeBlock(block_id, C[np.ix_(idx, idx)])


def symplectic_invariants(block: TwoModeBlock) -> SymplecticInvariants:
    return SymplecticInvariants(
        b1=float(np.linalg.det(block.sigma1)),
        b2=float(np.linalg.det(block.sigma2)),
        b3=float(np.linalg.det(block.sigma3)),
        b4=float(np.linalg.det(block.sigma)),
    )


def _eigs_from(Z: float, b4: float) -> tuple[float, float]:
    scale = max(1.0, Z * Z)
    disc = Z * Z - 4.0 * b4
    if disc < -RADICAND_TOL * scale:
        raise ComplexEigenvalue(f"Z^2 - 4 det(sigma) = {disc:.6g} < 0")
    root = math.sqrt(max(disc, 0.0))
    lo, hi = 0.5 * (Z - root), 0.5 * (Z + root)
    if lo < -RADICAND_TOL * max(1.0, abs(Z)):
        raise ComplexEigenvalue(f"(Z - sqrt(Z^2 - 4 det sigma))/2 = {lo:.6g} < 0")
    return math.sqrt(max(lo, 0.0)), math.sqrt(max(hi, 0.0))


_PT = np.diag([1.0, 1.0, 1.0, -1.0])


def _eigs_hermitian(sigma: np.ndarray):
    """Moduli of the eigenvalues of i Omega sigma via a Hermitian similar matrix.

    With sigma = L L^T, i Omega sigma is similar to i L^T Omega L, which is
    Hermitian, so nearly equal eigenvalues stay accurate to round-off. The
    closed form sqrt(Z^2 - 4 det sigma) loses half the digits there (pure
    states). Returns None when sigma is not positive definite.
    """
    try:
        L = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        return None
    ev = np.linalg.eigvalsh(1j * (L.T @ OMEGA4 @ L))
    return float(ev[2]), float(ev[3])


def symplectic_eigenvalues(block, partial_transpose: bool = False) -> tuple[float, float]:
    """``(s_minus, s_plus)`` of the block, or of its partial transpose.

    ``block`` may be a TwoModeBlock or precomputed SymplecticInvariants.
    Positive-definite blocks go through a Hermitian eigenproblem; everything
    else uses s = sqrt((Z -+ sqrt(Z^2 - 4 b4)) / 2).
    """
    if isinstance(block, TwoModeBlock):
        sigma = _PT @ block.sigma @ _PT if partial_transpose else block.sigma
        eigs = _eigs_hermitian(sigma)
        if eigs is not None:
            return eigs
        inv = symplectic_invariants(block)
    else:
        inv = block
    Z = inv.Z_pt if partial_transpose else inv.Z
    return _eigs_from(Z, inv.b4)


def entropy_h(x: float, base: float | None = None) -> float:
    """h(x) = (x + 1/2) log(x + 1/2) - (x - 1/2) log(x - 1/2), natural log by default.

    Arguments within 1e-9 below 1/2 are clamped; smaller ones raise DomainError.
    """
    if not math.isfinite(x) or x < 0.5 - H_DOMAIN_TOL:
        raise DomainError(f"h(x) needs x >= 1/2, got {x!r}")
    x = max(x, 0.5)
    dn = x - 0.5
    # log(x + 1/2) + (x - 1/2) log(1 + 1/(x - 1/2)): no cancellation for large x
    val = math.log(x + 0.5) + (dn * math.log1p(1.0 / dn) if dn > 0 else 0.0)
    if base is not None:
        val /= math.log(base)
    return val


def classify(discord: float) -> str:
    if discord > 1.0:
        return CORRELATED
    if discord >= 0.0:
        return INDETERMINATE
    return NEGATIVE_FLAG


def gaussian_discord(block: TwoModeBlock, variant: str = "standard", base: float | None = None) -> DiscordReport:
    """Closed-form Gaussian discord of a two-mode block.

    D = h(sqrt b2) - h(s-) - h(s+) + h(sqrt(b1 + 2 sqrt(b1 b2) + 2 b3) / (1 + 2 sqrt b2))

    With ``variant="literal-paper"`` the middle terms become h(sqrt s-) and
    h(sqrt s+). Any h argument below 1/2 is clamped to 1/2 and flagged; arguments within
    1e-12 of 1/2 count as 1/2.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    inv = symplectic_invariants(block)
    b1, b2, b3 = inv.b1, inv.b2, inv.b3
    if not (b1 > 0 and b2 > 0):
        raise ValueError(f"local determinants must be positive (b1={b1:.6g}, b2={b2:.6g})")
    s_minus, s_plus = symplectic_eigenvalues(block)
    s_pt_minus, s_pt_plus = symplectic_eigenvalues(block, partial_transpose=True)

    rad = b1 + 2.0 * math.sqrt(b1 * b2) + 2.0 * b3
    if rad < -RADICAND_TOL * max(1.0, b1 + b2):
        raise NegativeRadicand(f"b1 + 2 sqrt(b1 b2) + 2 b3 = {rad:.6g}")
    last = math.sqrt(max(rad, 0.0)) / (1.0 + 2.0 * math.sqrt(b2))

    if variant == "standard":
        mid = (s_minus, s_plus)
    else:
        mid = (math.sqrt(s_minus), math.sqrt(s_plus))
    args = (math.sqrt(b2), *mid, last)
    clamped = tuple(a < 0.5 - SNAP_TOL for a in args)
    h = [entropy_h(0.5 if a < 0.5 + SNAP_TOL else a, base) for a in args]
    discord = h[0] - h[1] - h[2] + h[3]

    warnings = []
    if s_minus < 0.5 - PHYSICALITY_TOL:
        warnings.append(f"unphysical block {block.block_id}: s_minus = {s_minus:.9g} < 1/2")
    return DiscordReport(
        block_id=block.block_id,
        invariants=inv,
        s_minus=s_minus,
        s_plus=s_plus,
        s_pt_minus=s_pt_minus,
        s_pt_plus=s_pt_plus,
        discord=discord,
        classification=classify(discord),
        clamped_terms=clamped,
        warnings=tuple(warnings),
    )
