"""Steady-state Gaussian correlations of two coupled BEC-optomechanical cavities."""

from .cvmodel import (
    BLOCKS,
    CavityParams,
    SqueezedSourceSpec,
    StateIndex,
    SystemParams,
    build_diffusion,
    build_drift,
    ideal_squeezing_m,
    squeezed_correlations,
    thermal_occupation,
)
from .gaussian import (
    DiscordReport,
    SymplecticInvariants,
    TwoModeBlock,
    classify,
    entropy_h,
    extract_block,
    gaussian_discord,
    symplectic_eigenvalues,
    symplectic_invariants,
)
from .linalg import char_poly, solve_lyapunov, spectral_abscissa
from .stability import StabilityReport, routh_hurwitz, stability_report, stability_sweep

__version__ = "0.1.0"

__all__ = [
    "BLOCKS", "CavityParams", "DiscordReport", "SqueezedSourceSpec", "StabilityReport", "StateIndex",
    "SymplecticInvariants", "SystemParams", "TwoModeBlock", "build_diffusion", "build_drift", "char_poly",
    "classify", "entropy_h", "extract_block", "gaussian_discord", "ideal_squeezing_m", "routh_hurwitz",
    "solve_lyapunov", "spectral_abscissa", "squeezed_correlations", "stability_report", "stability_sweep",
    "symplectic_eigenvalues", "symplectic_invariants", "thermal_occupation",
]
