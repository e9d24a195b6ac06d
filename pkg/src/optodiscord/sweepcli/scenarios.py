"""Scenario presets.

Rates quoted as ``x * 2pi MHz`` are stored as ``x * 2pi`` in units of the
mechanical frequency (``units="ratio"``, omega_m = 1). With
``units="absolute"`` they are stored in rad/s and ``omega_m`` must be given
in rad/s as well. ``J`` is always stored literally as given.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from ..cvmodel import CavityParams, SystemParams, ideal_squeezing_m
from ..errors import ValidationError

TWO_PI = 2.0 * math.pi
MHZ = 1e6

SCENARIO_IDS = ("a", "b", "c", "d", "custom")
UNITS = ("ratio", "absolute")

# (nbar, N, J)
PRESETS = {
    "a": (0.0, 0.0, 1.0),
    "b": (836.0, 0.0, 1.0),
    "c": (0.0, 0.0, 0.5),
    "d": (14642.0, 0.1, 1.0),
    "custom": (0.0, 0.0, 1.0),
}

# base rates in units of 2pi MHz
BASE_RATES = {
    "kappa": 14.0,
    "mu": 8.0,
    "S": 8.0,
    "gamma_m": 100.0,
    "gamma_sm": 100.0,
    "Omega": 10.0,
}


@dataclass(frozen=True)
class Scenario:
    """A preset plus optional overrides. ``None`` means "use the preset value"."""

    id: str = "a"
    units: str = "ratio"
    omega_m: float | None = None
    nbar: float | None = None
    N: float | None = None
    J: float | None = None
    M: float | None = None
    kappa: float | None = None
    mu: float | None = None
    S: float | None = None
    gamma_m: float | None = None
    gamma_sm: float | None = None
    Omega: float | None = None

    def __post_init__(self):
        if self.id not in SCENARIO_IDS:
            raise ValidationError("scenario.preset", f"unknown preset {self.id!r}; expected one of {SCENARIO_IDS}")
        if self.units not in UNITS:
            raise ValidationError("scenario.units", f"expected one of {UNITS}")
        if self.units == "absolute" and self.omega_m is None:
            raise ValidationError("scenario.omega_m", "required when units = absolute")
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name not in ("id", "units") and v is not None and not math.isfinite(v):
                raise ValidationError(f"scenario.{f.name}", "must be finite")

    @property
    def overrides(self) -> dict:
        return {
            f.name: getattr(self, f.name)
            for f in fields(self)
            if f.name not in ("id", "units") and getattr(self, f.name) is not None
        }

    def resolved(self) -> dict:
        """Every physical quantity after applying preset, unit system and overrides."""
        nbar, N, J = PRESETS[self.id]
        unit = TWO_PI * (MHZ if self.units == "absolute" else 1.0)
        out = {k: v * unit for k, v in BASE_RATES.items()}
        out.update(omega_m=1.0, nbar=nbar, N=N, J=J, M=None)
        out.update(self.overrides)
        if out["M"] is None:
            out["M"] = ideal_squeezing_m(out["N"]) if out["N"] >= 0 else 0.0
        return out

    def system_params(self, delta_over_omega_m: float = 0.0) -> SystemParams:
        r = self.resolved()
        cav = CavityParams(
            omega_m=r["omega_m"],
            kappa=r["kappa"],
            gamma_m=r["gamma_m"],
            gamma_sm=r["gamma_sm"],
            Omega=r["Omega"],
            Delta=delta_over_omega_m * r["omega_m"],
            mu=r["mu"],
            S=r["S"],
            nbar=r["nbar"],
        )
        return SystemParams(cavity_a=cav, cavity_b=cav, J=r["J"], N_sq=r["N"], M_sq=r["M"])


def preset(scenario_id: str, **overrides) -> Scenario:
    return Scenario(id=scenario_id, **overrides)


def catalog_text() -> str:
    from ..cvmodel import BLOCKS, StateIndex

    lines = ['Scenario presets (rates in units of omega_m; "x 2pi MHz" is read as x 2pi omega_m):']
    for k in ("kappa", "mu", "S", "gamma_m", "gamma_sm", "Omega"):
        lines.append(f"  {k:9s}= {BASE_RATES[k]:g} x 2pi")
    lines.append("  id   nbar      N     J     M")
    for sid in ("a", "b", "c", "d"):
        nbar, N, J = PRESETS[sid]
        lines.append(f"  {sid:3s}  {nbar:<8g}  {N:<4g}  {J:<4g}  {ideal_squeezing_m(N):.6g}")
    lines.append("")
    lines.append("Quadrature order (1-based):")
    lines.append("  " + ", ".join(f"{i.value}={i.name}" for i in StateIndex))
    lines.append("Two-mode blocks:")
    names = {
        1: "mirror A / field A", 2: "mirror B / field B", 3: "mirror A / mirror B",
        4: "field A / field B", 5: "mirror A / BEC A", 6: "mirror B / BEC B",
        7: "field A / BEC A", 8: "field B / BEC B",
    }
    for b, idx in BLOCKS.items():
        lines.append(f"  {b}: {{{', '.join(map(str, idx))}}}  {names[b]}")
    return "\n".join(lines)
