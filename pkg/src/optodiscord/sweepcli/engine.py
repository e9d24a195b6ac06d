"""Discord-versus-detuning sweep."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from ..cvmodel import build_diffusion, build_drift
from ..errors import OptoDiscordError, UnstableDrift
from ..gaussian import extract_block, gaussian_discord
from ..linalg import solve_lyapunov
from .config import SweepSpec

log = logging.getLogger(__name__)

NAN = float("nan")


@dataclass(frozen=True)
class OutputRow:
    delta_over_omega_m: float
    block_id: int
    discord: float = NAN
    s_minus: float = NAN
    s_plus: float = NAN
    s_pt_minus: float = NAN
    s_pt_plus: float = NAN
    b1: float = NAN
    b2: float = NAN
    b3: float = NAN
    b4: float = NAN
    clamped: bool = False
    stable: bool = False
    error: str | None = None
    warnings: tuple = ()

    @property
    def has_discord(self) -> bool:
        return self.stable and self.error is None and math.isfinite(self.discord)


def evaluate_point(spec: SweepSpec, x: float, detuning: str = "langevin") -> list[OutputRow]:
    """All requested blocks at one normalized detuning. Never raises on numerical failure."""
    params = spec.scenario.system_params(x)
    try:
        C = solve_lyapunov(build_drift(params, detuning=detuning), build_diffusion(params))
    except UnstableDrift as exc:
        return [OutputRow(x, b, stable=False, error=str(exc)) for b in spec.blocks]
    except OptoDiscordError as exc:
        return [OutputRow(x, b, stable=False, error=f"{type(exc).__name__}: {exc}") for b in spec.blocks]

    rows = []
    for b in spec.blocks:
        try:
            rep = gaussian_discord(extract_block(C, b), variant=spec.discord_variant)
        except (OptoDiscordError, ValueError) as exc:
            rows.append(OutputRow(x, b, stable=True, error=f"{type(exc).__name__}: {exc}"))
            continue
        inv = rep.invariants
        rows.append(
            OutputRow(
                delta_over_omega_m=x,
                block_id=b,
                discord=rep.discord,
                s_minus=rep.s_minus,
                s_plus=rep.s_plus,
                s_pt_minus=rep.s_pt_minus,
                s_pt_plus=rep.s_pt_plus,
                b1=inv.b1,
                b2=inv.b2,
                b3=inv.b3,
                b4=inv.b4,
                clamped=rep.clamped,
                stable=True,
                warnings=rep.warnings,
            )
        )
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1, detuning: str = "langevin") -> list[OutputRow]:
    """Evaluate every grid point; rows come back sorted by (block_id, grid index)."""
    grid = spec.grid
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_point = list(pool.map(lambda x: evaluate_point(spec, x, detuning), grid))
    else:
        per_point = [evaluate_point(spec, x, detuning) for x in grid]

    keyed = []
    for i, rows in enumerate(per_point):
        for r in rows:
            keyed.append(((r.block_id, i), r))
    keyed.sort(key=lambda kr: kr[0])
    out = [r for _, r in keyed]
    n_warn = sum(bool(r.warnings) for r in out)
    if n_warn:
        log.warning("%d of %d rows carry physicality warnings", n_warn, len(out))
    return out
