"""Acceptance gate: the eight criteria at their stated tolerances.

Run with ``pytest tests/test_acceptance.py -v``; a summary line per
criterion is printed at the end of the session.
"""

import math
import time

import numpy as np
import pytest
from oracles import (
    lyapunov_kronecker,
    poly_from_roots,
    random_physical_block,
    random_psd,
    random_stable,
    rotation,
    symplectic_eigs_iomega,
    tmsv,
)

from optodiscord.gaussian import TwoModeBlock, gaussian_discord, symplectic_eigenvalues
from optodiscord.linalg import char_poly, lyapunov_residual, solve_lyapunov, spectral_abscissa
from optodiscord.stability import MARGINAL, STABLE, routh_hurwitz, stability_sweep
from optodiscord.sweepcli import Scenario, SweepSpec, run_sweep
from optodiscord.sweepcli.emit import csv_text, svg_text

PRESET_IDS = ("a", "b", "c", "d")
ALL_BLOCKS = tuple(range(1, 9))


@pytest.fixture(scope="module")
def preset_sweeps():
    """Full default-grid sweeps (0..15, 301 points, all 8 blocks) with wall times."""
    out = {}
    for sid in PRESET_IDS:
        spec = SweepSpec(scenario=Scenario(id=sid), blocks=ALL_BLOCKS)
        t0 = time.perf_counter()
        rows = run_sweep(spec)
        out[sid] = (spec, rows, time.perf_counter() - t0)
    return out


def series(rows, block_id, attr="discord"):
    return np.array([getattr(r, attr) for r in rows if r.block_id == block_id])


@pytest.mark.criterion(1, "Lyapunov residual and Kronecker oracle on 200 random stable systems")
def test_criterion_1_lyapunov():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst_res = worst_oracle = 0.0
    for k in range(200):
        n = (2, 4, 8, 12)[k % 4]
        D, F = random_stable(rng, n), random_psd(rng, n)
        C = solve_lyapunov(D, F)
        worst_res = max(worst_res, lyapunov_residual(D, C, F) / max(1.0, np.abs(F).max()))
        worst_oracle = max(worst_oracle, np.abs(C - lyapunov_kronecker(D, F)).max())
    elapsed = time.perf_counter() - t0
    print(f"\n[1] max scaled residual {worst_res:.2e}, max oracle diff {worst_oracle:.2e}, {elapsed:.2f} s")
    assert worst_res <= 1e-10
    assert worst_oracle <= 1e-9
    assert elapsed < 10.0


@pytest.mark.criterion(2, "characteristic polynomial vs eigenvalue-product oracle, 100 matrices")
def test_criterion_2_char_poly():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    worst = 0.0
    for k in range(100):
        n = 1 + k % 12
        A = rng.normal(size=(n, n))
        ref = poly_from_roots(np.linalg.eigvals(A))
        worst = max(worst, np.abs(char_poly(A) - ref).max() / np.abs(ref).max())
    elapsed = time.perf_counter() - t0
    print(f"\n[2] max relative error {worst:.2e}, {elapsed:.2f} s")
    assert worst <= 1e-8
    assert elapsed < 5.0


@pytest.mark.criterion(3, "Routh verdict equals sign of spectral abscissa, 200 random 12x12")
def test_criterion_3_stability():
    rng = np.random.default_rng(3)
    disagreements, n_stable, checked = 0, 0, 0
    while checked < 200:
        G = rng.normal(size=(12, 12)) / math.sqrt(12)
        A = G - (spectral_abscissa(G) + rng.uniform(-1.0, 1.0)) * np.eye(12)
        if np.min(np.abs(np.linalg.eigvals(A).real)) < 1e-3:
            continue
        checked += 1
        verdict = routh_hurwitz(char_poly(A)).verdict
        truth = spectral_abscissa(A) < 0
        n_stable += truth
        if verdict == MARGINAL or (verdict == STABLE) != truth:
            disagreements += 1
    print(f"\n[3] {disagreements} disagreements over {checked} matrices ({n_stable} stable)")
    assert disagreements == 0


@pytest.mark.criterion(4, "symplectic eigenvalues vs i Omega sigma oracle and TMSV partial transpose")
def test_criterion_4_symplectic():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(500):
        sigma, _, _ = random_physical_block(rng)
        got = np.array(symplectic_eigenvalues(TwoModeBlock(1, sigma)))
        worst = max(worst, np.abs(got - np.array(symplectic_eigs_iomega(sigma))).max())
    tmsv_err = 0.0
    for r in (0.0, 0.5, 1.0):
        lo, hi = symplectic_eigenvalues(TwoModeBlock(1, tmsv(r)), partial_transpose=True)
        tmsv_err = max(tmsv_err, abs(lo - math.exp(-2 * r) / 2), abs(hi - math.exp(2 * r) / 2))
    print(f"\n[4] random-block max diff {worst:.2e}, TMSV PT max diff {tmsv_err:.2e}")
    assert worst <= 1e-9
    assert tmsv_err <= 1e-9


@pytest.mark.criterion(5, "discord sanity: vacuum, local rotations, block 1 = block 2")
def test_criterion_5_discord_sanity(preset_sweeps):
    vac = gaussian_discord(TwoModeBlock(1, 0.5 * np.eye(4))).discord

    rng = np.random.default_rng(5)
    worst_rot = 0.0
    for _ in range(100):
        sigma, _, _ = random_physical_block(rng)
        R = np.zeros((4, 4))
        R[:2, :2] = rotation(rng.uniform(0, 2 * np.pi))
        R[2:, 2:] = rotation(rng.uniform(0, 2 * np.pi))
        moved = R @ sigma @ R.T
        d0 = gaussian_discord(TwoModeBlock(1, sigma)).discord
        d1 = gaussian_discord(TwoModeBlock(1, 0.5 * (moved + moved.T))).discord
        worst_rot = max(worst_rot, abs(d1 - d0))

    worst_sym = 0.0
    for sid, (_, rows, _) in preset_sweeps.items():
        worst_sym = max(worst_sym, np.abs(series(rows, 1) - series(rows, 2)).max())
    print(f"\n[5] vacuum D = {vac!r}, rotation max diff {worst_rot:.2e}, block1-block2 max diff {worst_sym:.2e}")
    assert vac == 0.0
    assert worst_rot <= 1e-9
    assert worst_sym <= 1e-9


@pytest.mark.criterion(6, "scenario (a) peak in [10, 13] above 1; (a) Routh-stable; (d) block 1 <= 1")
def test_criterion_6_qualitative(preset_sweeps):
    spec_a, rows_a, t_a = preset_sweeps["a"]
    x = np.array(spec_a.grid)
    d1 = series(rows_a, 1)
    i = int(np.nanargmax(d1))
    peak_x, peak = x[i], d1[i]

    stab = stability_sweep(spec_a.scenario.system_params(), spec_a.grid)
    n_stable = sum(r.verdict == STABLE for r in stab)

    d_d = series(preset_sweeps["d"][1], 1)
    checks = {
        "peak in [10, 13]": 10.0 <= peak_x <= 13.0,
        "peak > 1": peak > 1.0,
        "(a) Routh-stable everywhere": n_stable == len(stab),
        "(d) block 1 <= 1": bool(np.all(d_d <= 1.0)),
        "runtime < 30 s": t_a < 30.0,
    }
    print(
        f"\n[6] (a) block 1 argmax at {peak_x:g} with D = {peak:.6g}; "
        f"(a) stable at {n_stable}/{len(stab)} points; (d) block 1 max {np.nanmax(d_d):.6g}; "
        f"sweep {t_a:.2f} s for {len(x)} points x 8 blocks"
    )
    failed = [k for k, ok in checks.items() if not ok]
    assert not failed, "failed parts: " + ", ".join(failed)


@pytest.mark.criterion(7, "physicality: s_minus >= 1/2 - 1e-6 for every stable block in all presets")
def test_criterion_7_physicality(preset_sweeps):
    violations = {}
    for sid, (_, rows, _) in preset_sweeps.items():
        for r in rows:
            if r.stable and not (r.s_minus >= 0.5 - 1e-6):
                key = (sid, r.block_id)
                violations[key] = min(violations.get(key, np.inf), r.s_minus)
    for (sid, b), smin in sorted(violations.items()):
        print(f"\n[7] preset {sid} block {b}: min s_minus {smin:.6g}", end="")
    print()
    assert not violations, f"{len(violations)} (preset, block) pairs below 1/2: " + ", ".join(
        f"{sid}{b}" for sid, b in sorted(violations)
    )


@pytest.mark.criterion(8, "byte-identical CSV/SVG across repeated runs and worker counts")
def test_criterion_8_determinism():
    spec = SweepSpec(scenario=Scenario(id="d"), blocks=(1, 4, 7), steps=41)
    outputs = set()
    for workers in (1, 1, 2, 4, 8):
        rows = run_sweep(spec, workers=workers)
        outputs.add((csv_text(rows).encode(), svg_text(rows).encode()))
    print(f"\n[8] {len(outputs)} distinct (CSV, SVG) outputs over 5 runs")
    assert len(outputs) == 1
