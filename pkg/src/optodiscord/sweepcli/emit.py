"""CSV / JSON / SVG writers. Output is byte-deterministic for identical rows."""

from __future__ import annotations

import json
import math
from itertools import groupby
from pathlib import Path
from xml.sax.saxutils import escape

CSV_HEADER = "delta_over_omega_m,block_id,discord,s_minus,s_plus,s_pt_minus,s_pt_plus,b1,b2,b3,b4,clamped,stable"
_FLOAT_COLS = ("discord", "s_minus", "s_plus", "s_pt_minus", "s_pt_plus", "b1", "b2", "b3", "b4")


def fmt(x: float) -> str:
    """12 significant digits; non-finite values become an empty field."""
    if x is None or not math.isfinite(x):
        return ""
    s = format(x, ".12g")
    return "0" if s == "-0" else s


def _write(path, text: str):
    path = Path(path)
    try:
        if path.parent != Path("."):
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def csv_text(rows) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        cells = [fmt(r.delta_over_omega_m), str(r.block_id)]
        cells += [fmt(getattr(r, c)) for c in _FLOAT_COLS]
        cells += ["true" if r.clamped else "false", "true" if r.stable else "false"]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(rows, path):
    return _write(path, csv_text(rows))


def json_text(rows, meta: dict | None = None) -> str:
    def val(x):
        return x if isinstance(x, (int, str, bool)) or x is None else (float(fmt(x)) if fmt(x) else None)

    records = []
    for r in rows:
        rec = {"delta_over_omega_m": val(r.delta_over_omega_m), "block_id": r.block_id}
        rec.update({c: val(getattr(r, c)) for c in _FLOAT_COLS})
        rec.update(clamped=r.clamped, stable=r.stable, error=r.error, warnings=list(r.warnings))
        records.append(rec)
    return json.dumps({"meta": meta or {}, "rows": records}, indent=1, sort_keys=True) + "\n"


def emit_json(rows, path, meta: dict | None = None):
    return _write(path, json_text(rows, meta))


# SVG layout
_W, _H = 640, 420
_ML, _MR, _MT, _MB = 70, 20, 20, 55
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


def _nice_ticks(lo, hi, n=6):
    span = hi - lo
    raw = span / max(n - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(0.0 if abs(t) < 1e-12 * step else t)
        t += step
    return ticks


def svg_text(rows) -> str:
    rows = list(rows)
    if not rows:
        raise ValueError("need rows for at least one block")
    xs = [r.delta_over_omega_m for r in rows]
    ys = [r.discord for r in rows if r.has_discord] + [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    if x1 == x0:
        x1 = x0 + 1.0
    y0, y1 = min(ys), max(ys)
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    pw, ph = _W - _ML - _MR, _H - _MT - _MB

    def X(v):
        return _ML + (v - x0) / (x1 - x0) * pw

    def Y(v):
        return _MT + (y1 - v) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
    ]
    for t in _nice_ticks(x0, x1):
        out.append(f'<line x1="{X(t):.2f}" y1="{_MT + ph}" x2="{X(t):.2f}" y2="{_MT + ph + 5}" stroke="#000"/>')
        out.append(f'<text x="{X(t):.2f}" y="{_MT + ph + 18}" font-size="11" text-anchor="middle">{t:g}</text>')
    for t in _nice_ticks(y0, y1):
        out.append(f'<line x1="{_ML - 5}" y1="{Y(t):.2f}" x2="{_ML}" y2="{Y(t):.2f}" stroke="#000"/>')
        out.append(f'<text x="{_ML - 8}" y="{Y(t) + 4:.2f}" font-size="11" text-anchor="end">{t:.4g}</text>')
    out.append(
        f'<line class="reference" x1="{_ML}" y1="{Y(1.0):.2f}" x2="{_ML + pw}" y2="{Y(1.0):.2f}" '
        'stroke="#777" stroke-dasharray="6,4"/>'
    )
    out.append(f'<text x="{_ML + pw / 2:.1f}" y="{_H - 12}" font-size="14" text-anchor="middle">Δ/ω_m</text>')
    out.append(
        f'<text x="18" y="{_MT + ph / 2:.1f}" font-size="14" text-anchor="middle" '
        f'transform="rotate(-90 18 {_MT + ph / 2:.1f})">D</text>'
    )

    ordered = sorted(rows, key=lambda r: (r.block_id, r.delta_over_omega_m))
    legend_y = _MT + 14
    for k, (bid, grp) in enumerate(groupby(ordered, key=lambda r: r.block_id)):
        color = _COLORS[(bid - 1) % len(_COLORS)]
        out.append(f'<g id="block-{bid}" stroke="{color}" fill="none">')
        segment = []
        for r in list(grp) + [None]:
            if r is not None and r.has_discord:
                segment.append(f"{X(r.delta_over_omega_m):.2f},{Y(r.discord):.2f}")
                continue
            if segment:
                out.append(f'<polyline points="{" ".join(segment)}" stroke-width="1.5"/>')
                segment = []
        out.append("</g>")
        out.append(
            f'<text x="{_ML + pw - 8}" y="{legend_y + 14 * k}" font-size="11" text-anchor="end" '
            f'fill="{color}">{escape(f"block {bid}")}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(rows, path):
    return _write(path, svg_text(rows))


def stability_csv_text(rows) -> str:
    """Table of S_0..S_n per detuning, plus both verdicts."""
    if not rows:
        return "delta_over_omega_m,verdict,spectral_abscissa,coefficients_positive\n"
    n = len(rows[0].report.coeffs) - 1
    header = ["delta_over_omega_m"] + [f"S_{i}" for i in range(n + 1)]
    header += ["coefficients_positive", "routh_positive", "verdict", "spectral_abscissa", "consistent"]
    lines = [",".join(header)]
    for r in rows:
        rep = r.report
        cells = [fmt(r.delta_over_omega_m)] + [fmt(s) for s in rep.S]
        cells += [
            "true" if rep.all_coefficients_positive else "false",
            "true" if rep.routh_positive else "false",
            rep.verdict,
            fmt(rep.spectral_abscissa),
            "true" if rep.consistent else "false",
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
