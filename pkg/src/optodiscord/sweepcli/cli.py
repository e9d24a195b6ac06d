"""Command-line entry point: ``optodiscord sweep|stability|info``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from ..errors import OptoDiscordError, ParameterError, ParseError, ValidationError
from ..stability import stability_sweep
from .config import DEFAULT_GRID, Outputs, SweepSpec, parse_config
from .emit import csv_text, emit_csv, emit_json, emit_plot, stability_csv_text
from .engine import run_sweep
from .scenarios import Scenario, catalog_text

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


def _blocks_arg(text):
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated block ids, got {text!r}") from None


def _add_grid_flags(p):
    p.add_argument("--scenario", choices=("a", "b", "c", "d", "custom"))
    p.add_argument("--config", type=Path, help="INI-style sweep config")
    p.add_argument("--from", dest="start", type=float)
    p.add_argument("--to", dest="stop", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--csv", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optodiscord", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="Gaussian discord versus normalized detuning")
    _add_grid_flags(sw)
    sw.add_argument("--blocks", type=_blocks_arg)
    sw.add_argument("--json", type=Path)
    sw.add_argument("--svg", type=Path)
    sw.add_argument("--variant", choices=("standard", "literal-paper"))
    sw.add_argument("--workers", type=int, default=1)

    st = sub.add_parser("stability", help="characteristic-polynomial coefficients and Routh-Hurwitz verdict")
    _add_grid_flags(st)

    sub.add_parser("info", help="print presets and index conventions")
    return parser


def spec_from_args(args) -> SweepSpec:
    if args.config is not None:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError("--config", f"cannot read {args.config}: {exc.strerror}") from None
        spec = parse_config(text)
    else:
        spec = SweepSpec(scenario=Scenario(id=args.scenario or "a"))

    changes = {}
    if args.config is not None and args.scenario is not None:
        changes["scenario"] = dataclasses.replace(spec.scenario, id=args.scenario)
    elif args.config is None and args.scenario is not None:
        changes["scenario"] = Scenario(id=args.scenario)
    for k in ("start", "stop", "steps"):
        if getattr(args, k) is not None:
            changes[k] = getattr(args, k)
    if getattr(args, "blocks", None) is not None:
        changes["blocks"] = args.blocks
    if getattr(args, "variant", None) is not None:
        changes["discord_variant"] = args.variant
    outs = {f.name: getattr(spec.outputs, f.name) for f in dataclasses.fields(Outputs)}
    for k in outs:
        v = getattr(args, k, None)
        if v is not None:
            outs[k] = str(v)
    changes["outputs"] = Outputs(**outs)
    return dataclasses.replace(spec, **changes)


def _cmd_sweep(args) -> int:
    spec = spec_from_args(args)
    rows = run_sweep(spec, workers=max(1, args.workers))
    o = spec.outputs
    if o.csv:
        emit_csv(rows, o.csv)
    if o.json:
        sc = spec.scenario
        meta = {"scenario": sc.id, "units": sc.units, "resolved": sc.resolved(),
                "variant": spec.discord_variant, "grid": [spec.start, spec.stop, spec.steps]}
        emit_json(rows, o.json, meta)
    if o.svg:
        emit_plot(rows, o.svg)
    if not (o.csv or o.json or o.svg):
        sys.stdout.write(csv_text(rows))
    if not any(r.has_discord for r in rows):
        print("error: numerical failure at every grid point", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_stability(args) -> int:
    spec = spec_from_args(args)
    rows = stability_sweep(spec.scenario.system_params(), spec.grid)
    text = stability_csv_text(rows)
    if spec.outputs.csv:
        Path(spec.outputs.csv).parent.mkdir(parents=True, exist_ok=True)
        Path(spec.outputs.csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    n_bad = sum(r.verdict != "stable" for r in rows)
    print(f"{len(rows) - n_bad}/{len(rows)} grid points Routh-stable", file=sys.stderr)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "info":
        print(catalog_text())
        print(f"\nDefault grid: Delta/omega_m from {DEFAULT_GRID[0]:g} to {DEFAULT_GRID[1]:g}, {DEFAULT_GRID[2]} points")
        return EXIT_OK
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_stability(args)
    except (ParseError, ValidationError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OptoDiscordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
