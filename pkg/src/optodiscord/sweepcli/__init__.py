"""Scenario presets, sweep engine, emitters and the command-line interface."""

from .config import Outputs, SweepSpec, parse_config, serialize_config
from .emit import CSV_HEADER, emit_csv, emit_json, emit_plot
from .engine import OutputRow, run_sweep
from .scenarios import PRESETS, Scenario, preset

__all__ = [
    "CSV_HEADER", "OutputRow", "Outputs", "PRESETS", "Scenario", "SweepSpec",
    "emit_csv", "emit_json", "emit_plot", "parse_config", "preset", "run_sweep", "serialize_config",
]
