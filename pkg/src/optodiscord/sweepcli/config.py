"""Sweep specification and its INI-style config file.

Example::

    [scenario]
    preset = a          # a, b, c, d or custom
    blocks = 1, 2, 4
    variant = standard  # or literal-paper
    # optional overrides: units, omega_m, nbar, N, J, M, kappa, mu, S,
    # gamma_m, gamma_sm, Omega

    [grid]
    start = 0
    stop = 15
    steps = 301

    [outputs]
    csv = out/sweep.csv
    json = out/sweep.json
    svg = out/sweep.svg

Keys are case-sensitive; unknown sections or keys are rejected.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, fields

from ..errors import ParseError, ValidationError
from .scenarios import Scenario

VARIANTS = ("standard", "literal-paper")
DEFAULT_GRID = (0.0, 15.0, 301)

_FLOAT_KEYS = ("omega_m", "nbar", "N", "J", "M", "kappa", "mu", "S", "gamma_m", "gamma_sm", "Omega")
SCHEMA = {
    "scenario": ("preset", "blocks", "variant", "units", *_FLOAT_KEYS),
    "grid": ("start", "stop", "steps"),
    "outputs": ("csv", "json", "svg"),
}


@dataclass(frozen=True)
class Outputs:
    csv: str | None = None
    json: str | None = None
    svg: str | None = None


@dataclass(frozen=True)
class SweepSpec:
    scenario: Scenario = field(default_factory=Scenario)
    blocks: tuple = (1,)
    start: float = DEFAULT_GRID[0]
    stop: float = DEFAULT_GRID[1]
    steps: int = DEFAULT_GRID[2]
    outputs: Outputs = field(default_factory=Outputs)
    discord_variant: str = "standard"

    def __post_init__(self):
        blocks = tuple(sorted(set(int(b) for b in self.blocks)))
        if not blocks:
            raise ValidationError("blocks", "must be non-empty")
        if any(b < 1 or b > 8 for b in blocks):
            raise ValidationError("blocks", f"block ids must lie in 1..8, got {blocks}")
        object.__setattr__(self, "blocks", blocks)
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("grid", "start and stop must be finite")
        if not self.start < self.stop:
            raise ValidationError("grid.start", f"start ({self.start}) must be < stop ({self.stop})")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValidationError("grid.steps", f"must be an integer >= 2, got {self.steps}")
        if self.discord_variant not in VARIANTS:
            raise ValidationError("variant", f"expected one of {VARIANTS}")

    @property
    def grid(self) -> list[float]:
        n = int(self.steps)
        h = (self.stop - self.start) / (n - 1)
        pts = [self.start + i * h for i in range(n)]
        pts[-1] = self.stop
        return pts


def _number(section, key, raw, cast=float):
    try:
        v = cast(raw)
    except ValueError:
        raise ValidationError(f"{section}.{key}", f"not a valid {cast.__name__}: {raw!r}") from None
    return v


def _blocks(raw):
    try:
        return tuple(int(tok) for tok in raw.replace(",", " ").split())
    except ValueError:
        raise ValidationError("scenario.blocks", f"expected a list of integers, got {raw!r}") from None


def parse_config(text: str) -> SweepSpec:
    cp = configparser.ConfigParser(
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        interpolation=None,
        strict=True,
        empty_lines_in_values=False,
        default_section="\0no-defaults",
    )
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise ParseError("key outside of any [section]", exc.lineno) from None
    except configparser.DuplicateSectionError as exc:
        raise ParseError(f"duplicate section [{exc.section}]", exc.lineno) from None
    except configparser.DuplicateOptionError as exc:
        raise ParseError(f"duplicate key {exc.option!r} in [{exc.section}]", exc.lineno) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ParseError("malformed line (expected 'key = value')", lineno) from None

    for sec in cp.sections():
        if sec not in SCHEMA:
            raise ValidationError(sec, f"unknown section [{sec}]")
        for key in cp[sec]:
            if key not in SCHEMA[sec]:
                raise ValidationError(key, f"unknown key {key!r} in [{sec}]")

    sc = cp["scenario"] if cp.has_section("scenario") else {}
    if "preset" not in sc:
        raise ValidationError("scenario.preset", "required")
    sc_kw = {"id": sc["preset"].strip()}
    if "units" in sc:
        sc_kw["units"] = sc["units"].strip()
    for k in _FLOAT_KEYS:
        if k in sc:
            sc_kw[k] = _number("scenario", k, sc[k])
    scenario = Scenario(**sc_kw)

    kw = {"scenario": scenario}
    if "blocks" in sc:
        kw["blocks"] = _blocks(sc["blocks"])
    if "variant" in sc:
        kw["discord_variant"] = sc["variant"].strip()
    if cp.has_section("grid"):
        g = cp["grid"]
        if "start" in g:
            kw["start"] = _number("grid", "start", g["start"])
        if "stop" in g:
            kw["stop"] = _number("grid", "stop", g["stop"])
        if "steps" in g:
            kw["steps"] = _number("grid", "steps", g["steps"], int)
    if cp.has_section("outputs"):
        kw["outputs"] = Outputs(**{k: v.strip() for k, v in cp["outputs"].items()})
    return SweepSpec(**kw)


def serialize_config(spec: SweepSpec) -> str:
    sc = spec.scenario
    lines = ["[scenario]", f"preset = {sc.id}", f"units = {sc.units}"]
    lines.append("blocks = " + ", ".join(str(b) for b in spec.blocks))
    lines.append(f"variant = {spec.discord_variant}")
    for k, v in sc.overrides.items():
        lines.append(f"{k} = {v!r}")
    lines += ["", "[grid]", f"start = {spec.start!r}", f"stop = {spec.stop!r}", f"steps = {int(spec.steps)}"]
    outs = [(f.name, getattr(spec.outputs, f.name)) for f in fields(Outputs)]
    outs = [(k, v) for k, v in outs if v is not None]
    if outs:
        lines += ["", "[outputs]"] + [f"{k} = {v}" for k, v in outs]
    return "\n".join(lines) + "\n"
