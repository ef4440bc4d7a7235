"""Run configuration: line-oriented `section.key = value` text format.

Grammar (one assignment per line):

    # full-line or trailing comments start with '#'
    physics.N0 = 0.2
    solver.cfl = 0.4

Unknown keys, duplicate keys, malformed lines and out-of-range values are
rejected with the offending line number. Floats accept decimal or scientific
notation (locale-independent); booleans accept on/off, true/false, yes/no,
1/0. `solver.dt` and `solver.cfl` are mutually exclusive.

Sections and defaults:

    physics: N0=0.2  alpha=7.2973525693e-3  a=0.0  eps_field=1e-8
    grid:    half_width=24000.0  cells=2048
    solver:  cfl=0.4 (or dt)  t_end=1500.0  displacement_terms=on
             bohm=off  nu_h=0.0  ampere_sign_flip=off
             stop_on_negative_density=off
    ic:      kind=gaussian  L=6000.0  base_e=1.01  base_p=0.01
             amplitude=2.0  epsilon=1e-6  mode=2  path=
    output:  dir=out  series_every=1  snapshot_every=40
"""

from dataclasses import dataclass, field

from .errors import ConfigError, InvalidParameterError
from .grid import Grid1D
from .kernels import PhysicsParams
from .solver import InitialCondition, SolverOptions


@dataclass
class OutputConfig:
    dir: str = "out"
    series_every: int = 1
    snapshot_every: int = 40

    def __post_init__(self):
        if self.series_every < 0 or self.snapshot_every < 0:
            raise InvalidParameterError("output cadences must be >= 0 (0 disables)")


@dataclass
class RunConfig:
    physics: PhysicsParams = field(default_factory=PhysicsParams)
    grid: Grid1D = field(default_factory=lambda: Grid1D(half_width=24000.0, cells=2048))
    solver: SolverOptions = field(default_factory=SolverOptions)
    ic: InitialCondition = field(default_factory=InitialCondition)
    output: OutputConfig = field(default_factory=OutputConfig)


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("on", "true", "yes", "1"):
        return True
    if lowered in ("off", "false", "no", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_int(text: str) -> int:
    return int(text, 10)


# (section, key) -> value parser. Keys absent from a config keep their defaults.
_SCHEMA = {
    ("physics", "N0"): float,
    ("physics", "alpha"): float,
    ("physics", "a"): float,
    ("physics", "eps_field"): float,
    ("grid", "half_width"): float,
    ("grid", "cells"): _parse_int,
    ("solver", "dt"): float,
    ("solver", "cfl"): float,
    ("solver", "t_end"): float,
    ("solver", "displacement_terms"): _parse_bool,
    ("solver", "bohm"): _parse_bool,
    ("solver", "nu_h"): float,
    ("solver", "ampere_sign_flip"): _parse_bool,
    ("solver", "stop_on_negative_density"): _parse_bool,
    ("ic", "kind"): str,
    ("ic", "L"): float,
    ("ic", "base_e"): float,
    ("ic", "base_p"): float,
    ("ic", "amplitude"): float,
    ("ic", "epsilon"): float,
    ("ic", "mode"): _parse_int,
    ("ic", "path"): str,
    ("output", "dir"): str,
    ("output", "series_every"): _parse_int,
    ("output", "snapshot_every"): _parse_int,
}


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate configuration text; defaults fill absent keys."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, value = line.partition("=")
        if not eq:
            raise ConfigError(f"line {lineno}: expected 'section.key = value', got {raw.strip()!r}")
        section, dot, key = name.strip().partition(".")
        if not dot or not section or not key.strip():
            raise ConfigError(f"line {lineno}: expected 'section.key = value', got {raw.strip()!r}")
        key = key.strip()
        value = value.strip()
        if (section, key) not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {section}.{key}")
        if (section, key) in values:
            raise ConfigError(f"line {lineno}: duplicate key {section}.{key}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {section}.{key}")
        try:
            values[(section, key)] = _SCHEMA[(section, key)](value)
        except ValueError as err:
            raise ConfigError(f"line {lineno}: bad value for {section}.{key}: {err}") from None

    if ("solver", "dt") in values and ("solver", "cfl") in values:
        raise ConfigError("solver.dt and solver.cfl are mutually exclusive; set only one")

    def section(name):
        return {key: v for (sec, key), v in values.items() if sec == name}

    try:
        return RunConfig(
            physics=PhysicsParams(**section("physics")),
            grid=Grid1D(**{"half_width": 24000.0, "cells": 2048, **section("grid")}),
            solver=SolverOptions(**section("solver")),
            ic=InitialCondition(**section("ic")),
            output=OutputConfig(**section("output")),
        )
    except InvalidParameterError as err:
        raise ConfigError(str(err)) from None


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return "on" if value else "off"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(config: RunConfig) -> str:
    """Canonical resolved-config text; parse_config(format_config(c)) == c."""
    pairs = [
        ("physics.N0", config.physics.N0),
        ("physics.alpha", config.physics.alpha),
        ("physics.a", config.physics.a),
        ("physics.eps_field", config.physics.eps_field),
        ("grid.half_width", config.grid.half_width),
        ("grid.cells", config.grid.cells),
        ("solver.t_end", config.solver.t_end),
        ("solver.displacement_terms", config.solver.displacement_terms),
        ("solver.bohm", config.solver.bohm),
        ("solver.nu_h", config.solver.nu_h),
        ("solver.ampere_sign_flip", config.solver.ampere_sign_flip),
        ("solver.stop_on_negative_density", config.solver.stop_on_negative_density),
        ("ic.kind", config.ic.kind),
        ("ic.L", config.ic.L),
        ("ic.base_e", config.ic.base_e),
        ("ic.base_p", config.ic.base_p),
        ("ic.amplitude", config.ic.amplitude),
        ("ic.epsilon", config.ic.epsilon),
        ("ic.mode", config.ic.mode),
        ("output.dir", config.output.dir),
        ("output.series_every", config.output.series_every),
        ("output.snapshot_every", config.output.snapshot_every),
    ]
    if config.solver.dt is not None:
        pairs.insert(6, ("solver.dt", config.solver.dt))
    else:
        pairs.insert(6, ("solver.cfl", config.solver.cfl))
    if config.ic.path is not None:
        pairs.append(("ic.path", config.ic.path))
    return "\n".join(f"{name} = {_fmt_value(value)}" for name, value in pairs) + "\n"
