from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import yaml

from ..digitize.evolution import WalkScheme
from ..gauge import GaugedScheme
from ..hamiltonians.kinds import HamiltonianKind
from ..lattice.types import WalkParams
from ..verify.suites import SUITES

STRAUCH = "strauch"
HAMILTONIAN_SCHEMES = tuple(kind.value for kind in HamiltonianKind if not kind.is_gauged)
GAUGED_SCHEMES = tuple(scheme.value for scheme in GaugedScheme)
WALK_SCHEMES = tuple(scheme.value for scheme in WalkScheme) + (STRAUCH,)
SCHEMES = WALK_SCHEMES + GAUGED_SCHEMES + HAMILTONIAN_SCHEMES

# Schemes written in the naive (alpha^1 = sigma^1, beta = -sigma^2) representation
NAIVE_REPRESENTATION = frozenset(
    {
        WalkScheme.NAIVE_DTQW.value,
        WalkScheme.NAIVE_TRANSPORT.value,
        WalkScheme.WILSON_DTQW.value,
        WalkScheme.WILSON_TERM.value,
        WalkScheme.EVEN_ODD.value,
        WalkScheme.TWO_ANGLE.value,
        STRAUCH,
        GaugedScheme.NAIVE.value,
        HamiltonianKind.NAIVE.value,
        HamiltonianKind.WILSON.value,
    }
)

OUTPUTS = ("probability_density", "norm", "outside_cone_mass", "spectrum", "F01", "U01")
GAUGE_OUTPUTS = frozenset({"F01", "U01"})
FORMATS = ("csv", "json")
GRID_KEYS = ("dt", "a", "mass", "wilson_r")
INITIAL_STATES = {
    "delta_peak": frozenset({"site", "component"}),
    "gaussian": frozenset({"center", "width", "momentum", "branch"}),
    "plane_wave": frozenset({"mode", "branch"}),
    "random": frozenset({"seed"}),
}
RUN_KEYS = frozenset(
    {
        "scheme",
        "n_sites",
        "dt",
        "a",
        "mass",
        "wilson_r",
        "steps",
        "seed",
        "initial_state",
        "outputs",
        "gauge",
        "grid",
        "suite",
        "format",
        "out_dir",
        "theta1",
        "theta2",
        "max_offset",
        "quadrature_points",
    }
)
_PARAM_KEYS = {"a": "a", "dt": "dt", "mass": "m", "wilson_r": "r", "n_sites": "n_sites"}


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs, resolved and validated.

    File values come first, command-line flags override them. Construction
    goes through ``load_run_config`` so that errors can point at the offending
    line of the file or at the flag.
    """

    scheme: str = WalkScheme.LEFT_RIGHT_DTQW.value
    params: WalkParams = field(default_factory=WalkParams)
    steps: int = 10
    initial_state: dict[str, Any] = field(default_factory=lambda: {"kind": "delta_peak"})
    outputs: tuple[str, ...] = ("probability_density", "norm")
    gauge: str | None = None
    grid: dict[str, tuple[float, ...]] = field(default_factory=dict)
    suite: str | None = None
    format: str = "csv"
    out_dir: str = "."
    seed: int = 0
    theta1: float | None = None
    theta2: float | None = None
    max_offset: int = 8
    quadrature_points: int = 256

    @property
    def is_gauged(self) -> bool:
        return self.scheme in GAUGED_SCHEMES

    @property
    def is_hamiltonian(self) -> bool:
        return self.scheme in HAMILTONIAN_SCHEMES

    @property
    def representation(self) -> str:
        return "naive" if self.scheme in NAIVE_REPRESENTATION else "left_right"

    def header(self, command: str) -> dict[str, Any]:
        """Resolved run parameters written at the top of every output file."""
        return {"command": command, "scheme": self.scheme, "seed": self.seed, **self.params.to_dict()}


class _Source:
    """Where each key came from: a file line or a command-line flag."""

    def __init__(self, config_file: str | None, lines: dict[str, int], overridden: set[str]):
        self.config_file = config_file
        self.lines = lines
        self.overridden = overridden

    def where(self, key: str) -> str:
        if key in self.overridden:
            return f"--{key.replace('_', '-')}"
        if self.config_file and key in self.lines:
            return f"{self.config_file}:{self.lines[key]}"
        return f"'{key}'"

    def fail(self, key: str, message: str) -> ValueError:
        return ValueError(f"{self.where(key)}: {message}")


def read_config_file(config_file: str) -> tuple[dict[str, Any], dict[str, int]]:
    """
    Parse a JSON or YAML run configuration and record the line of every top-level key.

    Parameters
    ----------
    config_file : str
        Path to the file.

    Returns
    -------
    tuple of (dict, dict)
        The parsed mapping and ``{key: 1-based line number}``.

    Raises
    ------
    FileNotFoundError
        If the file does not exist.
    ValueError
        If the top level is not a mapping.
    yaml.YAMLError
        On malformed YAML or JSON.
    """
    with open(config_file) as stream:
        text = stream.read()
    node = yaml.compose(text, Loader=yaml.FullLoader)
    data = yaml.load(text, Loader=yaml.FullLoader)
    if data is None:
        return {}, {}
    if not isinstance(data, dict) or not isinstance(node, yaml.MappingNode):
        raise ValueError(f"{config_file}:1: a run configuration must be a mapping at the top level.")
    lines = {key_node.value: key_node.start_mark.line + 1 for key_node, _ in node.value}
    return data, lines


def _as_float(source: _Source, key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float) or not math.isfinite(value):
        raise source.fail(key, f"expected a finite number, got {value!r}.")
    return float(value)


def _as_int(source: _Source, key: str, value: Any, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise source.fail(key, f"expected an integer >= {minimum}, got {value!r}.")
    return value


def _initial_state(source: _Source, value: Any) -> dict[str, Any]:
    if isinstance(value, str):
        value = {"kind": value}
    if not isinstance(value, dict) or "kind" not in value:
        raise source.fail("initial_state", f"expected a mapping with a 'kind' key, got {value!r}.")
    kind = value["kind"]
    if kind not in INITIAL_STATES:
        raise source.fail("initial_state", f"unknown kind {kind!r}. Must be one of: {sorted(INITIAL_STATES)}")
    extra = sorted(set(value) - INITIAL_STATES[kind] - {"kind"})
    if extra:
        raise source.fail("initial_state", f"unknown field(s) {extra} for kind '{kind}'. Valid fields are: {sorted(INITIAL_STATES[kind])}")
    return dict(value)


def _grid(source: _Source, value: Any) -> dict[str, tuple[float, ...]]:
    if not isinstance(value, dict):
        raise source.fail("grid", f"expected a mapping of {list(GRID_KEYS)} to lists, got {value!r}.")
    unknown = sorted(set(value) - set(GRID_KEYS))
    if unknown:
        raise source.fail("grid", f"unknown grid key(s) {unknown}. Valid keys are: {list(GRID_KEYS)}")
    grid = {}
    for key in GRID_KEYS:
        if key not in value:
            continue
        points = value[key] if isinstance(value[key], list) else [value[key]]
        grid[key] = tuple(_as_float(source, "grid", v) for v in points)
    return grid


def load_run_config(config_file: str | None = None, overrides: dict[str, Any] | None = None) -> RunConfig:
    """
    Merge a run configuration file with command-line overrides and validate the result.

    Parameters
    ----------
    config_file : str, optional
        JSON or YAML run configuration.
    overrides : dict, optional
        Values from command-line flags; ``None`` entries are ignored.

    Returns
    -------
    RunConfig

    Raises
    ------
    ValueError
        On unknown keys, bad values or incompatible scheme/output choices. The
        message names the file line or the flag responsible.
    """
    data, lines = read_config_file(config_file) if config_file else ({}, {})
    overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
    source = _Source(config_file, lines, set(overrides))

    unknown_keys = sorted(set(data) - RUN_KEYS, key=lambda k: lines.get(k, 0))
    if unknown_keys:
        raise source.fail(unknown_keys[0], f"unknown key '{unknown_keys[0]}'. Valid keys are: {sorted(RUN_KEYS)}")
    merged = {**data, **overrides}

    param_kwargs = {}
    for key, name in _PARAM_KEYS.items():
        if key not in merged:
            continue
        if key == "n_sites":
            value = _as_int(source, key, merged[key], 4)
            if value % 2:
                raise source.fail(key, f"n_sites must be even, got {value}.")
        else:
            value = _as_float(source, key, merged[key])
        if key == "a" and value <= 0:
            raise source.fail(key, f"lattice spacing must be > 0, got {value}.")
        if key == "dt" and value < 0:
            raise source.fail(key, f"time step must be >= 0, got {value}.")
        param_kwargs[name] = value
    params = WalkParams(**param_kwargs)

    scheme = merged.get("scheme", RunConfig.scheme)
    if scheme not in SCHEMES:
        raise source.fail("scheme", f"unknown scheme {scheme!r}. Must be one of: {list(SCHEMES)}")

    outputs = merged.get("outputs", list(RunConfig.outputs))
    if isinstance(outputs, str):
        outputs = [outputs]
    if not isinstance(outputs, list) or not outputs:
        raise source.fail("outputs", f"expected a non-empty list drawn from {list(OUTPUTS)}, got {outputs!r}.")
    unknown = [o for o in outputs if o not in OUTPUTS]
    if unknown:
        raise source.fail("outputs", f"unknown output(s) {unknown}. Must be drawn from: {list(OUTPUTS)}")

    fmt = merged.get("format", RunConfig.format)
    if fmt not in FORMATS:
        raise source.fail("format", f"unknown format {fmt!r}. Must be one of: {list(FORMATS)}")
    suite = merged.get("suite")
    if suite is not None and suite not in SUITES:
        raise source.fail("suite", f"unknown suite {suite!r}. Must be one of: {list(SUITES)}")
    gauge = merged.get("gauge")
    if gauge is not None and not isinstance(gauge, str):
        raise source.fail("gauge", f"expected a path to a gauge configuration, got {gauge!r}.")

    config = RunConfig(
        scheme=scheme,
        params=params,
        steps=_as_int(source, "steps", merged.get("steps", RunConfig.steps)),
        initial_state=_initial_state(source, merged.get("initial_state", {"kind": "delta_peak"})),
        outputs=tuple(dict.fromkeys(outputs)),
        gauge=gauge,
        grid=_grid(source, merged["grid"]) if "grid" in merged else {},
        suite=suite,
        format=fmt,
        out_dir=str(merged.get("out_dir", RunConfig.out_dir)),
        seed=_as_int(source, "seed", merged.get("seed", RunConfig.seed)),
        theta1=_as_float(source, "theta1", merged["theta1"]) if "theta1" in merged else None,
        theta2=_as_float(source, "theta2", merged["theta2"]) if "theta2" in merged else None,
        max_offset=_as_int(source, "max_offset", merged.get("max_offset", RunConfig.max_offset), 1),
        quadrature_points=_as_int(source, "quadrature_points", merged.get("quadrature_points", RunConfig.quadrature_points), 1),
    )
    _check_compatibility(config, source)
    return config


def _check_compatibility(config: RunConfig, source: _Source) -> None:
    gauge_outputs = sorted(GAUGE_OUTPUTS & set(config.outputs))
    if gauge_outputs and not config.is_gauged:
        raise source.fail("outputs", f"{gauge_outputs} need a gauged scheme {list(GAUGED_SCHEMES)}, got '{config.scheme}'.")
    if "outside_cone_mass" in config.outputs and config.is_hamiltonian:
        raise source.fail("outputs", f"'outside_cone_mass' needs an ultralocal walk; '{config.scheme}' is evolved by the full exponential.")
    if config.gauge is not None and not config.is_gauged:
        raise source.fail("gauge", f"a gauge configuration only applies to {list(GAUGED_SCHEMES)}, got '{config.scheme}'.")
    if (config.theta1 is not None or config.theta2 is not None) and config.scheme not in (WalkScheme.TWO_ANGLE.value, STRAUCH):
        raise source.fail("theta1" if config.theta1 is not None else "theta2", f"coin angles only apply to 'two_angle' and 'strauch', got '{config.scheme}'.")
    if config.scheme == STRAUCH and config.theta2 is not None:
        raise source.fail("theta2", "'strauch' takes a single coin angle; use theta1.")
