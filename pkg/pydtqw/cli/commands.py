from __future__ import annotations

import itertools
import os
from typing import Any

import numpy as np
from scipy.linalg import expm

from ..digitize import Trajectory, WalkOperator, WalkScheme
from ..gauge import GaugeConfig, GaugeTransform
from ..lattice.operators import spectral_norm
from ..lattice.types import LatticeOperator, SpinorField, WalkParams
from ..verify import LightConeReport, Verifier
from ..verify.suites import check
from .config import GAUGE_OUTPUTS, GRID_KEYS, STRAUCH, RunConfig

UNITS = "x and a in lattice length units; dt and t in time units; energies in inverse time units"
# Walks whose continuous-time limit is a single Hamiltonian kind
TARGET_HAMILTONIANS = {
    WalkScheme.LEFT_RIGHT_DTQW.value: "left_right",
    WalkScheme.NAIVE_DTQW.value: "naive",
    WalkScheme.WILSON_DTQW.value: "wilson",
}
_GRID_FIELDS = {"dt": "dt", "a": "a", "mass": "m", "wilson_r": "r"}
COVARIANCE_TRANSFORMS = 20


def _path(config: RunConfig, name: str) -> str:
    os.makedirs(config.out_dir, exist_ok=True)
    return os.path.join(config.out_dir, f"{name}.{config.format}")


def _write_table(verifier: Verifier, config: RunConfig, command: str, name: str, rows: list[dict], extra: dict[str, Any] | None = None) -> str:
    """Write ``rows`` as CSV with a parameter header, or as JSON next to the header and ``extra``."""
    path = _path(config, name)
    header = {**config.header(command), **(extra or {})}
    if config.format == "csv":
        verifier.walk_client.export_to_csv(rows, path, header_comment={"units": UNITS, **header})
    else:
        verifier.walk_client.export_to_json({"header": header, "units": UNITS, "rows": rows}, path)
    return path


def _write_report(verifier: Verifier, config: RunConfig, command: str, name: str, report: dict[str, Any]) -> str:
    path = os.path.join(config.out_dir, f"{name}.json")
    os.makedirs(config.out_dir, exist_ok=True)
    verifier.walk_client.export_to_json({"header": config.header(command), **report}, path)
    return path


def initial_state(config: RunConfig, verifier: Verifier, params: WalkParams) -> SpinorField:
    """Build the configured initial state on ``params``."""
    state = config.initial_state
    kind = state["kind"]
    lattice = verifier.lattice
    if kind == "delta_peak":
        return lattice.delta_peak(state.get("site", params.n_sites // 2), state.get("component", "L"), params)
    if kind == "gaussian":
        length = params.n_sites * params.a
        return lattice.gaussian(
            state.get("center", length / 2.0),
            state.get("width", 4.0 * params.a),
            state.get("momentum", 0.0),
            state.get("branch", "positive"),
            config.representation,
            params,
        )
    if kind == "plane_wave":
        k = 2.0 * np.pi * state.get("mode", 1) / (params.n_sites * params.a)
        return lattice.plane_wave(k, state.get("branch", "positive"), config.representation, params)
    return lattice.random_field(state.get("seed", config.seed), params)


def load_gauge(config: RunConfig, params: WalkParams, j_max: int) -> GaugeConfig:
    """The configured gauge background, or a seeded random one covering ``j_max`` steps."""
    if config.gauge is None:
        return GaugeConfig.random(max(j_max, 1), params.n_sites, seed=config.seed)
    gauge = GaugeConfig.load(config.gauge)
    gauge.check_lattice(params)
    return gauge


def build_step(config: RunConfig, verifier: Verifier, params: WalkParams) -> WalkOperator | LatticeOperator:
    """One-step evolution for an ungauged scheme; Hamiltonian kinds give ``exp(-i dt H)``."""
    if config.is_hamiltonian:
        return verifier.exponential_step(verifier.hamiltonians.build(config.scheme, params), params)
    if config.scheme == STRAUCH:
        return verifier.equivalence.strauch_operator(config.theta1, params)
    return verifier.digitizer.build_walk(config.scheme, params, config.theta1, config.theta2)


def _trajectory(config: RunConfig, verifier: Verifier, params: WalkParams) -> tuple[Trajectory, WalkOperator | LatticeOperator, GaugeConfig | None]:
    field = initial_state(config, verifier, params)
    if config.is_gauged:
        gauge = load_gauge(config, params, config.steps)
        if config.steps > gauge.j_max:
            raise ValueError(f"steps={config.steps} exceeds the gauge window of {gauge.j_max} time slices.")
        window = gauge.with_fields(gauge.a0[: config.steps], gauge.a1[: config.steps + 1]) if config.steps else gauge
        trajectory = verifier.gauge.evolve_gauged(window, field, config.scheme, params) if config.steps else Trajectory(config.scheme, (field,))
        return trajectory, verifier.gauge.build_gauged_step(config.scheme, gauge, 0, params), gauge
    step = build_step(config, verifier, params)
    return verifier.digitizer.evolve(step, field, config.steps), step, None


def cone_report(config: RunConfig, verifier: Verifier, step: WalkOperator | LatticeOperator) -> LightConeReport | None:
    """Single outside-cone scan over the run's steps, or ``None`` when it was not requested."""
    if "outside_cone_mass" not in config.outputs:
        return None
    return verifier.light_cone_scan(step, config.steps)


def evolve_summary(config: RunConfig, verifier: Verifier, params: WalkParams) -> dict[str, Any]:
    """
    Evolve once and reduce the run to a single row of scalar observables.

    Parameters
    ----------
    config : RunConfig
        Scheme, initial state, steps and requested outputs.
    verifier : Verifier
        Facade providing the builders.
    params : WalkParams
        Lattice parameters of this run.

    Returns
    -------
    dict
        Parameters, final norm, norm drift and whichever of outside-cone mass,
        zero modes and per-step error apply to the scheme.
    """
    trajectory, step, _ = _trajectory(config, verifier, params)
    row: dict[str, Any] = {"dt": params.dt, "a": params.a, "m": params.m, "r": params.r, "delta": params.delta, "steps": trajectory.steps}
    row["final_norm"] = float(trajectory.final.norm())
    row["norm_drift"] = trajectory.norm_drift()
    cone = cone_report(config, verifier, step)
    if cone is not None:
        row["outside_cone_mass"] = cone.max_outside
    if config.is_hamiltonian:
        row["zero_modes"] = verifier.count_zero_modes(verifier.hamiltonians.build(config.scheme, params))
    target = TARGET_HAMILTONIANS.get(config.scheme)
    if target is not None:
        exact = expm(-1j * params.dt * verifier.hamiltonians.build(target, params).matrix)
        row["step_error"] = spectral_norm(step.array - exact)
    return row


def _spectrum_rows(verifier: Verifier, op: LatticeOperator, params: WalkParams, energies: bool = False) -> list[dict]:
    values = verifier.sorted_spectrum(op)
    if energies:
        return [{"index": i, "energy": float(v.real)} for i, v in enumerate(values)]
    rows = []
    for i, v in enumerate(values):
        row = {"index": i, "eigenvalue": complex(v), "phase": float(np.angle(v))}
        if params.dt > 0:
            row["quasi_energy"] = float(-np.angle(v) / params.dt)
        rows.append(row)
    return rows


def _gauge_rows(verifier: Verifier, gauge: GaugeConfig, params: WalkParams, outputs: tuple[str, ...]) -> list[dict]:
    f01 = verifier.gauge.field_strength_map(gauge, params)
    u01 = verifier.gauge.plaquette_map(gauge, params)
    rows = []
    for j, p in itertools.product(range(f01.shape[0]), range(f01.shape[1])):
        row: dict[str, Any] = {"j": j, "p": p}
        if "F01" in outputs:
            row["F01"] = float(f01[j, p])
        if "U01" in outputs:
            row["U01"] = complex(u01[j, p])
        rows.append(row)
    return rows


def cmd_evolve(config: RunConfig, verifier: Verifier) -> int:
    """
    Evolve the configured initial state and write the requested observables.

    Parameters
    ----------
    config : RunConfig
        Resolved run configuration.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0``; configuration problems surface as exceptions.
    """
    params = config.params
    verifier.logger.info(f"Starting evolve: {config.scheme}, {config.steps} steps, {params.describe()}.")
    trajectory, step, gauge = _trajectory(config, verifier, params)
    tol = verifier.walk_client.tolerances["operator"]
    if trajectory.norm_drift() > tol:
        verifier.logger.warning(f"evolve: norm drift {trajectory.norm_drift():.3e} exceeds {tol:.1e}.")

    outputs: dict[str, list[dict]] = {}
    if "probability_density" in config.outputs:
        outputs["probability_density"] = trajectory.to_records()
    if "norm" in config.outputs:
        outputs["norm"] = [{"step": j, "norm": float(n)} for j, n in enumerate(trajectory.norms())]
    cone = cone_report(config, verifier, step)
    if cone is not None:
        outputs["outside_cone_mass"] = cone.to_records()
    if "spectrum" in config.outputs:
        outputs["spectrum"] = _spectrum_rows(verifier, step if isinstance(step, LatticeOperator) else step.matrix, params)
    if GAUGE_OUTPUTS & set(config.outputs):
        outputs["gauge_fields"] = _gauge_rows(verifier, gauge, params, config.outputs)

    summary = {"norm_drift": trajectory.norm_drift(), "steps": trajectory.steps}
    if cone is not None:
        summary["outside_cone_mass"] = cone.max_outside
    if config.format == "json":
        _write_report(verifier, config, "evolve", "evolve", {"summary": summary, "outputs": outputs})
    else:
        for name, rows in outputs.items():
            _write_table(verifier, config, "evolve", f"evolve_{name}", rows, summary)
    verifier.logger.info(f"Completed evolve: {len(outputs)} output(s) in {config.out_dir}.")
    return 0


def cmd_verify(config: RunConfig, verifier: Verifier) -> int:
    """
    Run one verification suite, or all of them, and write the report.

    Parameters
    ----------
    config : RunConfig
        ``config.suite`` selects a suite; ``None`` runs every suite.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0`` when every check passes, ``1`` otherwise.
    """
    suites = None if config.suite is None else [config.suite]
    report = verifier.run_all_suites(config.params, suites)
    name = f"verify_{config.suite or 'all'}"
    _write_report(verifier, config, "verify", name, report)
    if config.format == "csv":
        rows = [{"suite": suite, **row} for suite, result in report["suites"].items() for row in result["checks"]]
        _write_table(verifier, config, "verify", name, rows, {"passed": report["passed"]})
    return 0 if report["passed"] else 1


def cmd_sweep(config: RunConfig, verifier: Verifier) -> int:
    """
    Evaluate the evolve summary row at every point of the parameter grid.

    Parameters
    ----------
    config : RunConfig
        ``config.grid`` maps any of ``dt``, ``a``, ``mass``, ``wilson_r`` to value lists.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0``.

    Raises
    ------
    ValueError
        If the grid is empty or any axis has no values.
    """
    axes = [(key, config.grid[key]) for key in GRID_KEYS if key in config.grid]
    if not axes or any(not values for _, values in axes):
        verifier.logger.error("sweep: empty grid")
        raise ValueError(f"sweep needs a non-empty 'grid' over {list(GRID_KEYS)}, got {config.grid!r}.")
    verifier.logger.info(f"Starting sweep over {' x '.join(f'{key}[{len(values)}]' for key, values in axes)}.")

    rows = []
    for point in itertools.product(*(values for _, values in axes)):
        changes = {_GRID_FIELDS[key]: value for (key, _), value in zip(axes, point, strict=True)}
        params = config.params.replace(**changes)
        rows.append(evolve_summary(config, verifier, params))

    _write_table(verifier, config, "sweep", f"sweep_{config.scheme}", rows, {"grid": {key: list(values) for key, values in axes}})
    verifier.logger.info(f"Completed sweep: {len(rows)} grid point(s).")
    return 0


def cmd_spectrum(config: RunConfig, verifier: Verifier) -> int:
    """
    Write the phase-sorted spectrum of the configured scheme.

    Hamiltonian kinds give energies; walks give eigenvalues with their phases
    and quasi-energies. Gauged schemes use the step at time slice 0.

    Parameters
    ----------
    config : RunConfig
        Resolved run configuration.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0``.
    """
    params = config.params
    extra: dict[str, Any] = {}
    if config.is_hamiltonian:
        op = verifier.hamiltonians.build(config.scheme, params)
        extra["zero_modes"] = verifier.count_zero_modes(op)
    elif config.is_gauged:
        op = verifier.gauge.build_gauged_step(config.scheme, load_gauge(config, params, 1), 0, params).matrix
    else:
        step = build_step(config, verifier, params)
        op = step.matrix
    rows = _spectrum_rows(verifier, op, params, energies=config.is_hamiltonian)
    _write_table(verifier, config, "spectrum", f"spectrum_{config.scheme}", rows, extra)
    verifier.logger.info(f"Completed spectrum of '{op.label}': {len(rows)} eigenvalues.")
    return 0


def cmd_map_coeffs(config: RunConfig, verifier: Verifier) -> int:
    """
    Write the real-space coefficients of the momentum-space map and their decay.

    Parameters
    ----------
    config : RunConfig
        ``max_offset`` and ``quadrature_points`` set the table size and the quadrature.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0``.
    """
    eq = verifier.equivalence
    coeffs = eq.mapping_real_space_coefficients(config.params, config.max_offset, config.quadrature_points)
    extra = {
        "decay_ratio": eq.decay_ratio(coeffs),
        "analytic_decay_ratio": eq.analytic_decay_ratio(config.params),
        "reconstruction_error": eq.reconstruction_error(coeffs, config.params),
        "quadrature_points": config.quadrature_points,
    }
    _write_table(verifier, config, "map-coeffs", "map_coeffs", coeffs.to_records(), extra)
    verifier.logger.info(f"Completed map-coeffs: decay ratio {extra['decay_ratio']:.4g} (analytic {extra['analytic_decay_ratio']:.4g}).")
    return 0


def cmd_gauge_check(config: RunConfig, verifier: Verifier) -> int:
    """
    Check gauge covariance, gauge invariance of the field strength and invariance of plaquettes under a large shift.

    Uses the configured gauge file, or a seeded random background covering
    ``max(steps, 2)`` time slices.

    Parameters
    ----------
    config : RunConfig
        Scheme, gauge source and seed.
    verifier : Verifier
        Facade sharing the run's client.

    Returns
    -------
    int
        ``0`` when every check passes, ``1`` otherwise.
    """
    params = config.params.replace(dt=config.params.dt or 0.5 * config.params.a)
    gauge = load_gauge(config, params, max(config.steps, 2))
    tol = verifier.walk_client.tolerances["operator"]
    scheme = config.scheme if config.is_gauged else "gauged_left_right"
    verifier.logger.info(f"Starting gauge-check: {scheme}, window {gauge.window}.")

    field = verifier.lattice.random_field(config.seed, params)
    covariance = []
    for i in range(COVARIANCE_TRANSFORMS):
        transform = GaugeTransform.random(gauge.j_max, params.n_sites, seed=config.seed + i + 1)
        j = i % gauge.j_max
        covariance.append({"transform": i, "j": j, "error": verifier.gauge.covariance_error(gauge, transform, field, j, scheme, params)})

    transform = GaugeTransform.random(gauge.j_max, params.n_sites, seed=config.seed + COVARIANCE_TRANSFORMS + 1)
    f01 = verifier.gauge.field_strength_map(gauge, params)
    f01_gap = float(np.max(np.abs(f01 - verifier.gauge.field_strength_map(verifier.gauge.transform_potentials(gauge, transform, params), params))))

    w0 = np.zeros(gauge.a0.shape, dtype=int)
    w1 = np.zeros(gauge.a1.shape, dtype=int)
    j_shift = min(1, gauge.j_max - 1)
    w0[j_shift, 2 % params.n_sites] = 1
    shifted = verifier.gauge.large_gauge_shift(gauge, w0, w1, params)
    u01_gap = float(np.max(np.abs(verifier.gauge.plaquette_map(shifted, params) - verifier.gauge.plaquette_map(gauge, params))))

    checks = [
        check("max covariance error", max(row["error"] for row in covariance), tol),
        check("F01 gauge invariance", f01_gap, tol),
        check(f"large shift admissible at ({j_shift}, 1)", float(verifier.gauge.is_admissible_shift(w0, w1, j_shift, 1)), 1.0, "=="),
        check("U01 invariance under large shift", u01_gap, tol),
    ]
    passed = all(row["passed"] for row in checks)

    _write_table(verifier, config, "gauge-check", "gauge_covariance", covariance, {"scheme": scheme})
    _write_table(verifier, config, "gauge-check", "gauge_plaquettes", _gauge_rows(verifier, gauge, params, ("F01", "U01")))
    _write_report(verifier, config, "gauge-check", "gauge_check", {"passed": passed, "scheme": scheme, "checks": checks})
    verifier.logger.info(f"Completed gauge-check: {'pass' if passed else 'FAIL'}.")
    return 0 if passed else 1


COMMANDS = {
    "evolve": cmd_evolve,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "spectrum": cmd_spectrum,
    "map-coeffs": cmd_map_coeffs,
    "gauge-check": cmd_gauge_check,
}
