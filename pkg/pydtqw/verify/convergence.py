from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from ..digitize.factors import WalkOperator
from ..lattice.operators import spectral_norm
from ..lattice.states import dirac_spinor
from ..lattice.types import Basis, LatticeOperator, WalkParams
from .reports import ConvergenceReport
from .spectral import MIN_FIT_POINTS, fit_order

SPACE_SCHEMES = ("left_right", "naive")


def _check_grid(grid: Sequence[float], name: str) -> np.ndarray:
    values = np.asarray(grid, dtype=float)
    if values.ndim != 1 or values.size < MIN_FIT_POINTS:
        raise ValueError(f"{name} grid needs at least {MIN_FIT_POINTS} values, got {values.size}.")
    if np.any(np.diff(values) >= 0):
        raise ValueError(f"{name} grid must be strictly decreasing, got {values.tolist()}.")
    if np.any(values < 0):
        raise ValueError(f"{name} grid must be non-negative, got {values.tolist()}.")
    return values


class ConvergenceMixin:
    def continuum_time_limit(
        self,
        walk_builder: Callable[[WalkParams], WalkOperator],
        hamiltonian: LatticeOperator | Callable[[WalkParams], LatticeOperator],
        dt_grid: Sequence[float],
        params: WalkParams | None = None,
        horizon: float | None = None,
        label: str = "",
    ) -> ConvergenceReport:
        """Distance between a walk and the exact exponential of its target Hamiltonian as ``dt -> 0``.

        Per step the error is ``||U(dt) - exp(-i dt H)||_2``; at the fixed horizon
        ``t = J dt`` it is ``||U(dt)^J - exp(-i t H)||_2``. A first-order splitting
        gives order 2 per step and order 1 at fixed horizon.

        Parameters
        ----------
        walk_builder : callable
            ``WalkParams -> WalkOperator``, e.g. ``Digitizer.build_left_right_walk``.
        hamiltonian : LatticeOperator or callable
            Target generator in the LR basis, or a builder taking ``WalkParams``.
        dt_grid : sequence of float
            Strictly decreasing, non-negative, at least four values.
        params : WalkParams, optional
            Base parameters; ``dt`` is replaced by each grid value.
        horizon : float, optional
            Fixed physical time, an integer multiple of every nonzero ``dt``.
            Defaults to four times the largest ``dt``.
        label : str
            Report label; defaults to the walk label.

        Returns
        -------
        ConvergenceReport
            Spectral-norm errors with both fitted orders.

        Raises
        ------
        ValueError
            On a bad grid, a horizon that is not a multiple of the step, or a
            Hamiltonian outside the LR basis.
        """
        params = self.walk_client.resolve_params(params)
        try:
            grid = _check_grid(dt_grid, "dt")
        except ValueError as e:
            self.logger.error(f"continuum_time_limit: {e}")
            raise
        horizon = 4.0 * float(grid[0]) if horizon is None else float(horizon)

        step_errors, horizon_errors = [], []
        for dt in grid:
            p = params.replace(dt=float(dt))
            walk = walk_builder(p)
            h = hamiltonian(p) if callable(hamiltonian) else hamiltonian
            if h.basis is not Basis.LR_POSITION:
                self.logger.error(f"continuum_time_limit: '{h.label}' is not in the LR basis")
                raise ValueError(f"Hamiltonian '{h.label}' must be in the lr_position basis.")
            step_errors.append(spectral_norm(walk.array - expm(-1j * dt * h.matrix)))
            if dt == 0:
                horizon_errors.append(0.0)
                continue
            n_steps = int(round(horizon / dt))
            if n_steps < 1 or abs(n_steps * dt - horizon) > 1e-9 * max(1.0, horizon):
                self.logger.error(f"continuum_time_limit: horizon {horizon} is not a multiple of dt={dt}")
                raise ValueError(f"Horizon {horizon} must be a positive integer multiple of every dt; {dt} does not divide it.")
            propagated = np.linalg.matrix_power(walk.array, n_steps)
            horizon_errors.append(spectral_norm(propagated - expm(-1j * horizon * h.matrix)))

        order, residual = self.fit_order(grid, step_errors)
        h_order, h_residual = self.fit_order(grid, horizon_errors)
        report = ConvergenceReport(
            label=label or walk.label,
            parameter="dt",
            values=tuple(float(v) for v in grid),
            errors=tuple(step_errors),
            order=order,
            residual=residual,
            norm="spectral",
            horizon=horizon,
            horizon_errors=tuple(horizon_errors),
            horizon_order=h_order,
            horizon_residual=h_residual,
        )
        self.logger.info(f"continuum_time_limit '{report.label}': per-step order {order:.3f}, fixed-horizon order {h_order:.3f}.")
        return report

    def continuum_space_limit(
        self,
        a_grid: Sequence[float],
        modes: Sequence[tuple[int, complex]] = ((1, 1.0),),
        t_final: float = 1.0,
        scheme: str = "left_right",
        params: WalkParams | None = None,
        use_walk: bool = False,
        check_aliasing: bool = True,
    ) -> ConvergenceReport:
        """Lattice evolution against exact continuum Dirac evolution as ``a -> 0``.

        The initial state is ``sum_n coef_n u(k_n) exp(i k_n x)`` with
        ``k_n = 2 pi n / L`` on a box of fixed length ``L = N a`` taken from
        ``params``; the continuum solution multiplies each mode by
        ``exp(-i sqrt(k^2 + m^2) t)``. The error is the relative discrete L2
        distance at ``t_final``.

        Parameters
        ----------
        a_grid : sequence of float
            Strictly decreasing spacings; ``L / a`` must be an even integer.
        modes : sequence of (int, complex)
            Mode numbers ``n`` and coefficients.
        t_final : float
            Evolution time.
        scheme : str
            ``left_right`` or ``naive``.
        params : WalkParams, optional
            Base parameters fixing the box length and the mass.
        use_walk : bool
            Evolve with the walk at ``dt = a^2`` (rounded to divide ``t_final``)
            instead of the exact exponential of the lattice Hamiltonian.
        check_aliasing : bool
            Reject modes with ``|k| a > pi/2`` on the coarsest grid.

        Returns
        -------
        ConvergenceReport
            State-norm errors against ``a``.
        """
        params = self.walk_client.resolve_params(params)
        if scheme not in SPACE_SCHEMES:
            self.logger.error(f"continuum_space_limit: unknown scheme {scheme!r}")
            raise ValueError(f"Unknown scheme '{scheme}'. Must be one of: {list(SPACE_SCHEMES)}")
        try:
            grid = _check_grid(a_grid, "a")
        except ValueError as e:
            self.logger.error(f"continuum_space_limit: {e}")
            raise
        if np.any(grid == 0):
            raise ValueError("Lattice spacings must be > 0.")
        length = params.n_sites * params.a
        momenta = np.array([2.0 * np.pi * n / length for n, _ in modes])
        if check_aliasing and np.max(np.abs(momenta)) * grid[0] > np.pi / 2:
            self.logger.error(f"continuum_space_limit: |k| a = {np.max(np.abs(momenta)) * grid[0]:.3f} > pi/2")
            raise ValueError("Initial data is not band-limited on the coarsest grid (|k| a > pi/2); aliasing detected.")

        errors = []
        for a in grid:
            n_sites = int(round(length / a))
            if abs(n_sites * a - length) > 1e-9 * length or n_sites % 2 or n_sites < 4:
                self.logger.error(f"continuum_space_limit: a={a} does not tile L={length} with an even site count")
                raise ValueError(f"Spacing a={a} must divide the box length {length} into an even number (>= 4) of sites.")
            p = params.replace(a=float(a), n_sites=n_sites)
            x = np.arange(n_sites) * a
            initial = np.zeros((n_sites, 2), dtype=complex)
            exact = np.zeros((n_sites, 2), dtype=complex)
            for (_, coef), k in zip(modes, momenta, strict=True):
                spinor = dirac_spinor(k, p.m, "positive", scheme)
                wave = coef * np.exp(1j * k * x)[:, None] * spinor[None, :]
                initial += wave
                exact += wave * np.exp(-1j * np.sqrt(k**2 + p.m**2) * t_final)

            vector = np.concatenate([initial[:, 0], initial[:, 1]])
            if use_walk:
                n_steps = max(1, int(round(t_final / a**2)))
                p = p.replace(dt=t_final / n_steps)
                walk = self.digitizer.build_left_right_walk(p) if scheme == "left_right" else self.digitizer.build_naive_walk(p)
                evolved = np.linalg.matrix_power(walk.array, n_steps) @ vector
            else:
                h = self.hamiltonians.build_left_right(p) if scheme == "left_right" else self.hamiltonians.build_naive(p)
                evolved = expm(-1j * t_final * h.matrix) @ vector
            target = np.concatenate([exact[:, 0], exact[:, 1]])
            errors.append(float(np.linalg.norm(evolved - target) / np.linalg.norm(vector)))

        order, residual = self.fit_order(grid, errors)
        report = ConvergenceReport(
            label=f"{scheme}{'_walk' if use_walk else ''}",
            parameter="a",
            values=tuple(float(v) for v in grid),
            errors=tuple(errors),
            order=order,
            residual=residual,
            norm="state_l2_relative",
        )
        self.logger.info(f"continuum_space_limit '{report.label}': order {order:.3f}.")
        return report
