from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..lattice.types import Basis, LatticeOperator, SpinorField, WalkParams
from .factors import WalkOperator


class WalkScheme(str, Enum):
    """Walk builders reachable by name."""

    LEFT_RIGHT_DTQW = "left_right_dtqw"
    LEFT_RIGHT_TRANSPORT = "left_right_transport"
    NAIVE_DTQW = "naive_dtqw"
    NAIVE_TRANSPORT = "naive_transport"
    WILSON_DTQW = "wilson_dtqw"
    WILSON_TERM = "wilson_term"
    EVEN_ODD = "even_odd"
    TWO_ANGLE = "two_angle"


@dataclass(frozen=True)
class Trajectory:
    """States ``psi_0 .. psi_J`` produced by repeated application of one operator."""

    label: str
    states: tuple[SpinorField, ...]

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    @property
    def final(self) -> SpinorField:
        return self.states[-1]

    def densities(self) -> np.ndarray:
        """Probability per site, shape (J+1, N)."""
        return np.array([state.density() for state in self.states])

    def norms(self) -> np.ndarray:
        return np.array([state.norm() for state in self.states])

    def norm_drift(self) -> float:
        """Largest deviation of the norm from its initial value."""
        norms = self.norms()
        return float(np.max(np.abs(norms - norms[0])))

    def to_records(self) -> list[dict]:
        """One row per (step, site) with density and both components."""
        rows = []
        for j, state in enumerate(self.states):
            density = state.density()
            for p in range(state.params.n_sites):
                rows.append(
                    {
                        "step": j,
                        "site": p,
                        "x": p * state.params.a,
                        "density": float(density[p]),
                        "psi_L": complex(state.amplitudes[p, 0]),
                        "psi_R": complex(state.amplitudes[p, 1]),
                    }
                )
        return rows


class EvolutionMixin:
    def build_walk(self, scheme: WalkScheme | str, params: WalkParams | None = None, theta1: float | None = None, theta2: float | None = None) -> WalkOperator:
        """Build a walk by scheme name.

        Parameters
        ----------
        scheme : WalkScheme or str
            One of the ``WalkScheme`` values.
        params : WalkParams, optional
            Defaults to the client's parameters.
        theta1, theta2 : float, optional
            Coin angles of the two-angle walk; each defaults to ``theta~``.

        Returns
        -------
        WalkOperator

        Raises
        ------
        ValueError
            If the scheme name is unknown.
        """
        params = self.walk_client.resolve_params(params)
        try:
            scheme = WalkScheme(scheme)
        except ValueError as e:
            self.logger.error(f"build_walk: unknown scheme {scheme!r}")
            raise ValueError(f"Unknown walk scheme '{scheme}'. Must be one of: {[s.value for s in WalkScheme]}") from e

        if scheme is WalkScheme.TWO_ANGLE:
            theta1 = params.theta_tilde if theta1 is None else theta1
            theta2 = params.theta_tilde if theta2 is None else theta2
            return self.build_two_angle_walk(theta1, theta2, params)

        builders = {
            WalkScheme.LEFT_RIGHT_DTQW: self.build_left_right_walk,
            WalkScheme.LEFT_RIGHT_TRANSPORT: self.build_dtqw_compact,
            WalkScheme.NAIVE_DTQW: self.build_naive_walk,
            WalkScheme.NAIVE_TRANSPORT: self.build_naive_dtqw,
            WalkScheme.WILSON_DTQW: self.build_wilson_fermion_walk,
            WalkScheme.WILSON_TERM: self.build_wilson_dtqw,
            WalkScheme.EVEN_ODD: self.build_even_odd,
        }
        return builders[scheme](params)

    def apply(self, walk: WalkOperator | LatticeOperator, field: SpinorField) -> SpinorField:
        """One step ``psi -> U psi``."""
        return walk.apply(field)

    def evolve(self, walk: WalkOperator | LatticeOperator, field: SpinorField, steps: int) -> Trajectory:
        """Apply ``walk`` ``steps`` times and keep every intermediate state.

        Parameters
        ----------
        walk : WalkOperator or LatticeOperator
            One-step evolution in the LR basis.
        field : SpinorField
            Initial state.
        steps : int
            Number of steps, non-negative; zero returns the initial state alone.

        Returns
        -------
        Trajectory
        """
        if steps < 0:
            self.logger.error(f"evolve: negative step count {steps}")
            raise ValueError(f"steps must be >= 0, got {steps}.")
        op = walk.matrix if isinstance(walk, WalkOperator) else walk
        if op.basis is not Basis.LR_POSITION:
            self.logger.error(f"evolve: '{op.label}' is in the {op.basis.value} basis")
            raise ValueError(f"Operator '{op.label}' must be in the lr_position basis to evolve a SpinorField.")
        vector = field.to_vector()
        states = [field]
        for _ in range(steps):
            vector = op.matrix @ vector
            states.append(SpinorField.from_vector(vector, field.params))
        trajectory = Trajectory(walk.label, tuple(states))
        self.logger.info(f"Evolved '{walk.label}' for {steps} steps, norm drift {trajectory.norm_drift():.3e}.")
        return trajectory
