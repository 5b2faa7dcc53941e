from __future__ import annotations

from enum import Enum

import numpy as np

from ..digitize.evolution import Trajectory
from ..digitize.factors import CoinKind, CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator
from ..lattice.operators import cyclic_shift
from ..lattice.pauli import Basis2x2
from ..lattice.types import Basis, LatticeOperator, OperatorKind, SpinorField, WalkParams
from .config import GaugeConfig


class GaugedScheme(str, Enum):
    LEFT_RIGHT = "gauged_left_right"
    NAIVE = "gauged_naive"


def temporal_phase(alpha: np.ndarray) -> LocalFactor:
    """``exp(-i alpha_p)`` on both components of site ``p``."""
    phases = np.exp(-1j * np.asarray(alpha))
    return LocalFactor("exp(-i alpha)", np.diag(np.concatenate([phases, phases])))


class GaugedWalksMixin:
    def _check_window(self, gauge: GaugeConfig, j: int, params: WalkParams, caller: str) -> None:
        try:
            gauge.check_lattice(params)
            gauge.check_time(j)
        except (IndexError, ValueError) as e:
            self.logger.error(f"{caller}: {e}")
            raise

    def build_gauged_leftright_step(self, gauge: GaugeConfig, j: int, params: WalkParams | None = None) -> WalkOperator:
        """Gauged left-right transport at time slice ``j``.

        ``C(-theta) S^R S^R_vartheta C(theta) S^L_vartheta S^L exp(-i alpha)``;
        the temporal phase acts first. Link phases ``vartheta_p`` dress the hop
        from ``p+1`` to ``p``.

        Parameters
        ----------
        gauge : GaugeConfig
            Background potentials covering the lattice.
        j : int
            Time slice, ``0 <= j < gauge.j_max``.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Unitary with radius 1; equal to ``build_dtqw_compact`` when ``A = 0``.

        Raises
        ------
        IndexError
            If ``j`` lies outside the gauge window.
        """
        params = self.walk_client.resolve_params(params)
        self._check_window(gauge, j, params, "build_gauged_leftright_step")
        vartheta = tuple(gauge.vartheta(j, params))
        factors = [
            CoinOp(-params.theta),
            ShiftOp(ShiftKind.SR),
            ShiftOp(ShiftKind.SR_PHASE, phases=vartheta),
            CoinOp(params.theta),
            ShiftOp(ShiftKind.SL_PHASE, phases=vartheta),
            ShiftOp(ShiftKind.SL),
            temporal_phase(gauge.alpha(j, params)),
        ]
        self.logger.debug(f"build_gauged_leftright_step: j={j}, q={gauge.q}")
        return WalkOperator.from_factors(factors, params, f"U_gauged_left_right[{j}]", radius=1)

    def build_gauged_naive_step(self, gauge: GaugeConfig, j: int, params: WalkParams | None = None) -> WalkOperator:
        """Gauged naive transport ``S^R C^g(-theta~) S C^g(theta~) S^L exp(-i alpha)`` at slice ``j``.

        ``C^g`` carries ``exp(+-i vartheta_p)`` on its diagonal.
        """
        params = self.walk_client.resolve_params(params)
        self._check_window(gauge, j, params, "build_gauged_naive_step")
        vartheta = tuple(gauge.vartheta(j, params))
        theta = params.theta_tilde
        factors = [
            ShiftOp(ShiftKind.SR),
            CoinOp(-theta, CoinKind.CGAUGED, vartheta),
            ShiftOp(ShiftKind.S),
            CoinOp(theta, CoinKind.CGAUGED, vartheta),
            ShiftOp(ShiftKind.SL),
            temporal_phase(gauge.alpha(j, params)),
        ]
        self.logger.debug(f"build_gauged_naive_step: j={j}, q={gauge.q}")
        return WalkOperator.from_factors(factors, params, f"U_gauged_naive[{j}]", radius=2)

    def build_gauged_step(self, scheme: GaugedScheme | str, gauge: GaugeConfig, j: int, params: WalkParams | None = None) -> WalkOperator:
        scheme = GaugedScheme(scheme)
        if scheme is GaugedScheme.LEFT_RIGHT:
            return self.build_gauged_leftright_step(gauge, j, params)
        return self.build_gauged_naive_step(gauge, j, params)

    def build_gauged_leftright_hamiltonian(self, gauge: GaugeConfig, j: int, params: WalkParams | None = None) -> LatticeOperator:
        """Continuous-time limit of the gauged left-right step.

        L rows: ``(-i/a)(1 - T^dag Theta^dag)``; R rows: ``(-i/a)(Theta T - 1)``;
        plus ``q A0[j]`` on the diagonal, with ``Theta = diag(exp(i vartheta_p))``.
        """
        params = self.walk_client.resolve_params(params)
        self._check_window(gauge, j, params, "build_gauged_leftright_hamiltonian")
        n = params.n_sites
        eye = np.eye(n, dtype=complex)
        link = np.diag(np.exp(1j * gauge.vartheta(j, params))) @ cyclic_shift(n)
        mat = np.zeros((2 * n, 2 * n), dtype=complex)
        mat[:n, n:] = (-1j / params.a) * (eye - link.conj().T)
        mat[n:, :n] = (-1j / params.a) * (link - eye)
        mat += np.diag(np.tile(gauge.q * gauge.a0[j], 2))
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, f"H_gauged_left_right[{j}]")

    def build_gauged_naive_hamiltonian(self, gauge: GaugeConfig, j: int, params: WalkParams | None = None) -> LatticeOperator:
        """Gauged naive transport ``(-i/2a) sigma^1 (Theta T - T^dag Theta^dag) + q A0[j]``."""
        params = self.walk_client.resolve_params(params)
        self._check_window(gauge, j, params, "build_gauged_naive_hamiltonian")
        link = np.diag(np.exp(1j * gauge.vartheta(j, params))) @ cyclic_shift(params.n_sites)
        mat = (-1j / (2.0 * params.a)) * np.kron(Basis2x2.SIGMA_1, link - link.conj().T)
        mat += np.diag(np.tile(gauge.q * gauge.a0[j], 2))
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, f"H_gauged_naive[{j}]")

    def evolve_gauged(self, gauge: GaugeConfig, field: SpinorField, scheme: GaugedScheme | str = GaugedScheme.LEFT_RIGHT, params: WalkParams | None = None) -> Trajectory:
        """Step through the whole gauge window, slice ``j`` driving step ``j``.

        Parameters
        ----------
        gauge : GaugeConfig
            Background potentials.
        field : SpinorField
            Initial state.
        scheme : GaugedScheme or str
            ``gauged_left_right`` or ``gauged_naive``.
        params : WalkParams, optional
            Defaults to the field's parameters.

        Returns
        -------
        Trajectory
            ``gauge.j_max + 1`` states.
        """
        params = field.params if params is None else params
        scheme = GaugedScheme(scheme)
        states = [field]
        for j in range(gauge.j_max):
            step = self.build_gauged_step(scheme, gauge, j, params)
            states.append(step.apply(states[-1]))
        trajectory = Trajectory(scheme.value, tuple(states))
        self.logger.info(f"Evolved {scheme.value} over {gauge.j_max} slices, norm drift {trajectory.norm_drift():.3e}.")
        return trajectory
