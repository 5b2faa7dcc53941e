from __future__ import annotations

import numpy as np

from ..lattice.operators import cyclic_shift, lift_coin
from ..lattice.pauli import Basis2x2, pauli_rotation
from ..lattice.types import Basis, LatticeOperator, OperatorKind, WalkParams
from .factors import CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator


class NaiveWalksMixin:
    def build_right_left_dtqw(self, params: WalkParams | None = None) -> WalkOperator:
        """``sigma^1 U_int U_on sigma^1`` at doubled spacing, written ``S^R C(-theta~) S^L C(theta~)``."""
        params = self.walk_client.resolve_params(params)
        theta = params.theta_tilde
        factors = [ShiftOp(ShiftKind.SR), CoinOp(-theta), ShiftOp(ShiftKind.SL), CoinOp(theta)]
        return WalkOperator.from_factors(factors, params, "U_right_left_2a", radius=1)

    def build_naive_dtqw(self, params: WalkParams | None = None) -> WalkOperator:
        """Massless naive-fermion walk ``S^R C(-theta~) S C(theta~) S (S^R)^-1``.

        It is the product of the right-left and left-right transport steps at
        doubled spacing, so it uses ``delta~ = delta/2``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Unitary with propagation radius 2.
        """
        params = self.walk_client.resolve_params(params)
        theta = params.theta_tilde
        factors = [
            ShiftOp(ShiftKind.SR),
            CoinOp(-theta),
            ShiftOp(ShiftKind.S),
            CoinOp(theta),
            ShiftOp(ShiftKind.S),
            ShiftOp(ShiftKind.SR, inverse=True),
        ]
        walk = WalkOperator.from_factors(factors, params, "U_naive_transport", radius=2)
        self.logger.info(f"Built U_naive_transport (theta_tilde={theta:.6g}).")
        return walk

    def build_naive_mass(self, params: WalkParams | None = None) -> WalkOperator:
        """``exp(-i dt m (-sigma^2))`` on every site."""
        params = self.walk_client.resolve_params(params)
        # -sigma^2 squares to one, so exp(-i x (-sigma^2)) = exp(-i (-sigma^2) (2x)/2)
        coin = pauli_rotation(-Basis2x2.SIGMA_2, 2.0 * params.dt * params.m)
        return WalkOperator.from_factors([LocalFactor("U_naive_mass", lift_coin(coin, params.n_sites))], params, "U_naive_mass", radius=0)

    def build_naive_walk(self, params: WalkParams | None = None) -> WalkOperator:
        """Massive naive walk ``U_naive_mass U_naive_transport``."""
        params = self.walk_client.resolve_params(params)
        return self.build_naive_mass(params).compose(self.build_naive_dtqw(params), label="U_naive")

    def build_two_angle_walk(self, theta1: float, theta2: float, params: WalkParams | None = None) -> WalkOperator:
        """Naive-type walk with two independent coin angles.

        Builds ``S^R C(-theta1) S C(theta2) S (S^R)^-1``. One step reads

            L'_p = s1 s2 L_{p+2} + c1 c2 L_p - s1 c2 R_{p+1} + c1 s2 R_{p-1}
            R'_p = -c1 s2 L_{p+1} + c1 c2 R_p + s1 c2 L_{p-1} + s1 s2 R_{p-2}

        with ``s_i = cos(theta_i/2)`` and ``c_i = sin(theta_i/2)``.

        Parameters
        ----------
        theta1, theta2 : float
            Coin angles; ``theta1 = theta2 = theta~`` gives :meth:`build_naive_dtqw`.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
        """
        params = self.walk_client.resolve_params(params)
        factors = [
            ShiftOp(ShiftKind.SR),
            CoinOp(-theta1),
            ShiftOp(ShiftKind.S),
            CoinOp(theta2),
            ShiftOp(ShiftKind.S),
            ShiftOp(ShiftKind.SR, inverse=True),
        ]
        self.logger.debug(f"build_two_angle_walk: theta1={theta1:.6g}, theta2={theta2:.6g}")
        return WalkOperator.from_factors(factors, params, "U_two_angle", radius=2)

    def two_angle_angles(self, kappa1: float, kappa2: float, params: WalkParams | None = None) -> tuple[float, float]:
        """Coin angles ``theta_i = pi - 2 kappa_i delta~`` for hopping weights ``kappa_i``."""
        params = self.walk_client.resolve_params(params)
        return np.pi - 2.0 * kappa1 * params.delta_tilde, np.pi - 2.0 * kappa2 * params.delta_tilde

    def two_angle_limit(self, kappa1: float, kappa2: float, params: WalkParams | None = None) -> LatticeOperator:
        """Continuous-time generator of the two-angle walk.

        ``i dL_p/dt = (-i/2a)(kappa1 R_{p+1} - kappa2 R_{p-1})`` and
        ``i dR_p/dt = (-i/2a)(kappa2 L_{p+1} - kappa1 L_{p-1})``; equal weights give
        the naive transport.
        """
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        shift = cyclic_shift(n)
        pref = -1j / (2.0 * params.a)
        mat = np.zeros((2 * n, 2 * n), dtype=complex)
        mat[:n, n:] = pref * (kappa1 * shift - kappa2 * shift.conj().T)
        mat[n:, :n] = pref * (kappa2 * shift - kappa1 * shift.conj().T)
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_two_angle")
