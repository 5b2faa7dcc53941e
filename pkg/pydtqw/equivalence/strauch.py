from __future__ import annotations

import numpy as np

from ..digitize.factors import CoinKind, CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator
from ..lattice.operators import lift_coin, max_norm
from ..lattice.pauli import Basis2x2
from ..lattice.types import WalkParams


class StrauchMixin:
    def strauch_operator(self, theta: float | None = None, params: WalkParams | None = None) -> WalkOperator:
        """Strauch's walk ``Sbreve K(theta) Sbreve K(theta)`` with ``Sbreve = S^-1``.

        Parameters
        ----------
        theta : float, optional
            Coin angle; defaults to ``theta~`` so that the operator tends to the
            identity as ``dt -> 0``.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Unitary with radius 2.
        """
        params = self.walk_client.resolve_params(params)
        theta = params.theta_tilde if theta is None else theta
        factors = [ShiftOp(ShiftKind.SBREVE), CoinOp(theta, CoinKind.K), ShiftOp(ShiftKind.SBREVE), CoinOp(theta, CoinKind.K)]
        self.logger.debug(f"strauch_operator: theta={theta:.6g}")
        return WalkOperator.from_factors(factors, params, "O_strauch", radius=2)

    def strauch_operator_cbreve(self, theta: float | None = None, params: WalkParams | None = None) -> WalkOperator:
        """Same operator written ``-Sbreve Cbreve(theta) Sbreve Cbreve(theta)``."""
        params = self.walk_client.resolve_params(params)
        theta = params.theta_tilde if theta is None else theta
        factors = [
            LocalFactor("-1", -np.eye(params.dim, dtype=complex)),
            ShiftOp(ShiftKind.SBREVE),
            CoinOp(theta, CoinKind.CBREVE),
            ShiftOp(ShiftKind.SBREVE),
            CoinOp(theta, CoinKind.CBREVE),
        ]
        return WalkOperator.from_factors(factors, params, "O_strauch_cbreve", radius=2)

    def strauch_passage(self, params: WalkParams | None = None) -> np.ndarray:
        """``P S^L`` with the passage matrix ``P`` on every site."""
        params = self.walk_client.resolve_params(params)
        return lift_coin(Basis2x2.P, params.n_sites) @ ShiftOp(ShiftKind.SL).to_matrix(params.n_sites)

    def strauch_conjugation_error(self, theta: float | None = None, params: WalkParams | None = None) -> float:
        """Max-norm of ``O + (P S^L) W(-theta, theta) (P S^L)^-1``, zero when the two walks are equivalent.

        ``W`` is the two-angle naive walk.
        """
        params = self.walk_client.resolve_params(params)
        theta = params.theta_tilde if theta is None else theta
        strauch = self.strauch_operator(theta, params).array
        two_angle = self.digitizer.build_two_angle_walk(-theta, theta, params).array
        passage = self.strauch_passage(params)
        conjugated = -passage @ two_angle @ passage.conj().T
        error = max_norm(strauch - conjugated)
        self.logger.info(f"Strauch conjugation residual {error:.3e} at theta={theta:.6g}.")
        return error
