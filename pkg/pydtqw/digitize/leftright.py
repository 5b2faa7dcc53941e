from __future__ import annotations

import numpy as np

from ..lattice.operators import cyclic_shift, lift_coin
from ..lattice.types import WalkParams
from .factors import CoinKind, CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator


class LeftRightWalksMixin:
    def build_U_mass(self, params: WalkParams | None = None) -> WalkOperator:
        """Mass phase ``diag(mu, mu*)`` on every site, ``mu = exp(-i dt m)``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Diagonal unitary; the identity at ``m = 0``.
        """
        params = self.walk_client.resolve_params(params)
        mu = np.exp(-1j * params.dt * params.m)
        mat = lift_coin(np.diag([mu, np.conj(mu)]), params.n_sites)
        return WalkOperator.from_factors([LocalFactor("U_mass", mat)], params, "U_mass", radius=0)

    def build_U_on(self, params: WalkParams | None = None) -> WalkOperator:
        """``exp(-i dt H_on)``: rotation blocks ``[[c, -s], [s, c]]`` on each site, ``c = cos(dt/a)``."""
        params = self.walk_client.resolve_params(params)
        c, s = np.cos(params.delta), np.sin(params.delta)
        mat = lift_coin(np.array([[c, -s], [s, c]], dtype=complex), params.n_sites)
        return WalkOperator.from_factors([LocalFactor("U_on", mat)], params, "U_on", radius=0)

    def build_U_int(self, params: WalkParams | None = None) -> WalkOperator:
        """``exp(-i dt H_int)``: the same rotation between ``R_{p-1}`` and ``L_p``, wrapping periodically."""
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        c, s = np.cos(params.delta), np.sin(params.delta)
        shift = cyclic_shift(n)
        eye = np.eye(n, dtype=complex)
        mat = np.block([[c * eye, s * shift.conj().T], [-s * shift, c * eye]])
        return WalkOperator.from_factors([LocalFactor("U_int", mat)], params, "U_int", radius=1)

    def build_U_transport(self, params: WalkParams | None = None) -> WalkOperator:
        """Transport step ``U_on U_int``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Diagonal ``c^2``, neighbour couplings ``+-sc`` and next ``s^2`` entries;
            translation invariant over non-staggered sites.
        """
        params = self.walk_client.resolve_params(params)
        self.logger.debug(f"build_U_transport: delta={params.delta:.6g}")
        u_on, u_int = self.build_U_on(params), self.build_U_int(params)
        return WalkOperator.from_factors(u_on.factors + u_int.factors, params, "U_transport", radius=1)

    def build_dtqw_compact(self, params: WalkParams | None = None, swap_shifts: bool = False) -> WalkOperator:
        """Transport step as a coined walk ``C(-theta) S^R C(theta) S^L``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.
        swap_shifts : bool
            Build ``C(-theta) S^L C(theta) S^R`` instead; the product is the same.

        Returns
        -------
        WalkOperator
            Equal to :meth:`build_U_transport`.
        """
        params = self.walk_client.resolve_params(params)
        first, second = (ShiftKind.SR, ShiftKind.SL) if swap_shifts else (ShiftKind.SL, ShiftKind.SR)
        factors = [
            CoinOp(-params.theta, CoinKind.C),
            ShiftOp(second),
            CoinOp(params.theta, CoinKind.C),
            ShiftOp(first),
        ]
        label = "U_dtqw_compact_swapped" if swap_shifts else "U_dtqw_compact"
        walk = WalkOperator.from_factors(factors, params, label, radius=1)
        self.logger.info(f"Built {label} (theta={params.theta:.6g}).")
        return walk

    def build_left_right_walk(self, params: WalkParams | None = None) -> WalkOperator:
        """Massive left-right walk ``U_mass C(-theta) S^R C(theta) S^L``."""
        params = self.walk_client.resolve_params(params)
        return self.build_U_mass(params).compose(self.build_dtqw_compact(params), label="U_left_right")
