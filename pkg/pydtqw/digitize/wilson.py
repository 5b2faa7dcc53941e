from __future__ import annotations

import numpy as np

from ..lattice.operators import lift_coin
from ..lattice.pauli import Basis2x2
from ..lattice.types import WalkParams
from .factors import CoinKind, CoinOp, LocalFactor, ShiftKind, ShiftOp, WalkOperator


def pair_swap(n_sites: int, parity: int) -> np.ndarray:
    """Permutation exchanging sites ``(2l + parity, 2l + parity + 1)``, wrapping at the boundary."""
    mat = np.zeros((n_sites, n_sites), dtype=complex)
    for p in range(parity, n_sites + parity, 2):
        left, right = p % n_sites, (p + 1) % n_sites
        mat[left, right] = mat[right, left] = 1.0
    return mat


class WilsonWalksMixin:
    def build_wilson_dtqw(self, params: WalkParams | None = None) -> WalkOperator:
        """Digitized nearest-neighbour Wilson term.

        Written as ``G S^R K(theta~_r) S K(theta~_r) S (S^R)^-1 G^-1`` with
        ``K = i Cbreve`` and ``G = exp(i sigma^2 pi/4)``. Its continuous-time
        limit is ``-(r/2a) alpha^0 (T + T^dag)``.

        Parameters
        ----------
        params : WalkParams, optional
            Wilson parameter ``r`` enters through ``theta~_r = pi - 2 r delta~``.

        Returns
        -------
        WalkOperator
            Unitary with radius 2; the identity at ``r = 0``.
        """
        params = self.walk_client.resolve_params(params)
        theta_r = params.theta_tilde_r
        n = params.n_sites
        factors = [
            LocalFactor("G", lift_coin(Basis2x2.G, n)),
            ShiftOp(ShiftKind.SR),
            CoinOp(theta_r, CoinKind.K),
            ShiftOp(ShiftKind.S),
            CoinOp(theta_r, CoinKind.K),
            ShiftOp(ShiftKind.S),
            ShiftOp(ShiftKind.SR, inverse=True),
            LocalFactor("G^-1", lift_coin(Basis2x2.G.conj().T, n)),
        ]
        self.logger.debug(f"build_wilson_dtqw: r={params.r}, theta_tilde_r={theta_r:.6g}")
        return WalkOperator.from_factors(factors, params, "U_wilson_term", radius=2)

    def build_wilson_even_odd(self, params: WalkParams | None = None) -> WalkOperator:
        """Even-odd digitization ``G U^e_r U^o_r G^-1`` of the Wilson hopping term.

        ``U^e_r = c_r + i s_r sigma^1 X_e`` exchanges the even pairs of sites,
        ``U^o_r`` the odd pairs. Isospectral with :meth:`build_wilson_dtqw`.
        """
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        c_r, s_r = np.cos(params.delta_tilde_r), np.sin(params.delta_tilde_r)
        eye = np.eye(params.dim, dtype=complex)
        u_even = c_r * eye + 1j * s_r * np.kron(Basis2x2.SIGMA_1, pair_swap(n, 0))
        u_odd = c_r * eye + 1j * s_r * np.kron(Basis2x2.SIGMA_1, pair_swap(n, 1))
        factors = [
            LocalFactor("G", lift_coin(Basis2x2.G, n)),
            LocalFactor("U^e_r", u_even),
            LocalFactor("U^o_r", u_odd),
            LocalFactor("G^-1", lift_coin(Basis2x2.G.conj().T, n)),
        ]
        return WalkOperator.from_factors(factors, params, "U_wilson_even_odd", radius=2)

    def build_wilson_fermion_walk(self, params: WalkParams | None = None) -> WalkOperator:
        """Complete ultralocal Wilson-fermion walk.

        ``U^m_n exp(-i dt H_d) U_w U^t_n``: naive mass, on-site Wilson phase,
        digitized Wilson hopping and naive transport. Its continuous-time limit
        is the full Wilson Hamiltonian.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Unitary with radius 4.
        """
        params = self.walk_client.resolve_params(params)
        phase = params.dt * params.r / params.a
        on_site = LocalFactor("exp(-i dt H_d)", lift_coin(np.diag([np.exp(-1j * phase), np.exp(1j * phase)]), params.n_sites))
        diagonal = WalkOperator.from_factors([on_site], params, "U_wilson_diagonal", radius=0)
        walk = self.build_naive_mass(params).compose(diagonal).compose(self.build_wilson_dtqw(params)).compose(self.build_naive_dtqw(params), label="U_wilson")
        self.logger.info(f"Built U_wilson (r={params.r}, delta={params.delta:.6g}).")
        return walk
