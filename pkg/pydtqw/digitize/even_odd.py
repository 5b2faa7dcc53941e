from __future__ import annotations

import numpy as np

from ..lattice.pauli import Basis2x2
from ..lattice.types import WalkParams
from .factors import LocalFactor, WalkOperator


def pair_hop(n_sites: int, parity: int) -> np.ndarray:
    """Hermitian hop ``-i`` forward, ``+i`` backward on pairs ``(2l + parity, 2l + parity + 1)``.

    Even and odd pieces add up to ``-i (T - T^dag)``; each squares to the identity.
    """
    mat = np.zeros((n_sites, n_sites), dtype=complex)
    for p in range(parity, n_sites + parity, 2):
        left, right = p % n_sites, (p + 1) % n_sites
        mat[left, right] = -1j
        mat[right, left] = 1j
    return mat


class EvenOddWalksMixin:
    def even_odd_transport(self, params: WalkParams | None = None) -> WalkOperator:
        """Massless even-odd step ``U^e U^o``.

        ``U^e = exp(-i dt H^e)`` with ``H^e`` the naive transport restricted to
        the even links, and likewise for the odd links. Both are written in
        closed form ``c~ - i s~ sigma^1 Y``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Unitary with radius 2, invariant under translations by two sites only.
        """
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        c, s = np.cos(params.delta_tilde), np.sin(params.delta_tilde)
        eye = np.eye(params.dim, dtype=complex)
        u_even = c * eye - 1j * s * np.kron(Basis2x2.SIGMA_1, pair_hop(n, 0))
        u_odd = c * eye - 1j * s * np.kron(Basis2x2.SIGMA_1, pair_hop(n, 1))
        self.logger.debug(f"even_odd_transport: delta_tilde={params.delta_tilde:.6g}")
        return WalkOperator.from_factors([LocalFactor("U^e", u_even), LocalFactor("U^o", u_odd)], params, "U_even_odd_transport", radius=2)

    def build_even_odd(self, params: WalkParams | None = None) -> WalkOperator:
        """Massive even-odd walk ``U^m_n U^e U^o``."""
        params = self.walk_client.resolve_params(params)
        walk = self.build_naive_mass(params).compose(self.even_odd_transport(params), label="U_even_odd")
        self.logger.info(f"Built U_even_odd ({params.describe()}).")
        return walk
