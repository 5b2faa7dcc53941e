from __future__ import annotations

import numpy as np

from ..lattice.operators import cyclic_shift, lift_coin, max_norm
from ..lattice.pauli import Basis2x2
from ..lattice.types import Basis, LatticeOperator, OperatorKind, WalkParams

MASS_REPRESENTATIONS = ("left_right", "naive")


def left_right_transport(params: WalkParams) -> np.ndarray:
    """Massless left-right matrix: ``(-i/a)(1 - T^dag)`` on L rows, ``(-i/a)(T - 1)`` on R rows."""
    n = params.n_sites
    eye = np.eye(n, dtype=complex)
    shift = cyclic_shift(n)
    mat = np.zeros((2 * n, 2 * n), dtype=complex)
    mat[:n, n:] = (-1j / params.a) * (eye - shift.conj().T)
    mat[n:, :n] = (-1j / params.a) * (shift - eye)
    return mat


def naive_transport(params: WalkParams) -> np.ndarray:
    """Symmetric difference ``(-i/2a) alpha^1 (T - T^dag)``."""
    shift = cyclic_shift(params.n_sites)
    return (-1j / (2.0 * params.a)) * np.kron(Basis2x2.ALPHA_1, shift - shift.conj().T)


def mass_matrix(params: WalkParams, representation: str = "left_right") -> np.ndarray:
    """``m sigma^3`` (left-right) or ``m (-sigma^2)`` (naive family) on every site."""
    beta = Basis2x2.ALPHA_0 if representation == "left_right" else -Basis2x2.SIGMA_2
    return params.m * lift_coin(beta, params.n_sites)


class HamiltoniansCoreMixin:
    def build_left_right(self, params: WalkParams | None = None) -> LatticeOperator:
        """Left-right Hamiltonian: antidiagonal transport plus ``m alpha^0``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        LatticeOperator
            Hermitian matrix in the LR basis; ``-i H`` reproduces the left-right
            equations of motion with periodic wrap.
        """
        params = self.walk_client.resolve_params(params)
        self.logger.debug(f"build_left_right: {params.describe()}")
        mat = left_right_transport(params) + mass_matrix(params, "left_right")
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_left_right")

    def build_right_left(self, params: WalkParams | None = None) -> LatticeOperator:
        """Right-left transport ``sigma^1 H^t sigma^1``."""
        params = self.walk_client.resolve_params(params)
        flip = lift_coin(Basis2x2.SIGMA_1, params.n_sites)
        mat = flip @ left_right_transport(params) @ flip
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_right_left")

    def build_naive(self, params: WalkParams | None = None) -> LatticeOperator:
        """Naive Hamiltonian: symmetric-difference transport with mass term ``m (-sigma^2)``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        LatticeOperator
            Hermitian matrix in the LR basis.
        """
        params = self.walk_client.resolve_params(params)
        self.logger.debug(f"build_naive: {params.describe()}")
        mat = naive_transport(params) + mass_matrix(params, "naive")
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_naive")

    def build_wilson_parts(self, params: WalkParams | None = None) -> tuple[LatticeOperator, LatticeOperator]:
        """Split the Wilson term into its on-site and nearest-neighbour pieces.

        Returns
        -------
        tuple[LatticeOperator, LatticeOperator]
            ``(H_d, H_nn)`` with ``H_d = (r/a) alpha^0`` and
            ``H_nn = -(r/2a) alpha^0 (T + T^dag)``.
        """
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        shift = cyclic_shift(n)
        diagonal = (params.r / params.a) * lift_coin(Basis2x2.ALPHA_0, n)
        hops = -(params.r / (2.0 * params.a)) * np.kron(Basis2x2.ALPHA_0, shift + shift.conj().T)
        return (
            LatticeOperator(diagonal, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_wilson_diagonal"),
            LatticeOperator(hops, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_wilson_nearest_neighbour"),
        )

    def build_wilson(self, params: WalkParams | None = None) -> LatticeOperator:
        """Naive Hamiltonian plus the Wilson term ``(r/2a) alpha^0 (2 - T - T^dag)``.

        Parameters
        ----------
        params : WalkParams, optional
            Wilson parameter is ``params.r``; ``r = 0`` gives back the naive Hamiltonian.

        Returns
        -------
        LatticeOperator
            Hermitian matrix in the LR basis.
        """
        params = self.walk_client.resolve_params(params)
        self.logger.debug(f"build_wilson: r={params.r}, {params.describe()}")
        diagonal, hops = self.build_wilson_parts(params)
        mat = naive_transport(params) + mass_matrix(params, "naive") + diagonal.matrix + hops.matrix
        return LatticeOperator(mat, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_wilson")

    def build_staggered(self, params: WalkParams | None = None) -> LatticeOperator:
        """Scalar Hamiltonian on the 2N-site lattice with spacing ``a' = a/2``.

        Hops ``-i/(2a')`` forward and ``+i/(2a')`` backward, staggered mass ``m (-1)^n``.
        """
        params = self.walk_client.resolve_params(params)
        self.logger.debug(f"build_staggered: {params.describe()}")
        a_prime = params.a / 2.0
        shift = cyclic_shift(params.dim)
        parity = (-1.0) ** np.arange(params.dim)
        mat = (-1j / (2.0 * a_prime)) * (shift - shift.conj().T) + np.diag(params.m * parity)
        return LatticeOperator(mat, Basis.STAGGERED_POSITION, params, OperatorKind.HERMITIAN, "H_staggered")

    def build_mass(self, params: WalkParams | None = None, representation: str = "left_right") -> LatticeOperator:
        """Mass term alone in the requested representation (``left_right`` or ``naive``)."""
        params = self.walk_client.resolve_params(params)
        if representation not in MASS_REPRESENTATIONS:
            self.logger.error(f"build_mass: unknown representation {representation!r}")
            raise ValueError(f"Unknown mass representation '{representation}'. Must be one of: {list(MASS_REPRESENTATIONS)}")
        return LatticeOperator(mass_matrix(params, representation), Basis.LR_POSITION, params, OperatorKind.HERMITIAN, f"H_mass_{representation}")

    def split_on_inter(self, h_transport: LatticeOperator) -> tuple[LatticeOperator, LatticeOperator]:
        """Split the left-right transport into on-site and inter-site parts.

        Parameters
        ----------
        h_transport : LatticeOperator
            Massless left-right transport in the LR basis.

        Returns
        -------
        tuple[LatticeOperator, LatticeOperator]
            ``(H_on, H_int)``: ``H_on = sigma^2 / a`` on each site, ``H_int`` the
            remaining hop between neighbouring sites. Their sum is the input.

        Raises
        ------
        ValueError
            If the input is not the left-right transport matrix of its lattice.
        """
        params = h_transport.params
        if h_transport.basis is not Basis.LR_POSITION:
            self.logger.error(f"split_on_inter: '{h_transport.label}' is not in the LR basis")
            raise ValueError("split_on_inter expects the left-right transport in the lr_position basis.")
        mismatch = max_norm(h_transport.matrix - left_right_transport(params))
        if mismatch > 1e-12:
            self.logger.error(f"split_on_inter: input deviates from the left-right transport by {mismatch:.3e}")
            raise ValueError(f"Input is not the left-right transport Hamiltonian (max deviation {mismatch:.3e}).")

        on_site = lift_coin(Basis2x2.SIGMA_2, params.n_sites) / params.a
        inter = h_transport.matrix - on_site
        self.logger.debug("split_on_inter: transport split into on-site and inter-site parts")
        return (
            LatticeOperator(on_site, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_on"),
            LatticeOperator(inter, Basis.LR_POSITION, params, OperatorKind.HERMITIAN, "H_int"),
        )
