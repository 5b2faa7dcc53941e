from __future__ import annotations

import numpy as np

from ..digitize.factors import LocalFactor, WalkOperator
from ..lattice.operators import cyclic_shift, lr_blocks
from ..lattice.pauli import Basis2x2, pauli_rotation
from ..lattice.types import WalkParams


def regroup_order(n_sites: int) -> np.ndarray:
    """Permutation from the two-site basis to the LR basis.

    New index ``eo * N + c * N/2 + l`` holds LR index ``c * N + 2l + eo``, so the
    even/odd label becomes the outermost (coin) index.
    """
    cells = n_sites // 2
    eo, c, l = np.meshgrid(np.arange(2), np.arange(2), np.arange(cells), indexing="ij")
    return (c * n_sites + 2 * l + eo).ravel()


def regroup(matrix: np.ndarray, n_sites: int) -> np.ndarray:
    """Rewrite an LR-basis matrix in the (even/odd, component, cell) basis."""
    order = regroup_order(n_sites)
    return np.asarray(matrix)[np.ix_(order, order)]


def ungroup(matrix: np.ndarray, n_sites: int) -> np.ndarray:
    """Inverse of :func:`regroup`."""
    inverse = np.argsort(regroup_order(n_sites))
    return np.asarray(matrix)[np.ix_(inverse, inverse)]


class CoinBasisMixin:
    def coin_basis_factors(self, params: WalkParams | None = None) -> dict[str, np.ndarray]:
        """Factors of the even-odd step with the even/odd label acting as the coin.

        Returns ``V``, ``C(-theta~)``, ``S^R``, ``C(theta~)``, ``S^L`` in the
        regrouped basis. ``V = diag(rho, rho^dag)`` over even/odd, ``C`` rotates
        the even/odd label and the shifts move the odd (``S^R``) or even
        (``S^L``) cells by one.
        """
        params = self.walk_client.resolve_params(params)
        cells = params.n_sites // 2
        eye_cells = np.eye(cells, dtype=complex)
        eye_inner = np.eye(2 * cells, dtype=complex)
        shift = cyclic_shift(cells)
        theta = params.theta_tilde
        return {
            "V": lr_blocks(np.kron(Basis2x2.RHO, eye_cells), np.kron(Basis2x2.RHO.conj().T, eye_cells)),
            "C(-theta)": np.kron(pauli_rotation(Basis2x2.SIGMA_2, -theta), eye_inner),
            "S^R": lr_blocks(eye_inner, np.kron(Basis2x2.IDENTITY, shift.conj().T)),
            "C(theta)": np.kron(pauli_rotation(Basis2x2.SIGMA_2, theta), eye_inner),
            "S^L": lr_blocks(np.kron(Basis2x2.IDENTITY, shift), eye_inner),
        }

    def even_odd_coin_decomposition(self, params: WalkParams | None = None) -> WalkOperator:
        """Even-odd transport as the coined walk ``V C(-theta~) S^R C(theta~) S^L V^dag`` on two-site cells.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        WalkOperator
            Factors mapped back to the LR basis; the product equals
            ``Digitizer.even_odd_transport``.
        """
        params = self.walk_client.resolve_params(params)
        n = params.n_sites
        parts = self.coin_basis_factors(params)
        ordered = [
            ("V", parts["V"]),
            ("C(-theta)", parts["C(-theta)"]),
            ("S^R", parts["S^R"]),
            ("C(theta)", parts["C(theta)"]),
            ("S^L", parts["S^L"]),
            ("V^dag", parts["V"].conj().T),
        ]
        factors = [LocalFactor(f"{name}[eo]", ungroup(mat, n)) for name, mat in ordered]
        self.logger.debug(f"even_odd_coin_decomposition: theta_tilde={params.theta_tilde:.6g}")
        return WalkOperator.from_factors(factors, params, "U_even_odd_coin_basis", radius=2)
