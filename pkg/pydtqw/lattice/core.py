from __future__ import annotations

import numpy as np

from .operators import cyclic_shift, staggered_order
from .types import Basis, LatticeOperator, SpinorField, StaggeredField, WalkParams


class LatticeCoreMixin:
    def stagger(self, field: SpinorField) -> StaggeredField:
        """Spread a two-component field over the 2N-site staggered lattice.

        Parameters
        ----------
        field : SpinorField
            Field on N non-staggered sites.

        Returns
        -------
        StaggeredField
            ``phi[2p] = psi_L[p]`` and ``phi[2p+1] = psi_R[p]``.
        """
        phi = np.empty(field.params.dim, dtype=complex)
        phi[0::2] = field.psi_left
        phi[1::2] = field.psi_right
        return StaggeredField(phi, field.params)

    def unstagger(self, field: StaggeredField) -> SpinorField:
        """Inverse of :meth:`stagger`."""
        phi = field.amplitudes
        return SpinorField(np.stack([phi[0::2], phi[1::2]], axis=1), field.params)

    def change_operator_basis(self, op: LatticeOperator, target: Basis) -> LatticeOperator:
        """Conjugate an operator by the interleaving permutation ``Lp -> 2p``, ``Rp -> 2p+1``.

        Parameters
        ----------
        op : LatticeOperator
            Operator in either basis.
        target : Basis
            Basis to express the operator in. When it already matches ``op.basis``
            the operator is returned unchanged.

        Returns
        -------
        LatticeOperator
            Same operator, new basis; spectrum, Hermiticity and unitarity are preserved.
        """
        target = Basis(target)
        if op.basis is target:
            self.logger.debug(f"change_operator_basis: '{op.label}' already in {target.value}, nothing to do.")
            return op

        order = staggered_order(op.params.n_sites)
        # LR -> staggered picks rows/columns in staggered order; the reverse uses the inverse permutation
        perm = order if target is Basis.STAGGERED_POSITION else np.argsort(order)
        self.logger.debug(f"change_operator_basis: '{op.label}' {op.basis.value} -> {target.value}")
        return op.with_matrix(op.matrix[np.ix_(perm, perm)], basis=target)

    def translation(self, steps: int = 1, basis: Basis = Basis.STAGGERED_POSITION, params: WalkParams | None = None) -> LatticeOperator:
        """Cyclic translation by ``steps`` staggered sites.

        ``steps=1`` is T1, ``steps=2`` is T2 (one non-staggered site). In the LR
        basis the same operator is returned after a basis change.
        """
        params = self.walk_client.resolve_params(params)
        op = LatticeOperator(cyclic_shift(params.dim, steps), Basis.STAGGERED_POSITION, params, label=f"T{steps}")
        return self.change_operator_basis(op, basis)

    def momentum_grid(self, params: WalkParams | None = None) -> np.ndarray:
        """Lattice momenta ``k = 2 pi q / (N a)`` for ``q = 0 .. N-1``."""
        params = self.walk_client.resolve_params(params)
        return 2.0 * np.pi * np.arange(params.n_sites) / (params.n_sites * params.a)
