from __future__ import annotations

from enum import Enum

from ..lattice.operators import commutator, cyclic_shift, lift_coin, max_norm
from ..lattice.pauli import Basis2x2
from ..lattice.types import Basis, LatticeOperator


class SymmetryKind(str, Enum):
    """Symmetries probed by commutator witnesses.

    Translations act on the staggered lattice: T1 is one staggered site, T2 one
    non-staggered site, T4 two non-staggered sites. GAMMA5 is ``sigma^1`` on
    every site in the LR basis.
    """

    T1_STAGGERED = "T1_staggered"
    T2_STAGGERED = "T2_staggered"
    T4_STAGGERED = "T4_staggered"
    GAMMA5 = "Gamma5"

    @property
    def basis(self) -> Basis:
        return Basis.LR_POSITION if self is SymmetryKind.GAMMA5 else Basis.STAGGERED_POSITION

    @property
    def steps(self) -> int:
        return {SymmetryKind.T1_STAGGERED: 1, SymmetryKind.T2_STAGGERED: 2, SymmetryKind.T4_STAGGERED: 4}.get(self, 0)


class SymmetryMixin:
    def symmetry_witness(self, op: LatticeOperator, symmetry: SymmetryKind | str) -> float:
        """``||[op, S]||_max``; zero exactly when ``op`` has the symmetry ``S``.

        Parameters
        ----------
        op : LatticeOperator
            In the staggered basis for translations, in the LR basis for ``Gamma5``.
        symmetry : SymmetryKind or str

        Returns
        -------
        float

        Raises
        ------
        ValueError
            If ``op`` is in the wrong basis for the requested symmetry.
        """
        symmetry = SymmetryKind(symmetry)
        if op.basis is not symmetry.basis:
            self.logger.error(f"symmetry_witness: {symmetry.value} needs {symmetry.basis.value}, '{op.label}' is {op.basis.value}")
            raise ValueError(f"Symmetry {symmetry.value} is defined in the {symmetry.basis.value} basis; '{op.label}' is in {op.basis.value}.")
        if symmetry is SymmetryKind.GAMMA5:
            generator = lift_coin(Basis2x2.GAMMA_5, op.params.n_sites)
        else:
            generator = cyclic_shift(op.params.dim, symmetry.steps)
        witness = max_norm(commutator(op.matrix, generator))
        self.logger.debug(f"symmetry_witness: '{op.label}' vs {symmetry.value} -> {witness:.3e}")
        return witness
