from __future__ import annotations

from ..lattice.operators import lift_coin, max_norm
from ..lattice.pauli import Basis2x2
from ..lattice.spectra import eigenvalues, spectral_distance
from ..lattice.types import WalkParams


class WilsonEquivalenceMixin:
    def wilson_equivalence(self, params: WalkParams | None = None) -> dict[str, float]:
        """Equivalences involving the Wilson term.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters. The Hamiltonian rotation uses
            ``r = 1`` regardless of ``params.r``.

        Returns
        -------
        dict[str, float]
            ``rotation_residual``: max-norm of ``B H_left_right B^dag - H_wilson(r=1)``;
            ``hamiltonian_spectral_distance``: the same pair compared by eigenvalues;
            ``walk_spectral_distance``: Wilson-term walk against its even-odd version.
        """
        params = self.walk_client.resolve_params(params)
        unit_r = params.replace(r=1.0)
        rotation = lift_coin(Basis2x2.B, params.n_sites)
        h_lr = self.hamiltonians.build_left_right(unit_r).matrix
        h_w = self.hamiltonians.build_wilson(unit_r).matrix
        walk = self.digitizer.build_wilson_dtqw(params).array
        even_odd = self.digitizer.build_wilson_even_odd(params).array
        result = {
            "rotation_residual": max_norm(rotation @ h_lr @ rotation.conj().T - h_w),
            "hamiltonian_spectral_distance": spectral_distance(eigenvalues(h_lr, hermitian=True), eigenvalues(h_w, hermitian=True)),
            "walk_spectral_distance": spectral_distance(eigenvalues(walk), eigenvalues(even_odd)),
        }
        self.logger.info(f"wilson_equivalence: {result}")
        return result
