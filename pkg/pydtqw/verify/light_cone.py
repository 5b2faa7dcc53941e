from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from ..digitize.factors import WalkOperator
from ..lattice.types import Basis, LatticeOperator, OperatorKind, WalkParams
from .reports import LightConeReport


def periodic_distance(n_sites: int, origin: int) -> np.ndarray:
    sites = np.arange(n_sites)
    d = np.abs(sites - origin)
    return np.minimum(d, n_sites - d)


class LightConeMixin:
    def exponential_step(self, hamiltonian: LatticeOperator, params: WalkParams | None = None) -> LatticeOperator:
        """Exact one-step propagator ``exp(-i dt H)`` (dense, full support)."""
        params = hamiltonian.params if params is None else params
        if hamiltonian.basis is not Basis.LR_POSITION:
            hamiltonian = self.lattice.change_operator_basis(hamiltonian, Basis.LR_POSITION)
        return LatticeOperator(expm(-1j * params.dt * hamiltonian.matrix), Basis.LR_POSITION, params, OperatorKind.UNITARY, f"exp(-i dt {hamiltonian.label})")

    def light_cone_scan(
        self,
        walk: WalkOperator | LatticeOperator,
        steps: int,
        site: int | None = None,
        component: str = "L",
        radius: int | None = None,
    ) -> LightConeReport:
        """Track how far a single-site peak spreads under repeated steps.

        Parameters
        ----------
        walk : WalkOperator or LatticeOperator
            One-step evolution in the LR basis.
        steps : int
            Number of steps.
        site : int, optional
            Starting site; defaults to ``N // 2``.
        component : str
            ``"L"`` or ``"R"``.
        radius : int, optional
            Cone radius per step in non-staggered sites; defaults to the walk's
            own radius, or 1 for a plain operator.

        Returns
        -------
        LightConeReport
            Probability beyond ``radius * j`` for each step ``j`` and the final
            mass profile by distance from the start.

        Raises
        ------
        ValueError
            If the cone would wrap around the periodic lattice.
        """
        op = walk.matrix if isinstance(walk, WalkOperator) else walk
        params = op.params
        if radius is None:
            radius = walk.radius if isinstance(walk, WalkOperator) and walk.radius is not None else 1
        if params.n_sites <= 2 * radius * steps + 2:
            self.logger.error(f"light_cone_scan: N={params.n_sites} too small for radius {radius} and {steps} steps")
            raise ValueError(f"Light cone wraps: need n_sites > 2 * {radius} * {steps} + 2 = {2 * radius * steps + 2}, got {params.n_sites}.")
        origin = params.n_sites // 2 if site is None else site % params.n_sites
        distance = periodic_distance(params.n_sites, origin)
        state = self.lattice.delta_peak(origin, component, params)
        trajectory = self.digitizer.evolve(op, state, steps)

        outside = []
        for j, density in enumerate(trajectory.densities()):
            outside.append(float(np.sum(density[distance > radius * j])))
        final = trajectory.final.density()
        profile = tuple(float(np.sum(final[distance == d])) for d in range(params.n_sites // 2 + 1))
        report = LightConeReport(op.label, radius, steps, tuple(outside), profile)
        self.logger.info(f"light_cone_scan '{op.label}': max outside-cone mass {report.max_outside:.3e} over {steps} steps.")
        return report
