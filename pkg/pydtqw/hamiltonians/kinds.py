from __future__ import annotations

from enum import Enum
from typing import TYPE_CHECKING

import numpy as np

from ..lattice.types import LatticeOperator, WalkParams

if TYPE_CHECKING:
    from ..gauge.config import GaugeConfig


class HamiltonianKind(str, Enum):
    """Every continuous-time lattice Hamiltonian the CLI can ask for.

    ``WILSON`` takes its parameter from ``WalkParams.r``; gauged kinds need a
    ``GaugeConfig`` and a time index.
    """

    LEFT_RIGHT = "left_right"
    NAIVE = "naive"
    WILSON = "wilson"
    STAGGERED = "staggered"
    LEFT_RIGHT_GAUGED = "left_right_gauged"
    NAIVE_GAUGED = "naive_gauged"

    @property
    def is_gauged(self) -> bool:
        return self in (HamiltonianKind.LEFT_RIGHT_GAUGED, HamiltonianKind.NAIVE_GAUGED)


class HamiltonianKindsMixin:
    def build(self, kind: HamiltonianKind | str, params: WalkParams | None = None, gauge: GaugeConfig | None = None, j: int = 0) -> LatticeOperator:
        """Build a Hamiltonian by kind.

        Parameters
        ----------
        kind : HamiltonianKind or str
            Which Hamiltonian to build.
        params : WalkParams, optional
            Defaults to the client's parameters.
        gauge : GaugeConfig, optional
            Required for the gauged kinds.
        j : int
            Time slice for the gauged kinds.

        Returns
        -------
        LatticeOperator
        """
        try:
            kind = HamiltonianKind(kind)
        except ValueError as e:
            self.logger.error(f"build: unknown Hamiltonian kind {kind!r}")
            raise ValueError(f"Unknown Hamiltonian kind '{kind}'. Must be one of: {[k.value for k in HamiltonianKind]}") from e

        if kind.is_gauged and gauge is None:
            self.logger.error(f"build: {kind.value} requested without a gauge configuration")
            raise ValueError(f"Hamiltonian kind '{kind.value}' requires a GaugeConfig.")

        builders = {
            HamiltonianKind.LEFT_RIGHT: lambda: self.build_left_right(params),
            HamiltonianKind.NAIVE: lambda: self.build_naive(params),
            HamiltonianKind.WILSON: lambda: self.build_wilson(params),
            HamiltonianKind.STAGGERED: lambda: self.build_staggered(params),
            HamiltonianKind.LEFT_RIGHT_GAUGED: lambda: self.gauge.build_gauged_leftright_hamiltonian(gauge, j, params),
            HamiltonianKind.NAIVE_GAUGED: lambda: self.gauge.build_gauged_naive_hamiltonian(gauge, j, params),
        }
        op = builders[kind]()
        self.logger.info(f"Built Hamiltonian '{op.label}' ({kind.value}), dimension {op.dim}.")
        return op

    def dispersion(self, kind: HamiltonianKind | str, k: np.ndarray | float, params: WalkParams | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Analytic lattice bands ``(E_minus, E_plus)`` at momenta ``k``.

        The staggered Hamiltonian shares the left-right bands. Gauged kinds have
        no single dispersion and raise ``ValueError``.
        """
        params = self.walk_client.resolve_params(params)
        kind = HamiltonianKind(kind)
        ka = np.asarray(k, dtype=float) * params.a
        if kind in (HamiltonianKind.LEFT_RIGHT, HamiltonianKind.STAGGERED):
            energy = np.sqrt(params.m**2 + (2.0 * np.sin(ka / 2.0) / params.a) ** 2)
        elif kind is HamiltonianKind.NAIVE:
            energy = np.sqrt(params.m**2 + (np.sin(ka) / params.a) ** 2)
        elif kind is HamiltonianKind.WILSON:
            energy = np.sqrt(params.m**2 + (np.sin(ka) / params.a) ** 2 + (params.r * (1.0 - np.cos(ka)) / params.a) ** 2)
        else:
            self.logger.error(f"dispersion: no closed form for {kind.value}")
            raise ValueError(f"No analytic dispersion for Hamiltonian kind '{kind.value}'.")
        return -energy, energy
