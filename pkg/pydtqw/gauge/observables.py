from __future__ import annotations

import numpy as np

from ..lattice.types import WalkParams
from .config import GaugeConfig


class GaugeObservablesMixin:
    def _check_point(self, gauge: GaugeConfig, j: int, p: int, caller: str) -> None:
        if not 0 <= j < gauge.j_max or not 0 <= p < gauge.n_sites:
            self.logger.error(f"{caller}: ({j}, {p}) outside the window {gauge.window}")
            raise IndexError(f"Point (j={j}, p={p}) outside the gauge window {gauge.window}; F01 needs slice j+1 of A1.")

    def field_strength_map(self, gauge: GaugeConfig, params: WalkParams | None = None) -> np.ndarray:
        """``F01`` on every plaquette, shape (J, N), periodic in ``p``."""
        params = self.walk_client.resolve_params(params)
        if params.dt == 0:
            self.logger.error("field_strength_map: dt = 0")
            raise ValueError("The field strength needs dt > 0.")
        d0_a1 = (gauge.a1[1:] - gauge.a1[:-1]) / params.dt
        d1_a0 = (np.roll(gauge.a0, -1, axis=1) - gauge.a0) / params.a
        return d0_a1 + d1_a0

    def field_strength_F01(self, gauge: GaugeConfig, j: int, p: int, params: WalkParams | None = None) -> float:
        """Lattice field strength on the plaquette at ``(j, p)``.

        ``(A1[j+1, p] - A1[j, p]) / dt + (A0[j, p+1] - A0[j, p]) / a``, the
        combination left unchanged by the transformation law of the potentials.

        Parameters
        ----------
        gauge : GaugeConfig
            Background potentials.
        j, p : int
            Plaquette corner; ``j + 1`` must exist in ``A1``.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        float
        """
        self._check_point(gauge, j, p, "field_strength_F01")
        return float(self.field_strength_map(gauge, params)[j, p])

    def plaquette_map(self, gauge: GaugeConfig, params: WalkParams | None = None) -> np.ndarray:
        params = self.walk_client.resolve_params(params)
        return np.exp(1j * gauge.q * params.a * params.dt * self.field_strength_map(gauge, params))

    def plaquette_U01(self, gauge: GaugeConfig, j: int, p: int, params: WalkParams | None = None) -> complex:
        """``exp(i q a dt F01)``; also invariant under large shifts by ``2 pi`` multiples."""
        self._check_point(gauge, j, p, "plaquette_U01")
        return complex(self.plaquette_map(gauge, params)[j, p])
