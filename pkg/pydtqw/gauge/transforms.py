from __future__ import annotations

import numpy as np

from ..lattice.operators import max_norm
from ..lattice.types import SpinorField, WalkParams
from .config import GaugeConfig, GaugeTransform
from .walks import GaugedScheme


class GaugeTransformsMixin:
    def transform_potentials(self, gauge: GaugeConfig, transform: GaugeTransform, params: WalkParams | None = None) -> GaugeConfig:
        """``A0 -> A0 - (phi[j+1] - phi[j]) / dt`` and ``A1 -> A1 + (phi[j, p+1] - phi[j, p]) / a``."""
        params = self.walk_client.resolve_params(params)
        try:
            transform.check_window(gauge)
        except ValueError as e:
            self.logger.error(f"transform_potentials: {e}")
            raise
        if params.dt == 0:
            self.logger.error("transform_potentials: dt = 0")
            raise ValueError("Gauge transformations of A0 need dt > 0.")
        phi = transform.phi
        a0 = gauge.a0 - (phi[1:] - phi[:-1]) / params.dt
        a1 = gauge.a1 + (np.roll(phi, -1, axis=1) - phi) / params.a
        return gauge.with_fields(a0, a1)

    def apply_gauge_transform(
        self,
        state: SpinorField,
        gauge: GaugeConfig,
        transform: GaugeTransform,
        j: int,
        params: WalkParams | None = None,
    ) -> tuple[SpinorField, GaugeConfig]:
        """Gauge-rotate a state at slice ``j`` together with the potentials.

        Parameters
        ----------
        state : SpinorField
            Wavefunction at time slice ``j``.
        gauge : GaugeConfig
            Potentials to transform.
        transform : GaugeTransform
            Phases ``phi``, shape ``(J+1, N)``.
        j : int
            Time slice of ``state``, ``0 <= j <= J``.
        params : WalkParams, optional
            Defaults to the state's parameters.

        Returns
        -------
        tuple[SpinorField, GaugeConfig]
            ``exp(i q phi[j]) psi`` and the transformed potentials.

        Raises
        ------
        ValueError
            If the shapes of state, potentials and phases disagree.
        IndexError
            If ``j`` lies outside ``[0, J]``.
        """
        params = state.params if params is None else params
        if not 0 <= j <= gauge.j_max:
            self.logger.error(f"apply_gauge_transform: time index {j} outside [0, {gauge.j_max}]")
            raise IndexError(f"Time index {j} outside the gauge window [0, {gauge.j_max}].")
        if gauge.n_sites != state.params.n_sites:
            self.logger.error(f"apply_gauge_transform: {gauge.n_sites} gauge sites vs {state.params.n_sites} state sites")
            raise ValueError(f"Gauge configuration covers {gauge.n_sites} sites, state has {state.params.n_sites}.")
        transformed = self.transform_potentials(gauge, transform, params)
        phase = np.exp(1j * gauge.q * transform.phi[j])
        return SpinorField(state.amplitudes * phase[:, None], state.params), transformed

    def covariance_error(
        self,
        gauge: GaugeConfig,
        transform: GaugeTransform,
        field: SpinorField,
        j: int = 0,
        scheme: GaugedScheme | str = GaugedScheme.LEFT_RIGHT,
        params: WalkParams | None = None,
    ) -> float:
        """Max-norm of ``U'(j) e^{iq phi_j} psi - e^{iq phi_{j+1}} U(j) psi``; zero for a covariant step."""
        params = field.params if params is None else params
        rotated, transformed = self.apply_gauge_transform(field, gauge, transform, j, params)
        lhs = self.build_gauged_step(scheme, transformed, j, params).apply(rotated)
        evolved = self.build_gauged_step(scheme, gauge, j, params).apply(field)
        rhs = np.exp(1j * gauge.q * transform.phi[j + 1])[:, None] * evolved.amplitudes
        error = max_norm(lhs.amplitudes - rhs)
        self.logger.debug(f"covariance_error: {GaugedScheme(scheme).value}, j={j}, error={error:.3e}")
        return error

    def large_gauge_shift(self, gauge: GaugeConfig, w0: np.ndarray, w1: np.ndarray, params: WalkParams | None = None) -> GaugeConfig:
        """``A0 += 2 pi w0 / (q dt)``, ``A1 += 2 pi w1 / (q a)`` for integer patterns ``w0``, ``w1``."""
        params = self.walk_client.resolve_params(params)
        w0, w1 = np.asarray(w0), np.asarray(w1)
        if w0.shape != gauge.a0.shape or w1.shape != gauge.a1.shape:
            self.logger.error(f"large_gauge_shift: pattern shapes {w0.shape}, {w1.shape} vs {gauge.a0.shape}, {gauge.a1.shape}")
            raise ValueError(f"Shift patterns must have shapes {gauge.a0.shape} and {gauge.a1.shape}, got {w0.shape} and {w1.shape}.")
        if not (np.array_equal(w0, np.round(w0)) and np.array_equal(w1, np.round(w1))):
            raise ValueError("Large gauge shift patterns must be integer valued.")
        if params.dt == 0:
            raise ValueError("Large gauge shifts of A0 need dt > 0.")
        a0 = gauge.a0 + 2.0 * np.pi * w0 / (gauge.q * params.dt)
        a1 = gauge.a1 + 2.0 * np.pi * w1 / (gauge.q * params.a)
        return gauge.with_fields(a0, a1)

    def is_admissible_shift(self, w0: np.ndarray, w1: np.ndarray, j: int, p: int) -> bool:
        """True when the shift actually changes F01 at ``(j, p)``, i.e. its integer curl is nonzero."""
        w0, w1 = np.asarray(w0), np.asarray(w1)
        n = w0.shape[1]
        curl = (w1[j + 1, p] - w1[j, p]) + (w0[j, (p + 1) % n] - w0[j, p])
        return bool(curl != 0)
