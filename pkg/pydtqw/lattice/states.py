from __future__ import annotations

import numpy as np

from .pauli import Basis2x2
from .types import SpinorField, WalkParams

VALID_BRANCHES = ("positive", "negative")
VALID_REPRESENTATIONS = ("left_right", "naive")
VALID_COMPONENTS = {"L": 0, "R": 1}


def dirac_spinor(k: float, m: float, branch: str = "positive", representation: str = "left_right") -> np.ndarray:
    """Eigenvector of the continuum Dirac block ``k alpha^1 + m beta``.

    ``beta`` is ``sigma^3`` in the left-right representation and ``-sigma^2`` in the
    naive one. The phase is fixed by making the first nonzero component real-positive.
    """
    if branch not in VALID_BRANCHES:
        raise ValueError(f"Unknown branch '{branch}'. Must be one of: {list(VALID_BRANCHES)}")
    if representation not in VALID_REPRESENTATIONS:
        raise ValueError(f"Unknown representation '{representation}'. Must be one of: {list(VALID_REPRESENTATIONS)}")
    beta = Basis2x2.SIGMA_3 if representation == "left_right" else -Basis2x2.SIGMA_2
    _, vecs = np.linalg.eigh(k * Basis2x2.ALPHA_1 + m * beta)
    vec = vecs[:, 1] if branch == "positive" else vecs[:, 0]
    pivot = vec[np.argmax(np.abs(vec) > 1e-12)]
    return vec * (abs(pivot) / pivot)


class LatticeStatesMixin:
    def delta_peak(self, site: int, component: str = "L", params: WalkParams | None = None) -> SpinorField:
        """Unit amplitude on one component of one site.

        Parameters
        ----------
        site : int
            Site index, taken modulo N.
        component : str
            ``"L"`` or ``"R"``.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        SpinorField
        """
        params = self.walk_client.resolve_params(params)
        if component not in VALID_COMPONENTS:
            self.logger.error(f"delta_peak: invalid component {component!r}")
            raise ValueError(f"component must be 'L' or 'R', got {component!r}.")
        amps = np.zeros((params.n_sites, 2), dtype=complex)
        amps[int(site) % params.n_sites, VALID_COMPONENTS[component]] = 1.0
        return SpinorField(amps, params)

    def plane_wave(self, k: float, branch: str = "positive", representation: str = "left_right", params: WalkParams | None = None) -> SpinorField:
        """Unit-norm plane wave ``u(k) exp(i k x_p)`` with ``x_p = p a``."""
        params = self.walk_client.resolve_params(params)
        x = np.arange(params.n_sites) * params.a
        spinor = dirac_spinor(k, params.m, branch, representation)
        amps = np.exp(1j * k * x)[:, None] * spinor[None, :]
        return SpinorField(amps, params).normalized()

    def gaussian(
        self,
        center: float,
        width: float,
        momentum: float = 0.0,
        branch: str = "positive",
        representation: str = "left_right",
        params: WalkParams | None = None,
    ) -> SpinorField:
        """Gaussian wave packet carried by the Dirac spinor of the central momentum.

        ``center`` and ``width`` are physical lengths; the envelope is wrapped
        periodically around the center.
        """
        params = self.walk_client.resolve_params(params)
        if width <= 0:
            self.logger.error(f"gaussian: non-positive width {width}")
            raise ValueError(f"Gaussian width must be > 0, got {width}.")
        length = params.n_sites * params.a
        x = np.arange(params.n_sites) * params.a
        offset = (x - center + length / 2.0) % length - length / 2.0
        envelope = np.exp(-(offset**2) / (2.0 * width**2)) * np.exp(1j * momentum * offset)
        spinor = dirac_spinor(momentum, params.m, branch, representation)
        return SpinorField(envelope[:, None] * spinor[None, :], params).normalized()

    def random_field(self, seed: int | None = None, params: WalkParams | None = None) -> SpinorField:
        """Unit-norm field with complex Gaussian amplitudes from a seeded generator."""
        params = self.walk_client.resolve_params(params)
        rng = np.random.default_rng(self.walk_client.seed if seed is None else seed)
        amps = rng.normal(size=(params.n_sites, 2)) + 1j * rng.normal(size=(params.n_sites, 2))
        return SpinorField(amps, params).normalized()
