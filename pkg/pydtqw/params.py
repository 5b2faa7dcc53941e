from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WalkParams:
    """Lattice spacing, time step, mass, Wilson parameter and site count.

    Derived angles are exposed as properties so that the main-text angles
    (``delta``, ``theta``) and the doubled-spacing angles (``delta_tilde``,
    ``theta_tilde``) cannot be mixed up silently.

    Parameters
    ----------
    a : float
        Lattice spacing, strictly positive.
    dt : float
        Time step, non-negative.
    m : float
        Mass.
    r : float
        Wilson parameter.
    n_sites : int
        Number of non-staggered sites N, even and at least 4.
    """

    a: float = 1.0
    dt: float = 0.5
    m: float = 0.0
    r: float = 1.0
    n_sites: int = 16

    def __post_init__(self) -> None:
        for name in ("a", "dt", "m", "r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int | float | np.floating | np.integer):
                raise ValueError(f"WalkParams.{name} must be a real number, got {value!r}.")
            if not math.isfinite(float(value)):
                raise ValueError(f"WalkParams.{name} must be finite, got {value!r}.")
            object.__setattr__(self, name, float(value))
        if isinstance(self.n_sites, bool) or int(self.n_sites) != self.n_sites:
            raise ValueError(f"WalkParams.n_sites must be an integer, got {self.n_sites!r}.")
        object.__setattr__(self, "n_sites", int(self.n_sites))
        if self.a <= 0:
            raise ValueError(f"Lattice spacing a must be > 0, got {self.a}.")
        if self.dt < 0:
            raise ValueError(f"Time step dt must be >= 0, got {self.dt}.")
        if self.n_sites < 4 or self.n_sites % 2:
            raise ValueError(f"n_sites must be even and >= 4, got {self.n_sites}.")

    @property
    def delta(self) -> float:
        return self.dt / self.a

    @property
    def theta(self) -> float:
        return math.pi - 2.0 * self.delta

    @property
    def delta_tilde(self) -> float:
        return self.delta / 2.0

    @property
    def theta_tilde(self) -> float:
        return math.pi - 2.0 * self.delta_tilde

    @property
    def delta_tilde_r(self) -> float:
        return self.r * self.delta_tilde

    @property
    def theta_tilde_r(self) -> float:
        return math.pi - 2.0 * self.delta_tilde_r

    @property
    def dim(self) -> int:
        """Hilbert-space dimension D = 2N."""
        return 2 * self.n_sites

    def replace(self, **changes) -> WalkParams:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, float | int]:
        """Resolved parameters including the derived angles."""
        return {
            "a": self.a,
            "dt": self.dt,
            "m": self.m,
            "r": self.r,
            "n_sites": self.n_sites,
            "delta": self.delta,
            "theta": self.theta,
            "delta_tilde": self.delta_tilde,
            "theta_tilde": self.theta_tilde,
            "delta_tilde_r": self.delta_tilde_r,
            "theta_tilde_r": self.theta_tilde_r,
        }

    def describe(self) -> str:
        return f"WalkParams(a={self.a}, dt={self.dt}, m={self.m}, r={self.r}, n_sites={self.n_sites}, delta={self.delta:.6g})"
