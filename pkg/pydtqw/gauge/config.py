"""Background U(1) gauge potentials and local gauge transformations on a finite spacetime window."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import yaml

from ..lattice.types import WalkParams
from ..utils import export_to_json

VALID_GAUGE_KEYS = frozenset({"q", "A0", "A1"})


def _frozen_real(values, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float, copy=True)
    except (TypeError, ValueError) as e:
        raise ValueError(f"{name} must be a real 2-D array: {e}") from e
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D (time, site), got {arr.ndim} dimension(s).")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must contain finite values only.")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GaugeConfig:
    """Scalar and vector potentials ``A0`` (J x N) and ``A1`` ((J+1) x N) with charge ``q``.

    ``A1`` carries one extra time slice because step ``j`` reads ``A1[j+1]``.
    """

    a0: np.ndarray
    a1: np.ndarray
    q: float = 1.0

    def __post_init__(self) -> None:
        a0 = _frozen_real(self.a0, "A0")
        a1 = _frozen_real(self.a1, "A1")
        if a1.shape != (a0.shape[0] + 1, a0.shape[1]):
            raise ValueError(f"A1 must have shape ({a0.shape[0] + 1}, {a0.shape[1]}) to match A0 {a0.shape}, got {a1.shape}.")
        if a0.shape[0] < 1:
            raise ValueError("A gauge configuration needs at least one time slice.")
        if not np.isfinite(self.q) or self.q == 0:
            raise ValueError(f"Charge q must be finite and nonzero, got {self.q}.")
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "q", float(self.q))

    @property
    def j_max(self) -> int:
        """Number of time steps the configuration covers."""
        return self.a0.shape[0]

    @property
    def n_sites(self) -> int:
        return self.a0.shape[1]

    @property
    def window(self) -> tuple[int, int]:
        return self.j_max, self.n_sites

    def check_time(self, j: int) -> None:
        if not 0 <= j < self.j_max:
            raise IndexError(f"Time index {j} outside the gauge window [0, {self.j_max}).")

    def check_lattice(self, params: WalkParams) -> None:
        if self.n_sites != params.n_sites:
            raise ValueError(f"Gauge configuration covers {self.n_sites} sites, lattice has {params.n_sites}.")

    def alpha(self, j: int, params: WalkParams) -> np.ndarray:
        """Temporal phases ``dt q A0[j, p]``."""
        self.check_time(j)
        return params.dt * self.q * self.a0[j]

    def vartheta(self, j: int, params: WalkParams) -> np.ndarray:
        """Spatial link phases ``-a q A1[j+1, p]``."""
        self.check_time(j)
        return -params.a * self.q * self.a1[j + 1]

    def with_fields(self, a0: np.ndarray, a1: np.ndarray) -> GaugeConfig:
        return GaugeConfig(a0, a1, self.q)

    # ------------------------------------------------------------------ #
    # Construction and persistence                                         #
    # ------------------------------------------------------------------ #

    @classmethod
    def zeros(cls, j_max: int, n_sites: int, q: float = 1.0) -> GaugeConfig:
        return cls(np.zeros((j_max, n_sites)), np.zeros((j_max + 1, n_sites)), q)

    @classmethod
    def random(cls, j_max: int, n_sites: int, q: float = 1.0, seed: int = 0, scale: float = 1.0) -> GaugeConfig:
        """Uniform potentials in ``[-scale, scale)`` from a seeded generator."""
        rng = np.random.default_rng(seed)
        a0 = rng.uniform(-scale, scale, size=(j_max, n_sites))
        a1 = rng.uniform(-scale, scale, size=(j_max + 1, n_sites))
        return cls(a0, a1, q)

    @classmethod
    def from_dict(cls, data: dict) -> GaugeConfig:
        if not isinstance(data, dict):
            raise ValueError("A gauge configuration must be a mapping with keys 'q', 'A0' and 'A1'.")
        unknown = sorted(set(data) - VALID_GAUGE_KEYS)
        if unknown:
            raise ValueError(f"Unknown gauge configuration key(s): {unknown}. Valid keys are: {sorted(VALID_GAUGE_KEYS)}")
        missing = sorted({"A0", "A1"} - set(data))
        if missing:
            raise ValueError(f"Gauge configuration is missing key(s): {missing}")
        return cls(data["A0"], data["A1"], data.get("q", 1.0))

    @classmethod
    def load(cls, path: str) -> GaugeConfig:
        """Read ``{"q": ..., "A0": [[...]], "A1": [[...]]}`` from a JSON or YAML file."""
        with open(path) as stream:
            data = yaml.load(stream, Loader=yaml.FullLoader)
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"q": self.q, "A0": self.a0.tolist(), "A1": self.a1.tolist()}

    def dump(self, path: str) -> str:
        return export_to_json(self.to_dict(), file_name=path)


@dataclass(frozen=True)
class GaugeTransform:
    """Local phases ``phi[j, p]`` for ``j = 0 .. J``, one slice more than ``A0``."""

    phi: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", _frozen_real(self.phi, "phi"))

    def check_window(self, gauge: GaugeConfig) -> None:
        if self.phi.shape != gauge.a1.shape:
            raise ValueError(f"Gauge transform phi must have shape {gauge.a1.shape}, got {self.phi.shape}.")

    @classmethod
    def random(cls, j_max: int, n_sites: int, seed: int = 0, scale: float = np.pi) -> GaugeTransform:
        rng = np.random.default_rng(seed)
        return cls(rng.uniform(-scale, scale, size=(j_max + 1, n_sites)))

    @classmethod
    def constant(cls, j_max: int, n_sites: int, value: float) -> GaugeTransform:
        return cls(np.full((j_max + 1, n_sites), float(value)))
