from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ConvergenceReport:
    """Errors against a reference as one discretization parameter is refined.

    ``order`` and ``residual`` come from a least-squares line through
    ``(log value, log error)``. Time-limit reports also carry the errors at a
    fixed physical horizon in the ``horizon_*`` fields.
    """

    label: str
    parameter: str
    values: tuple[float, ...]
    errors: tuple[float, ...]
    order: float
    residual: float
    norm: str = "spectral"
    horizon: float | None = None
    horizon_errors: tuple[float, ...] | None = None
    horizon_order: float | None = None
    horizon_residual: float | None = None

    def is_monotone(self, floor: float = 1e-13) -> bool:
        """Errors decrease along the grid until they reach ``floor``."""
        errors = [e for e in self.errors if e > floor]
        return all(b < a for a, b in zip(errors, errors[1:], strict=False))

    def to_records(self) -> list[dict]:
        rows = []
        for i, value in enumerate(self.values):
            row = {"label": self.label, self.parameter: value, "error": self.errors[i], "norm": self.norm}
            if self.horizon_errors is not None:
                row["horizon_error"] = self.horizon_errors[i]
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        data = {
            "label": self.label,
            "parameter": self.parameter,
            "values": list(self.values),
            "errors": list(self.errors),
            "order": None if math.isnan(self.order) else self.order,
            "residual": None if math.isnan(self.residual) else self.residual,
            "norm": self.norm,
        }
        if self.horizon_errors is not None:
            data.update(
                {
                    "horizon": self.horizon,
                    "horizon_errors": list(self.horizon_errors),
                    "horizon_order": self.horizon_order,
                    "horizon_residual": self.horizon_residual,
                }
            )
        return data


@dataclass(frozen=True)
class LightConeReport:
    """Probability found beyond ``radius * j`` sites after ``j`` steps, ``j = 0 .. steps``."""

    label: str
    radius: int
    steps: int
    outside_mass: tuple[float, ...]
    profile: tuple[float, ...] = field(default=())

    @property
    def max_outside(self) -> float:
        return max(self.outside_mass)

    def is_confined(self, tol: float = 1e-15) -> bool:
        return self.max_outside <= tol

    def mass_beyond(self, distance: int) -> float:
        """Final-step probability at sites strictly farther than ``distance``."""
        return float(np.sum(self.profile[distance + 1 :]))

    def to_records(self) -> list[dict]:
        return [{"label": self.label, "step": j, "cone_radius": self.radius * j, "outside_mass": m} for j, m in enumerate(self.outside_mass)]
