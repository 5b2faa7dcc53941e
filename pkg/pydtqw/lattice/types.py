from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..params import WalkParams

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12


class Basis(str, Enum):
    """Position basis an operator matrix is written in."""

    LR_POSITION = "lr_position"
    STAGGERED_POSITION = "staggered_position"


class OperatorKind(str, Enum):
    GENERIC = "generic"
    HERMITIAN = "hermitian"
    UNITARY = "unitary"


def _frozen_array(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpinorField:
    """Two-component wavefunction on N periodic sites.

    ``amplitudes[p]`` holds ``(psi_L, psi_R)`` at site ``p``.
    """

    amplitudes: np.ndarray
    params: WalkParams

    def __post_init__(self) -> None:
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.shape != (self.params.n_sites, 2):
            raise ValueError(f"SpinorField amplitudes must have shape ({self.params.n_sites}, 2), got {arr.shape}.")
        if not np.all(np.isfinite(arr)):
            raise ValueError("SpinorField amplitudes must be finite.")
        object.__setattr__(self, "amplitudes", _frozen_array(arr))

    @classmethod
    def from_vector(cls, vector: np.ndarray, params: WalkParams) -> SpinorField:
        """Build a field from a component-major LR vector (L block, then R block)."""
        vec = np.asarray(vector, dtype=complex)
        if vec.shape != (params.dim,):
            raise ValueError(f"Expected a vector of length {params.dim}, got shape {vec.shape}.")
        n = params.n_sites
        return cls(np.stack([vec[:n], vec[n:]], axis=1), params)

    def to_vector(self) -> np.ndarray:
        """Component-major LR vector: index c*N + p."""
        return np.concatenate([self.amplitudes[:, 0], self.amplitudes[:, 1]])

    @property
    def psi_left(self) -> np.ndarray:
        return self.amplitudes[:, 0]

    @property
    def psi_right(self) -> np.ndarray:
        return self.amplitudes[:, 1]

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def density(self) -> np.ndarray:
        """Probability per site, both components summed."""
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    def normalized(self) -> SpinorField:
        norm = self.norm()
        if norm == 0.0:
            raise ValueError("Cannot normalize an all-zero SpinorField.")
        return SpinorField(self.amplitudes / norm, self.params)


@dataclass(frozen=True)
class StaggeredField:
    """Scalar wavefunction on the 2N-site staggered lattice; ``phi[2p]`` is L, ``phi[2p+1]`` is R."""

    amplitudes: np.ndarray
    params: WalkParams

    def __post_init__(self) -> None:
        arr = np.asarray(self.amplitudes, dtype=complex)
        if arr.shape != (self.params.dim,):
            raise ValueError(f"StaggeredField amplitudes must have shape ({self.params.dim},), got {arr.shape}.")
        object.__setattr__(self, "amplitudes", _frozen_array(arr))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class LatticeOperator:
    """Dense D x D operator (D = 2N) over a declared position basis.

    Parameters
    ----------
    matrix : numpy.ndarray
        Complex square matrix.
    basis : Basis
        Basis the matrix is written in.
    params : WalkParams
        Lattice the operator lives on.
    kind : OperatorKind
        ``HERMITIAN`` and ``UNITARY`` tags are checked on construction.
    label : str
        Human-readable name used in logs and reports.
    """

    matrix: np.ndarray
    basis: Basis
    params: WalkParams
    kind: OperatorKind = OperatorKind.GENERIC
    label: str = ""

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        dim = self.params.dim
        if mat.shape != (dim, dim):
            raise ValueError(f"LatticeOperator '{self.label}' must be {dim}x{dim}, got {mat.shape}.")
        object.__setattr__(self, "matrix", _frozen_array(mat))
        object.__setattr__(self, "basis", Basis(self.basis))
        object.__setattr__(self, "kind", OperatorKind(self.kind))
        if self.kind is OperatorKind.HERMITIAN and self.hermiticity_error() > HERMITIAN_TOL:
            raise ValueError(f"LatticeOperator '{self.label}' tagged Hermitian but ||M - M^dag||_max = {self.hermiticity_error():.3e}.")
        if self.kind is OperatorKind.UNITARY and self.unitarity_error() > UNITARY_TOL:
            raise ValueError(f"LatticeOperator '{self.label}' tagged unitary but ||M^dag M - I||_max = {self.unitarity_error():.3e}.")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def unitarity_error(self) -> float:
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(self.dim))))

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        return self.hermiticity_error() <= tol

    def is_unitary(self, tol: float = UNITARY_TOL) -> bool:
        return self.unitarity_error() <= tol

    def with_matrix(self, matrix: np.ndarray, basis: Basis | None = None, label: str | None = None) -> LatticeOperator:
        return LatticeOperator(matrix, basis or self.basis, self.params, self.kind, self.label if label is None else label)

    def apply(self, field: SpinorField) -> SpinorField:
        if self.basis is not Basis.LR_POSITION:
            raise ValueError(f"Operator '{self.label}' is in the {self.basis.value} basis; convert it to lr_position before applying it to a SpinorField.")
        return SpinorField.from_vector(self.matrix @ field.to_vector(), field.params)
