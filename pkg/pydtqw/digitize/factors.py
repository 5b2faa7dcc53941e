"""Coin, shift and generic local factors, and the walk operator assembled from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce

import numpy as np

from ..lattice.operators import cyclic_shift, lift_coin, lr_blocks, max_norm, site_coin
from ..lattice.pauli import Basis2x2, pauli_rotation
from ..lattice.types import Basis, LatticeOperator, OperatorKind, SpinorField, WalkParams

__all__ = [
    "CoinKind",
    "CoinOp",
    "ShiftKind",
    "ShiftOp",
    "LocalFactor",
    "WalkOperator",
]


# ---------------------------------------------------------------------- #
# Coins                                                                    #
# ---------------------------------------------------------------------- #


class CoinKind(str, Enum):
    C = "C"  # exp(-i sigma^2 theta/2)
    CBREVE = "Cbreve"  # exp(-i sigma^1 theta/2)
    K = "K"  # i * Cbreve
    CGAUGED = "Cgauged"  # C with per-site phases on the diagonal


@dataclass(frozen=True)
class CoinOp:
    theta: float
    kind: CoinKind = CoinKind.C
    phases: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CoinKind(self.kind))
        if self.kind is CoinKind.CGAUGED and self.phases is None:
            raise ValueError("A gauged coin needs per-site phases.")
        if self.phases is not None:
            object.__setattr__(self, "phases", tuple(float(v) for v in self.phases))

    @property
    def label(self) -> str:
        return f"{self.kind.value}({self.theta:+.6g})"

    def matrix2x2(self) -> np.ndarray:
        """Single-site coin; not defined for the gauged kind."""
        if self.kind is CoinKind.C:
            return pauli_rotation(Basis2x2.SIGMA_2, self.theta)
        if self.kind is CoinKind.CBREVE:
            return pauli_rotation(Basis2x2.SIGMA_1, self.theta)
        if self.kind is CoinKind.K:
            return 1j * pauli_rotation(Basis2x2.SIGMA_1, self.theta)
        raise ValueError("The gauged coin depends on the site; use to_matrix().")

    def site_matrices(self, n_sites: int) -> np.ndarray:
        """Per-site coins, shape (N, 2, 2)."""
        if self.kind is not CoinKind.CGAUGED:
            return np.broadcast_to(self.matrix2x2(), (n_sites, 2, 2)).copy()
        phases = np.asarray(self.phases, dtype=float)
        if phases.shape != (n_sites,):
            raise ValueError(f"Gauged coin carries {phases.size} phases for {n_sites} sites.")
        cos_half, sin_half = np.cos(self.theta / 2.0), np.sin(self.theta / 2.0)
        coins = np.zeros((n_sites, 2, 2), dtype=complex)
        coins[:, 0, 0] = cos_half * np.exp(1j * phases)
        coins[:, 0, 1] = -sin_half
        coins[:, 1, 0] = sin_half
        coins[:, 1, 1] = cos_half * np.exp(-1j * phases)
        return coins

    def to_matrix(self, n_sites: int) -> np.ndarray:
        if self.kind is CoinKind.CGAUGED:
            return site_coin(self.site_matrices(n_sites))
        return lift_coin(self.matrix2x2(), n_sites)


# ---------------------------------------------------------------------- #
# Shifts                                                                   #
# ---------------------------------------------------------------------- #


class ShiftKind(str, Enum):
    SL = "SL"  # diag(e^{ik}, 1)
    SR = "SR"  # diag(1, e^{-ik})
    S = "S"  # SL SR
    SBREVE = "Sbreve"  # S^{-1}
    SL_PHASE = "SL_phase"  # diag(e^{i theta_p}, 1)
    SR_PHASE = "SR_phase"  # diag(1, e^{-i theta_p})


@dataclass(frozen=True)
class ShiftOp:
    kind: ShiftKind
    inverse: bool = False
    phases: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ShiftKind(self.kind))
        if self.kind in (ShiftKind.SL_PHASE, ShiftKind.SR_PHASE) and self.phases is None:
            raise ValueError(f"Shift {self.kind.value} needs per-site phases.")
        if self.phases is not None:
            object.__setattr__(self, "phases", tuple(float(v) for v in self.phases))

    @property
    def label(self) -> str:
        return f"{self.kind.value}^-1" if self.inverse else self.kind.value

    def to_matrix(self, n_sites: int) -> np.ndarray:
        eye = np.eye(n_sites, dtype=complex)
        shift = cyclic_shift(n_sites)
        if self.kind is ShiftKind.SL:
            mat = lr_blocks(shift, eye)
        elif self.kind is ShiftKind.SR:
            mat = lr_blocks(eye, shift.conj().T)
        elif self.kind is ShiftKind.S:
            mat = lr_blocks(shift, shift.conj().T)
        elif self.kind is ShiftKind.SBREVE:
            mat = lr_blocks(shift.conj().T, shift)
        else:
            phases = np.asarray(self.phases, dtype=float)
            if phases.shape != (n_sites,):
                raise ValueError(f"Shift {self.kind.value} carries {phases.size} phases for {n_sites} sites.")
            theta = np.diag(np.exp(1j * phases))
            mat = lr_blocks(theta, eye) if self.kind is ShiftKind.SL_PHASE else lr_blocks(eye, theta.conj().T)
        return mat.conj().T if self.inverse else mat


@dataclass(frozen=True)
class LocalFactor:
    """Any other ultralocal factor (mass phases, block exponentials, conjugations), stored densely."""

    label: str
    matrix: np.ndarray = field(repr=False)

    def to_matrix(self, n_sites: int) -> np.ndarray:
        if self.matrix.shape != (2 * n_sites, 2 * n_sites):
            raise ValueError(f"Factor '{self.label}' has shape {self.matrix.shape}, expected {(2 * n_sites, 2 * n_sites)}.")
        return self.matrix


Factor = CoinOp | ShiftOp | LocalFactor


# ---------------------------------------------------------------------- #
# Walk operator                                                            #
# ---------------------------------------------------------------------- #


@dataclass(frozen=True)
class WalkOperator:
    """Unitary one-step evolution with its ordered factorization.

    ``factors`` are listed left to right as written, so the rightmost factor acts first.
    ``radius`` is the one-step propagation bound in non-staggered sites, when known.
    """

    matrix: LatticeOperator
    factors: tuple[Factor, ...]
    params: WalkParams
    radius: int | None = None

    @classmethod
    def from_factors(cls, factors: list[Factor] | tuple[Factor, ...], params: WalkParams, label: str, radius: int | None = None) -> WalkOperator:
        n = params.n_sites
        product = reduce(np.matmul, (f.to_matrix(n) for f in factors), np.eye(params.dim, dtype=complex))
        op = LatticeOperator(product, Basis.LR_POSITION, params, OperatorKind.UNITARY, label)
        return cls(op, tuple(factors), params, radius)

    @property
    def label(self) -> str:
        return self.matrix.label

    @property
    def array(self) -> np.ndarray:
        return self.matrix.matrix

    def factorization_error(self) -> float:
        """Max-norm distance between the stored matrix and the product of its factors."""
        n = self.params.n_sites
        product = reduce(np.matmul, (f.to_matrix(n) for f in self.factors), np.eye(self.params.dim, dtype=complex))
        return max_norm(product - self.array)

    def compose(self, other: WalkOperator, label: str | None = None) -> WalkOperator:
        """``self @ other`` with concatenated factor lists; radii add."""
        radius = None if self.radius is None or other.radius is None else self.radius + other.radius
        return WalkOperator.from_factors(self.factors + other.factors, self.params, label or f"{self.label}*{other.label}", radius)

    def apply(self, state: SpinorField) -> SpinorField:
        return self.matrix.apply(state)
