from __future__ import annotations

import numpy as np

from ..lattice.spectra import eigenvalues, spectral_distance
from ..lattice.spectra import sorted_spectrum as _sorted_values
from ..lattice.types import LatticeOperator, OperatorKind

ZERO_MODE_THRESHOLD = 1e-8
FIT_FLOOR = 1e-13
MIN_FIT_POINTS = 4


def fit_order(x, y, floor: float = FIT_FLOOR, min_points: int = MIN_FIT_POINTS) -> tuple[float, float]:
    """Slope and RMS residual of ``log y`` against ``log x``.

    Points with ``x <= 0`` or ``y <= floor`` are dropped. Returns ``(nan, nan)``
    when fewer than ``min_points`` remain.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    keep = (x > 0) & (y > floor)
    if keep.sum() < min_points:
        return float("nan"), float("nan")
    lx, ly = np.log(x[keep]), np.log(y[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return float(slope), residual


def _is_hermitian(op: LatticeOperator) -> bool:
    if op.kind is OperatorKind.HERMITIAN:
        return True
    if op.kind is OperatorKind.UNITARY:
        return False
    return op.is_hermitian()


class SpectralMixin:
    def sorted_spectrum(self, op: LatticeOperator) -> np.ndarray:
        """Eigenvalues ascending (Hermitian) or by phase with a real-part tie-break (unitary)."""
        hermitian = _is_hermitian(op)
        return _sorted_values(eigenvalues(op.matrix, hermitian=hermitian), hermitian=hermitian)

    def spectral_compare(self, op_a: LatticeOperator, op_b: LatticeOperator) -> float:
        """Largest distance between the matched eigenvalues of two operators.

        Parameters
        ----------
        op_a, op_b : LatticeOperator
            Both Hermitian or both unitary, same dimension; bases may differ.

        Returns
        -------
        float
            Zero for unitarily equivalent operators, up to round-off.

        Raises
        ------
        ValueError
            On mixed kinds or different dimensions.
        """
        if op_a.dim != op_b.dim:
            self.logger.error(f"spectral_compare: dimensions {op_a.dim} and {op_b.dim}")
            raise ValueError(f"Cannot compare spectra of dimension {op_a.dim} and {op_b.dim}.")
        herm_a, herm_b = _is_hermitian(op_a), _is_hermitian(op_b)
        if herm_a != herm_b:
            self.logger.error(f"spectral_compare: mixed kinds for '{op_a.label}' and '{op_b.label}'")
            raise ValueError(f"Cannot compare a Hermitian and a unitary spectrum ('{op_a.label}' vs '{op_b.label}').")
        distance = spectral_distance(eigenvalues(op_a.matrix, herm_a), eigenvalues(op_b.matrix, herm_b))
        self.logger.debug(f"spectral_compare: '{op_a.label}' vs '{op_b.label}' -> {distance:.3e}")
        return distance

    def count_zero_modes(self, hamiltonian: LatticeOperator, threshold: float = ZERO_MODE_THRESHOLD) -> int:
        """Number of zero-energy momenta: eigenvalues with ``|E| < threshold``, halved for the two components."""
        if not _is_hermitian(hamiltonian):
            self.logger.error(f"count_zero_modes: '{hamiltonian.label}' is not Hermitian")
            raise ValueError(f"count_zero_modes expects a Hermitian operator, got '{hamiltonian.label}'.")
        energies = np.linalg.eigvalsh(hamiltonian.matrix)
        count = int(np.sum(np.abs(energies) < threshold)) // 2
        self.logger.info(f"'{hamiltonian.label}' has {count} zero mode(s) below {threshold:g}.")
        return count

    def fit_order(self, x, y) -> tuple[float, float]:
        order, residual = fit_order(x, y)
        if np.isnan(order):
            self.logger.warning(f"fit_order: fewer than {MIN_FIT_POINTS} points above {FIT_FLOOR:g}; order undefined")
        return order, residual
