"""Spectra of small dense operators and distances between them."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = ["phase_order", "sorted_spectrum", "spectral_distance", "eigenvalues"]


def phase_order(values: np.ndarray) -> np.ndarray:
    """Indices sorting ``values`` by principal argument, ties broken by real part."""
    values = np.asarray(values, dtype=complex)
    phases = np.round(np.angle(values), 12)
    return np.lexsort((values.real, phases))


def sorted_spectrum(values: np.ndarray, hermitian: bool = False) -> np.ndarray:
    """Real eigenvalues ascending, or unit-circle eigenvalues by phase."""
    values = np.asarray(values)
    if hermitian:
        return np.sort(values.real)
    return values[phase_order(values)]


def eigenvalues(matrix: np.ndarray, hermitian: bool = False) -> np.ndarray:
    if hermitian:
        return np.linalg.eigvalsh(matrix)
    return np.linalg.eigvals(matrix)


def spectral_distance(first: np.ndarray, second: np.ndarray) -> float:
    """Largest gap between two eigenvalue multisets under the minimum-cost one-to-one matching.

    Unlike comparing phase-sorted lists, the result does not depend on which side
    of the branch cut at ``-1`` an eigenvalue lands.
    """
    first, second = np.asarray(first, dtype=complex), np.asarray(second, dtype=complex)
    if first.shape != second.shape:
        raise ValueError(f"Spectra have different sizes: {first.size} and {second.size}.")
    if first.size == 0:
        return 0.0
    cost = np.abs(first[:, None] - second[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))
