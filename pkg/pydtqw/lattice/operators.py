from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag

__all__ = [
    "cyclic_shift",
    "lift_coin",
    "lr_blocks",
    "site_coin",
    "staggered_order",
    "max_norm",
    "spectral_norm",
    "commutator",
]


# ---------------------------------------------------------------------- #
# Position-space building blocks                                           #
# ---------------------------------------------------------------------- #


def cyclic_shift(n: int, steps: int = 1) -> np.ndarray:
    """Periodic shift T with ``(T psi)_p = psi_{p+steps}``.

    ``T`` plays the role of ``exp(i k a)`` in momentum space.
    """
    return np.roll(np.eye(n, dtype=complex), steps, axis=1)


def lift_coin(coin: np.ndarray, n_sites: int) -> np.ndarray:
    """Apply the same 2x2 coin on every site: ``kron(coin, I_N)`` in the component-major LR basis."""
    return np.kron(coin, np.eye(n_sites, dtype=complex))


def lr_blocks(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Block-diagonal operator acting with ``left`` on L components and ``right`` on R components."""
    return block_diag(left, right).astype(complex)


def site_coin(coins: np.ndarray) -> np.ndarray:
    """Embed per-site 2x2 coins of shape (N, 2, 2) into a 2N x 2N matrix."""
    coins = np.asarray(coins, dtype=complex)
    return np.block([[np.diag(coins[:, c, d]) for d in range(2)] for c in range(2)])


def staggered_order(n_sites: int) -> np.ndarray:
    """Permutation sending staggered index ``n = 2p + c`` to LR index ``c*N + p``."""
    n = np.arange(2 * n_sites)
    return (n % 2) * n_sites + n // 2


# ---------------------------------------------------------------------- #
# Norms                                                                    #
# ---------------------------------------------------------------------- #


def max_norm(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix))) if np.size(matrix) else 0.0


def spectral_norm(matrix: np.ndarray) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(matrix, 2))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
