"""Constant 2x2 matrices of the internal (coin) space and closed-form Pauli rotations."""

from __future__ import annotations

import numpy as np

__all__ = ["Basis2x2", "pauli_rotation"]


def pauli_rotation(generator: np.ndarray, angle: float) -> np.ndarray:
    """Return ``exp(-i * generator * angle / 2)`` for a generator squaring to the identity.

    Parameters
    ----------
    generator : numpy.ndarray
        2x2 (or larger) matrix with ``generator @ generator == I``.
    angle : float
        Rotation angle.

    Returns
    -------
    numpy.ndarray
        ``cos(angle/2) I - i sin(angle/2) generator``.
    """
    eye = np.eye(generator.shape[0], dtype=complex)
    return np.cos(angle / 2.0) * eye - 1j * np.sin(angle / 2.0) * generator


class Basis2x2:
    """Pauli matrices, Dirac alpha/gamma matrices and the fixed passage matrices.

    ``RHO`` carries a ``1/sqrt(2)`` normalization so that ``RHO @ RHO == SIGMA_1``.
    """

    IDENTITY = np.eye(2, dtype=complex)
    SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
    SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
    SIGMA_PLUS = (SIGMA_1 + 1j * SIGMA_2) / 2.0

    ALPHA_0 = SIGMA_3
    ALPHA_1 = SIGMA_1
    GAMMA_5 = SIGMA_1

    # exp(-i sigma^1 pi/4)
    B = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2.0)
    # exp(i sigma^2 pi/4)
    G = np.array([[1, 1], [-1, 1]], dtype=complex) / np.sqrt(2.0)
    P = np.array([[0, np.exp(1j * np.pi / 4)], [-np.exp(-1j * np.pi / 4), 0]], dtype=complex)
    RHO = np.exp(1j * np.pi / 4) * np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2.0)

    @classmethod
    def identity_residuals(cls) -> dict[str, float]:
        """Max-norm residual of every algebraic identity the constants must satisfy."""

        def res(lhs: np.ndarray, rhs: np.ndarray) -> float:
            return float(np.max(np.abs(lhs - rhs)))

        eye = cls.IDENTITY
        residuals = {f"sigma{n}_squared": res(s @ s, eye) for n, s in ((1, cls.SIGMA_1), (2, cls.SIGMA_2), (3, cls.SIGMA_3))}
        for name in ("B", "G", "P", "RHO"):
            mat = getattr(cls, name)
            residuals[f"{name}_unitary"] = res(mat.conj().T @ mat, eye)
        residuals["rho_squared_is_sigma1"] = res(cls.RHO @ cls.RHO, cls.SIGMA_1)
        residuals["B_is_exponential"] = res(cls.B, pauli_rotation(cls.SIGMA_1, np.pi / 2))
        residuals["G_is_exponential"] = res(cls.G, pauli_rotation(cls.SIGMA_2, -np.pi / 2))
        return residuals
