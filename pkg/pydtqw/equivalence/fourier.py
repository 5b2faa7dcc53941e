"""Two-site Fourier blocks of the even-odd and naive walks and the momentum-space map between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial

import numpy as np

from ..lattice.operators import max_norm
from ..lattice.spectra import phase_order
from ..lattice.types import Basis, LatticeOperator, WalkParams

# Block index order inside a two-site cell: (E_L, E_R, O_L, O_R)
BLOCK_LABELS = ("E_L", "E_R", "O_L", "O_R")


@dataclass(frozen=True)
class FourierBlock4:
    """4x4 momentum block at cell momentum ``K`` in the order (E_L, E_R, O_L, O_R)."""

    K: float
    matrix: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (4, 4):
            raise ValueError(f"FourierBlock4 needs a 4x4 matrix, got {mat.shape}.")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "K", float(self.K))

    def unitarity_error(self) -> float:
        return max_norm(self.matrix.conj().T @ self.matrix - np.eye(4))


@dataclass(frozen=True)
class MappingCoefficients:
    """Real-space coefficients ``b_N`` of the momentum-space map, ``B(K) = sum_N b_N exp(-i K N)``."""

    entries: dict[int, np.ndarray]
    quadrature_points: int
    delta_tilde: float

    @property
    def max_offset(self) -> int:
        return max(abs(n) for n in self.entries)

    @property
    def offsets(self) -> list[int]:
        return sorted(self.entries)

    def to_records(self) -> list[dict]:
        """One row per offset and matrix entry, entries numbered from 1 as ``(u, v)``."""
        rows = []
        for offset in self.offsets:
            block = self.entries[offset]
            for u in range(4):
                for v in range(4):
                    value = complex(block[u, v])
                    rows.append({"offset": offset, "entry": f"{u + 1}{v + 1}", "b": value, "abs": abs(value)})
        return rows


def block_momenta(n_sites: int) -> np.ndarray:
    """Cell momenta ``K = 2 pi m / (N/2)`` folded into ``[-pi, pi)``."""
    cells = n_sites // 2
    return (2.0 * np.pi * np.arange(cells) / cells + np.pi) % (2.0 * np.pi) - np.pi


def pi_block(block: FourierBlock4 | np.ndarray) -> np.ndarray:
    """Middle 2x2 sub-block (E_R, O_L)."""
    mat = block.matrix if isinstance(block, FourierBlock4) else np.asarray(block)
    return mat[1:3, 1:3]


def corner_block(block: FourierBlock4 | np.ndarray) -> np.ndarray:
    """Sub-block on the first and last rows and columns (E_L, O_R)."""
    mat = block.matrix if isinstance(block, FourierBlock4) else np.asarray(block)
    return mat[np.ix_([0, 3], [0, 3])]


def _transport_block(K: float, delta_tilde: float, swap_middle_diagonal: bool) -> np.ndarray:
    c, s = np.cos(delta_tilde), np.sin(delta_tilde)
    forward = c**2 + s**2 * np.exp(1j * K)
    backward = c**2 + s**2 * np.exp(-1j * K)
    up = -s * c * (1.0 - np.exp(-1j * K))
    down = -s * c * (np.exp(1j * K) - 1.0)
    mat = np.zeros((4, 4), dtype=complex)
    mat[0, 0], mat[0, 3] = forward, up
    mat[3, 0], mat[3, 3] = down, backward
    mat[1, 2], mat[2, 1] = up, down
    mat[1, 1], mat[2, 2] = (backward, forward) if swap_middle_diagonal else (forward, backward)
    return mat


class FourierMixin:
    def fourier_block_even_odd(self, K: float, params: WalkParams | None = None) -> FourierBlock4:
        """Momentum block of the massless even-odd step ``U^e U^o``."""
        params = self.walk_client.resolve_params(params)
        return FourierBlock4(K, _transport_block(K, params.delta_tilde, swap_middle_diagonal=False), "U_even_odd")

    def fourier_block_naive(self, K: float, params: WalkParams | None = None) -> FourierBlock4:
        """Momentum block of the massless naive walk; differs from the even-odd block on the middle diagonal only."""
        params = self.walk_client.resolve_params(params)
        return FourierBlock4(K, _transport_block(K, params.delta_tilde, swap_middle_diagonal=True), "U_naive")

    def fourier_blocks(self, params: WalkParams | None = None):
        """Samplers ``K -> FourierBlock4`` for the even-odd and the naive walk.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        tuple[Callable, Callable]
            ``(even_odd_sampler, naive_sampler)``.
        """
        params = self.walk_client.resolve_params(params)
        return partial(self.fourier_block_even_odd, params=params), partial(self.fourier_block_naive, params=params)

    def bloch_block(self, operator: LatticeOperator, K: float, cell: int = 0) -> FourierBlock4:
        """Bloch block of a two-site periodic LR operator at cell momentum ``K``.

        ``sum_d m_d exp(i K d)`` where ``m_d`` couples cell ``cell`` to cell
        ``cell + d``; offsets are taken in ``(-N/4, N/4]``.
        """
        if operator.basis is not Basis.LR_POSITION:
            self.logger.error(f"bloch_block: '{operator.label}' is in the {operator.basis.value} basis")
            raise ValueError("bloch_block expects an operator in the lr_position basis.")
        n = operator.params.n_sites
        cells = n // 2

        def indices(l: int) -> list[int]:
            l %= cells
            return [2 * l, n + 2 * l, 2 * l + 1, n + 2 * l + 1]

        rows = indices(cell)
        block = np.zeros((4, 4), dtype=complex)
        for d in range(cells):
            offset = d - cells if d > cells // 2 else d
            block += operator.matrix[np.ix_(rows, indices(cell + d))] * np.exp(1j * K * offset)
        return FourierBlock4(K, block, f"bloch[{operator.label}]")

    def mapping_B_of_K(self, K: float, params: WalkParams | None = None) -> FourierBlock4:
        """Closed-form map sending the even-odd block to the naive block.

        ``B = F [[1/F, 0, 0, 0], [0, 2, t(1 + e^{-iK}), 0], [0, -t(1 + e^{iK}), 2, 0], [0, 0, 0, 1/F]]``
        with ``t = tan(delta~)``, ``X = t^2 cos^2(K/2)`` and ``F = (1 + X)^{-1/2} / 2``.

        Parameters
        ----------
        K : float
            Cell momentum.
        params : WalkParams, optional
            Defaults to the client's parameters.

        Returns
        -------
        FourierBlock4
            Unitary, with ``B U_eo B^-1 = U_naive``.

        Raises
        ------
        ValueError
            If ``tan(delta~)`` is undefined.
        """
        params = self.walk_client.resolve_params(params)
        if abs(np.cos(params.delta_tilde)) < 1e-12:
            self.logger.error(f"mapping_B_of_K: tan(delta_tilde) undefined at delta_tilde={params.delta_tilde}")
            raise ValueError(f"tan(delta_tilde) is undefined for delta_tilde={params.delta_tilde}.")
        t = np.tan(params.delta_tilde)
        if t**2 >= 1.0:
            self.logger.warning(f"mapping_B_of_K: tan^2(delta_tilde)={t**2:.3g} >= 1, the series in X does not converge for every K")
        x = t**2 * np.cos(K / 2.0) ** 2
        f = 0.5 / np.sqrt(1.0 + x)
        mat = np.zeros((4, 4), dtype=complex)
        mat[0, 0] = mat[3, 3] = 1.0
        mat[1, 1] = mat[2, 2] = 2.0 * f
        mat[1, 2] = f * t * (1.0 + np.exp(-1j * K))
        mat[2, 1] = -f * t * (1.0 + np.exp(1j * K))
        return FourierBlock4(K, mat, "B")

    def mapping_B_constructive(self, K: float, params: WalkParams | None = None) -> FourierBlock4:
        """``Q P^-1`` from eigenvectors of the naive (``Q``) and even-odd (``P``) blocks.

        Eigenpairs are matched by phase-sorted eigenvalue and each eigenvector
        has its first nonzero component made real-positive. The result agrees
        with :meth:`mapping_B_of_K` only up to that phase choice.
        """
        params = self.walk_client.resolve_params(params)

        def gauged_eigenvectors(matrix: np.ndarray) -> np.ndarray:
            values, vectors = np.linalg.eig(matrix)
            vectors = vectors[:, phase_order(values)]
            for col in range(4):
                pivot = vectors[np.argmax(np.abs(vectors[:, col]) > 1e-12), col]
                vectors[:, col] *= abs(pivot) / pivot
            return vectors

        p_mat = gauged_eigenvectors(self.fourier_block_even_odd(K, params).matrix)
        q_mat = gauged_eigenvectors(self.fourier_block_naive(K, params).matrix)
        return FourierBlock4(K, q_mat @ np.linalg.inv(p_mat), "B_constructive")

    def conjugation_error(self, mapping: FourierBlock4, params: WalkParams | None = None) -> float:
        """Max-norm of ``B U_eo B^-1 - U_naive`` at the mapping's momentum."""
        params = self.walk_client.resolve_params(params)
        u_eo = self.fourier_block_even_odd(mapping.K, params).matrix
        u_n = self.fourier_block_naive(mapping.K, params).matrix
        return max_norm(mapping.matrix @ u_eo @ np.linalg.inv(mapping.matrix) - u_n)

    def mapping_real_space_coefficients(self, params: WalkParams | None = None, max_offset: int = 8, quadrature_points: int = 256) -> MappingCoefficients:
        """Trapezoidal Fourier coefficients ``b_N = (1/M) sum_m B(K_m) exp(i K_m N)``.

        Parameters
        ----------
        params : WalkParams, optional
            Defaults to the client's parameters.
        max_offset : int
            Coefficients are returned for ``|N| <= max_offset``.
        quadrature_points : int
            Number ``M`` of momenta ``K_m = -pi + 2 pi m / M``; at least ``8 * max_offset``.

        Returns
        -------
        MappingCoefficients

        Raises
        ------
        ValueError
            If the quadrature is too coarse for the requested offsets.
        """
        params = self.walk_client.resolve_params(params)
        if max_offset < 0:
            self.logger.error(f"mapping_real_space_coefficients: negative max_offset {max_offset}")
            raise ValueError(f"max_offset must be >= 0, got {max_offset}.")
        if quadrature_points < max(8 * max_offset, 1):
            self.logger.error(f"mapping_real_space_coefficients: {quadrature_points} quadrature points for max_offset={max_offset}")
            raise ValueError(f"quadrature_points must be >= 8 * max_offset = {8 * max_offset}, got {quadrature_points}.")
        momenta = -np.pi + 2.0 * np.pi * np.arange(quadrature_points) / quadrature_points
        samples = np.array([self.mapping_B_of_K(K, params).matrix for K in momenta])
        entries = {}
        for offset in range(-max_offset, max_offset + 1):
            weights = np.exp(1j * momenta * offset) / quadrature_points
            entries[offset] = np.tensordot(weights, samples, axes=1)
        self.logger.info(f"Computed mapping coefficients for |N| <= {max_offset} from {quadrature_points} momenta.")
        return MappingCoefficients(entries, quadrature_points, params.delta_tilde)

    def reconstruct_B(self, coefficients: MappingCoefficients, K: float) -> np.ndarray:
        """Truncated sum ``sum_N b_N exp(-i K N)``."""
        return sum(block * np.exp(-1j * K * offset) for offset, block in coefficients.entries.items())

    def reconstruction_error(self, coefficients: MappingCoefficients, params: WalkParams | None = None, momenta: np.ndarray | None = None) -> float:
        """Largest max-norm gap between the truncated sum and the closed form over ``momenta``."""
        params = self.walk_client.resolve_params(params)
        momenta = np.linspace(-np.pi, np.pi, 33) if momenta is None else np.asarray(momenta)
        return max(max_norm(self.reconstruct_B(coefficients, K) - self.mapping_B_of_K(K, params).matrix) for K in momenta)

    def decay_ratio(self, coefficients: MappingCoefficients, entry: tuple[int, int] = (1, 1), floor: float = 1e-14) -> float:
        """Geometric ratio ``|b_{N+1}| / |b_N|`` of one entry, fitted over ``N >= 1``.

        Parameters
        ----------
        coefficients : MappingCoefficients
            Output of :meth:`mapping_real_space_coefficients`.
        entry : tuple[int, int]
            Zero-based matrix entry; ``(1, 1)`` is the upper-left corner of the middle block.
        floor : float
            Magnitudes below this are left out of the fit.

        Returns
        -------
        float
            ``exp(slope)`` of a least-squares line through ``log |b_N|``; NaN with
            fewer than two usable offsets.
        """
        u, v = entry
        offsets = np.array([n for n in coefficients.offsets if n >= 1])
        magnitudes = np.array([abs(coefficients.entries[n][u, v]) for n in offsets])
        usable = magnitudes > floor
        if usable.sum() < 2:
            self.logger.warning(f"decay_ratio: fewer than two offsets above {floor:g} for entry {entry}")
            return float("nan")
        slope, _ = np.polyfit(offsets[usable], np.log(magnitudes[usable]), 1)
        return float(np.exp(slope))

    def analytic_decay_ratio(self, params: WalkParams | None = None) -> float:
        """Ratio set by the nearest complex singularity of ``(1 + X)^{-1/2}``: ``1 / (z + sqrt(z^2 - 1))``, ``z = (2 + t^2) / t^2``."""
        params = self.walk_client.resolve_params(params)
        t2 = np.tan(params.delta_tilde) ** 2
        if t2 == 0.0:
            return 0.0
        z = (2.0 + t2) / t2
        return float(1.0 / (z + np.sqrt(z * z - 1.0)))
