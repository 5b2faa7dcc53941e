from __future__ import annotations

import operator
from typing import Any

import numpy as np

from ..digitize.evolution import WalkScheme
from ..equivalence import block_momenta
from ..gauge import GaugeConfig, GaugedScheme, GaugeTransform
from ..lattice.operators import max_norm
from ..lattice.types import Basis, WalkParams
from .symmetry import SymmetryKind

SUITES = ("unitarity", "ultralocality", "equivalence", "gauge", "convergence", "symmetry")
DT_GRID = (0.2, 0.1, 0.05, 0.025)
DELTAS = (0.0, 0.1, 0.5, 1.0, np.pi / 2 - 0.01)
LIGHT_CONE_STEPS = 10

_COMPARISONS = {"<=": operator.le, ">=": operator.ge, "==": operator.eq, ">": operator.gt}


def check(name: str, value: float, threshold: float, comparison: str = "<=") -> dict[str, Any]:
    """One verification row; NaN values never pass."""
    value = float(value)
    passed = not np.isnan(value) and bool(_COMPARISONS[comparison](value, threshold))
    return {"check": name, "value": value, "threshold": float(threshold), "comparison": comparison, "passed": passed}


class SuitesMixin:
    def run_suite(self, name: str, params: WalkParams | None = None) -> dict[str, Any]:
        """Run one named verification suite.

        Parameters
        ----------
        name : str
            One of ``unitarity``, ``ultralocality``, ``equivalence``, ``gauge``,
            ``convergence``, ``symmetry``.
        params : WalkParams, optional
            Base lattice parameters; some checks vary ``dt``, ``r`` or ``N``
            around them.

        Returns
        -------
        dict
            ``{"suite": name, "passed": bool, "checks": [...]}`` where every
            check row carries its value, threshold, comparison and pass flag.

        Raises
        ------
        ValueError
            If the suite name is unknown.
        """
        if name not in SUITES:
            self.logger.error(f"run_suite: unknown suite {name!r}")
            raise ValueError(f"Unknown suite '{name}'. Must be one of: {list(SUITES)}")
        params = self.walk_client.resolve_params(params)
        self.logger.info(f"Starting {name} suite.")
        checks = getattr(self, f"_suite_{name}")(params)
        passed = all(row["passed"] for row in checks)
        for row in checks:
            if not row["passed"]:
                self.logger.warning(f"{name} suite: check '{row['check']}' failed ({row['value']:.3e} {row['comparison']} {row['threshold']:.3e} is false).")
        self.logger.info(f"Completed {name} suite: {'pass' if passed else 'FAIL'} ({len(checks)} checks).")
        return {"suite": name, "passed": passed, "checks": checks}

    # ------------------------------------------------------------------ #
    # Suites                                                               #
    # ------------------------------------------------------------------ #

    def _suite_unitarity(self, params: WalkParams) -> list[dict]:
        rows = []
        tol = self.walk_client.tolerances
        for delta in DELTAS:
            p = params.replace(dt=delta * params.a)
            for scheme in WalkScheme:
                walk = self.digitizer.build_walk(scheme, p)
                rows.append(check(f"{scheme.value}[delta={delta:.3g}] unitarity", walk.matrix.unitarity_error(), tol["operator"]))
                rows.append(check(f"{scheme.value}[delta={delta:.3g}] factorization", walk.factorization_error(), tol["factorization"]))
            strauch = self.equivalence.strauch_operator(params=p)
            rows.append(check(f"strauch[delta={delta:.3g}] unitarity", strauch.matrix.unitarity_error(), tol["operator"]))
        return rows

    def _suite_ultralocality(self, params: WalkParams) -> list[dict]:
        steps = LIGHT_CONE_STEPS
        # room for walks of radius up to 4
        p = params.replace(n_sites=max(params.n_sites, 2 * 4 * steps + 4))
        rows = []
        for scheme in WalkScheme:
            walk = self.digitizer.build_walk(scheme, p)
            report = self.light_cone_scan(walk, steps)
            rows.append(check(f"{scheme.value} outside-cone mass over {steps} steps", report.max_outside, 1e-15))
        gauge = GaugeConfig.random(1, p.n_sites, seed=self.walk_client.seed)
        for scheme in GaugedScheme:
            step = self.gauge.build_gauged_step(scheme, gauge, 0, p)
            rows.append(check(f"{scheme.value} outside-cone mass", self.light_cone_scan(step, 1).max_outside, 1e-15))
        exact = self.exponential_step(self.hamiltonians.build_left_right(p.replace(dt=0.5 * p.a)))
        rows.append(check("exp(-i dt H_left_right) mass beyond distance 2", self.light_cone_scan(exact, 1).mass_beyond(2), 1e-6, ">"))
        return rows

    def _suite_equivalence(self, params: WalkParams) -> list[dict]:
        tol = self.walk_client.tolerances
        p = params.replace(m=0.0)
        d, eq = self.digitizer, self.equivalence
        compact = d.build_dtqw_compact(p)
        rows = [
            check("compact vs U_on U_int", max_norm(compact.array - d.build_U_transport(p).array), tol["factorization"]),
            check("compact shift swap", max_norm(compact.array - d.build_dtqw_compact(p, swap_shifts=True).array), tol["factorization"]),
            check(
                "naive walk vs right-left times left-right at 2a",
                max_norm(d.build_naive_dtqw(p).array - d.build_right_left_dtqw(p).array @ d.build_dtqw_compact(p.replace(a=2 * p.a)).array),
                tol["factorization"],
            ),
            check(
                "two-angle walk at equal angles vs naive walk",
                max_norm(d.build_two_angle_walk(p.theta_tilde, p.theta_tilde, p).array - d.build_naive_dtqw(p).array),
                tol["factorization"],
            ),
            check("even-odd vs naive spectra", self.spectral_compare(d.even_odd_transport(p).matrix, d.build_naive_dtqw(p).matrix), tol["spectral"]),
            check("Strauch conjugation", eq.strauch_conjugation_error(params=p), tol["factorization"]),
            check(
                "Strauch factorizations agree",
                max_norm(eq.strauch_operator(params=p).array - eq.strauch_operator_cbreve(params=p).array),
                tol["factorization"],
            ),
            check(
                "coin-basis rewriting of the even-odd step",
                max_norm(eq.even_odd_coin_decomposition(p).array - d.even_odd_transport(p).array),
                tol["operator"],
            ),
        ]
        small = p.replace(dt=0.1 * p.a)
        strauch = eq.strauch_operator(params=small).matrix
        rows.append(check("Strauch vs minus Strauch spectra at delta=0.1", self.spectral_compare(strauch, strauch.with_matrix(-strauch.matrix)), 0.1, ">"))

        transport = d.even_odd_transport(p).matrix
        naive = d.build_naive_dtqw(p).matrix
        block_err = conj_err = 0.0
        for K in block_momenta(p.n_sites):
            block_err = max(block_err, max_norm(eq.bloch_block(transport, K).matrix - eq.fourier_block_even_odd(K, p).matrix))
            block_err = max(block_err, max_norm(eq.bloch_block(naive, K).matrix - eq.fourier_block_naive(K, p).matrix))
            conj_err = max(conj_err, eq.conjugation_error(eq.mapping_B_of_K(K, p), p))
        rows.append(check("Fourier blocks vs real-space walks", block_err, tol["factorization"]))
        rows.append(check("B_K conjugation", conj_err, tol["operator"]))

        wilson = eq.wilson_equivalence(p)
        rows.append(check("B H_left_right B^dag vs H_wilson(r=1)", wilson["rotation_residual"], tol["operator"]))
        rows.append(check("H_left_right vs H_wilson(r=1) spectra", wilson["hamiltonian_spectral_distance"], tol["spectral"]))
        rows.append(check("Wilson walk vs Wilson even-odd spectra", wilson["walk_spectral_distance"], tol["spectral"]))

        staggered = self.lattice.change_operator_basis(self.hamiltonians.build_left_right(params), Basis.STAGGERED_POSITION)
        rows.append(check("staggering identity", max_norm(staggered.matrix - self.hamiltonians.build_staggered(params).matrix), 1e-14))
        return rows

    def _suite_gauge(self, params: WalkParams) -> list[dict]:
        tol = self.walk_client.tolerances
        seed = self.walk_client.seed
        p = params.replace(dt=params.dt or 0.5 * params.a)
        gauge = GaugeConfig.random(3, p.n_sites, q=1.0, seed=seed)
        field = self.lattice.random_field(seed, p)
        cov = 0.0
        for i in range(20):
            transform = GaugeTransform.random(gauge.j_max, p.n_sites, seed=seed + i + 1)
            for scheme in GaugedScheme:
                cov = max(cov, self.gauge.covariance_error(gauge, transform, field, j=i % gauge.j_max, scheme=scheme, params=p))
        transform = GaugeTransform.random(gauge.j_max, p.n_sites, seed=seed + 101)
        f01 = self.gauge.field_strength_map(gauge, p)
        f01_transformed = self.gauge.field_strength_map(self.gauge.transform_potentials(gauge, transform, p), p)

        w0 = np.zeros(gauge.a0.shape, dtype=int)
        w1 = np.zeros(gauge.a1.shape, dtype=int)
        w0[1, 2] = 1
        shifted = self.gauge.large_gauge_shift(gauge, w0, w1, p)
        u01_shift = max_norm(self.gauge.plaquette_map(shifted, p) - self.gauge.plaquette_map(gauge, p))
        f01_change = abs(self.gauge.field_strength_F01(shifted, 1, 1, p) - self.gauge.field_strength_F01(gauge, 1, 1, p))

        zero = GaugeConfig.zeros(1, p.n_sites)
        zero_gap = max(
            max_norm(self.gauge.build_gauged_leftright_step(zero, 0, p).array - self.digitizer.build_dtqw_compact(p).array),
            max_norm(self.gauge.build_gauged_naive_step(zero, 0, p).array - self.digitizer.build_naive_dtqw(p).array),
        )
        return [
            check("gauge covariance (20 random transforms, both schemes)", cov, tol["operator"]),
            check("F01 gauge invariance", max_norm(f01 - f01_transformed), tol["operator"]),
            check("large shift admissible at (1, 1)", float(self.gauge.is_admissible_shift(w0, w1, 1, 1)), 1.0, "=="),
            check("U01 invariance under large shift", u01_shift, tol["operator"]),
            check("F01 change under large shift", abs(f01_change - 2 * np.pi / (gauge.q * p.a * p.dt)), 1e-9),
            check("zero field reduces to ungauged walks", zero_gap, tol["algebraic"]),
        ]

    def _suite_convergence(self, params: WalkParams) -> list[dict]:
        grid = [f * params.a for f in DT_GRID]
        report = self.continuum_time_limit(self.digitizer.build_left_right_walk, self.hamiltonians.build_left_right, grid, params)
        return [
            check("per-step order deviation from 2", abs(report.order - 2.0), 0.2),
            check("fixed-horizon order deviation from 1", abs(report.horizon_order - 1.0), 0.2),
            check("per-step fit residual", report.residual, 0.1),
        ]

    def _suite_symmetry(self, params: WalkParams) -> list[dict]:
        tol = self.walk_client.tolerances
        massless = params.replace(m=0.0)
        stagger = self.lattice.change_operator_basis
        h_stag = self.hamiltonians.build_staggered(massless)
        transport = stagger(self.digitizer.build_U_transport(massless.replace(dt=0.5 * params.a)).matrix, Basis.STAGGERED_POSITION)
        even_odd = stagger(self.digitizer.even_odd_transport(massless).matrix, Basis.STAGGERED_POSITION)
        wide = massless.replace(n_sites=max(params.n_sites, 256))
        return [
            check("[H_stag(m=0), T1]", self.symmetry_witness(h_stag, SymmetryKind.T1_STAGGERED), tol["operator"]),
            check("[U_transport, T1] at delta=0.5", self.symmetry_witness(transport, SymmetryKind.T1_STAGGERED), 0.05, ">="),
            check("[U_transport, T2] at delta=0.5", self.symmetry_witness(transport, SymmetryKind.T2_STAGGERED), tol["operator"]),
            check("[U_even_odd, T4]", self.symmetry_witness(even_odd, SymmetryKind.T4_STAGGERED), tol["operator"]),
            check("[H_wilson(m=0), Gamma5]", self.symmetry_witness(self.hamiltonians.build_wilson(massless.replace(r=1.0)), SymmetryKind.GAMMA5), 0.0, ">"),
            check("naive zero modes", self.count_zero_modes(self.hamiltonians.build_naive(wide)), 2, "=="),
            check("left-right zero modes", self.count_zero_modes(self.hamiltonians.build_left_right(wide)), 1, "=="),
            check("Wilson(r=1) zero modes", self.count_zero_modes(self.hamiltonians.build_wilson(wide.replace(r=1.0))), 1, "=="),
        ]
