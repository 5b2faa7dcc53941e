"""Unit tests for pydtqw.equivalence.Equivalence."""

import numpy as np
import pytest
from helpers import FakeLogger, FakeWalkClient

from pydtqw.equivalence import Equivalence, FourierBlock4, block_momenta, corner_block, pi_block, regroup, ungroup
from pydtqw.lattice import Basis, LatticeOperator, WalkParams
from pydtqw.lattice.operators import max_norm


def _make_equivalence(logger=None, **params):
    return Equivalence(walk_client=FakeWalkClient(logger=logger, **params))


class TestStrauch:
    def test_two_factorizations_agree(self):
        params = WalkParams(n_sites=8, dt=0.3)
        eq = _make_equivalence()
        assert max_norm(eq.strauch_operator(params=params).array - eq.strauch_operator_cbreve(params=params).array) <= 1e-14

    @pytest.mark.parametrize("theta", [None, 0.4, 2.5])
    def test_conjugate_to_two_angle_walk(self, theta):
        eq = _make_equivalence(n_sites=8, dt=0.3)
        assert eq.strauch_conjugation_error(theta) <= 1e-13

    def test_tends_to_identity(self):
        params = WalkParams(n_sites=6, dt=0.0)
        strauch = _make_equivalence().strauch_operator(params=params)
        assert max_norm(strauch.array - np.eye(12)) <= 1e-14
        assert strauch.radius == 2


class TestFourierBlocks:
    @pytest.mark.parametrize("K", [0.0, 0.9, -2.3, np.pi])
    def test_even_odd_block_matches_bloch_block(self, K):
        params = WalkParams(n_sites=8, dt=0.6)
        eq = _make_equivalence()
        bloch = eq.bloch_block(eq.digitizer.even_odd_transport(params).matrix, K)
        assert max_norm(bloch.matrix - eq.fourier_block_even_odd(K, params).matrix) <= 1e-14

    @pytest.mark.parametrize("K", [0.0, 0.9, -2.3])
    def test_naive_block_matches_bloch_block(self, K):
        params = WalkParams(n_sites=8, dt=0.6)
        eq = _make_equivalence()
        bloch = eq.bloch_block(eq.digitizer.build_naive_dtqw(params).matrix, K)
        assert max_norm(bloch.matrix - eq.fourier_block_naive(K, params).matrix) <= 1e-14

    def test_blocks_differ_on_middle_block_only(self):
        params = WalkParams(dt=0.6)
        eq = _make_equivalence()
        even_odd, naive = (sampler(1.1) for sampler in eq.fourier_blocks(params))
        assert max_norm(corner_block(even_odd) - corner_block(naive)) == 0.0
        assert max_norm(pi_block(even_odd) - pi_block(naive)) > 1e-3

    def test_blocks_are_unitary(self):
        eq = _make_equivalence(dt=0.7)
        assert eq.fourier_block_naive(0.4).unitarity_error() <= 1e-14
        assert eq.fourier_block_even_odd(0.4).unitarity_error() <= 1e-14

    def test_block_shape_is_checked(self):
        with pytest.raises(ValueError, match="4x4"):
            FourierBlock4(0.0, np.eye(2))

    def test_bloch_block_needs_lr_basis(self):
        params = WalkParams(n_sites=8)
        op = LatticeOperator(np.eye(16), Basis.STAGGERED_POSITION, params)
        with pytest.raises(ValueError, match="lr_position"):
            _make_equivalence().bloch_block(op, 0.0)

    def test_block_momenta(self):
        momenta = block_momenta(8)
        assert momenta.size == 4
        assert np.all((momenta >= -np.pi) & (momenta < np.pi))
        assert np.allclose(np.sort(momenta), [-np.pi, -np.pi / 2, 0.0, np.pi / 2])


class TestMomentumMap:
    @pytest.mark.parametrize("K", np.linspace(-np.pi, np.pi, 7))
    def test_closed_form_conjugates_even_odd_to_naive(self, K):
        eq = _make_equivalence(dt=0.5)
        mapping = eq.mapping_B_of_K(K)
        assert eq.conjugation_error(mapping) <= 1e-13
        assert mapping.unitarity_error() <= 1e-14

    def test_closed_form_is_identity_on_corners(self):
        mapping = _make_equivalence(dt=0.5).mapping_B_of_K(0.3)
        assert max_norm(corner_block(mapping) - np.eye(2)) == 0.0

    def test_constructive_map_also_conjugates(self):
        eq = _make_equivalence(dt=0.5)
        assert eq.conjugation_error(eq.mapping_B_constructive(0.8)) <= 1e-9

    def test_undefined_tangent_raises(self):
        logger = FakeLogger()
        eq = _make_equivalence(logger=logger, dt=np.pi)
        with pytest.raises(ValueError, match="tan"):
            eq.mapping_B_of_K(0.0)
        assert logger.levels()[-1] == "error"

    def test_large_tangent_warns(self):
        logger = FakeLogger()
        _make_equivalence(logger=logger, dt=2.0).mapping_B_of_K(0.0)
        assert "warning" in logger.levels()


class TestRealSpaceCoefficients:
    def test_reconstruction_converges(self):
        eq = _make_equivalence(dt=0.5)
        coefficients = eq.mapping_real_space_coefficients(max_offset=8, quadrature_points=256)
        assert coefficients.offsets == list(range(-8, 9))
        assert coefficients.max_offset == 8
        assert eq.reconstruction_error(coefficients) <= 1e-10

    def test_zero_offset_carries_corner_identity(self):
        coefficients = _make_equivalence(dt=0.5).mapping_real_space_coefficients(max_offset=2, quadrature_points=64)
        assert coefficients.entries[0][0, 0] == pytest.approx(1.0)
        assert abs(coefficients.entries[1][0, 0]) <= 1e-14

    def test_decay_follows_nearest_singularity(self):
        eq = _make_equivalence(dt=0.5)
        coefficients = eq.mapping_real_space_coefficients(max_offset=8, quadrature_points=256)
        measured, analytic = eq.decay_ratio(coefficients), eq.analytic_decay_ratio()
        assert analytic < 0.05
        assert measured == pytest.approx(analytic, rel=0.3)

    def test_larger_step_decays_slower(self):
        eq = _make_equivalence()
        assert eq.analytic_decay_ratio(WalkParams(dt=1.0)) > eq.analytic_decay_ratio(WalkParams(dt=0.25))

    def test_zero_step_has_no_decay_to_fit(self):
        logger = FakeLogger()
        eq = _make_equivalence(logger=logger, dt=0.0)
        coefficients = eq.mapping_real_space_coefficients(max_offset=4, quadrature_points=32)
        assert np.isnan(eq.decay_ratio(coefficients))
        assert eq.analytic_decay_ratio() == 0.0
        assert "warning" in logger.levels()

    def test_records(self):
        coefficients = _make_equivalence().mapping_real_space_coefficients(max_offset=1, quadrature_points=16)
        rows = coefficients.to_records()
        assert len(rows) == 3 * 16
        assert rows[0]["entry"] == "11"
        assert rows[0]["offset"] == -1

    @pytest.mark.parametrize("kwargs", [{"max_offset": -1}, {"max_offset": 8, "quadrature_points": 32}])
    def test_invalid_quadrature(self, kwargs):
        with pytest.raises(ValueError):
            _make_equivalence().mapping_real_space_coefficients(**kwargs)


class TestCoinBasis:
    def test_regroup_round_trip(self):
        rng = np.random.default_rng(2)
        matrix = rng.normal(size=(16, 16))
        assert np.array_equal(ungroup(regroup(matrix, 8), 8), matrix)

    def test_decomposition_reproduces_even_odd_step(self):
        params = WalkParams(n_sites=8, dt=0.45)
        eq = _make_equivalence()
        decomposition = eq.even_odd_coin_decomposition(params)
        assert max_norm(decomposition.array - eq.digitizer.even_odd_transport(params).array) <= 1e-13
        assert len(decomposition.factors) == 6

    def test_factor_names(self):
        assert list(_make_equivalence(n_sites=8).coin_basis_factors()) == ["V", "C(-theta)", "S^R", "C(theta)", "S^L"]


class TestWilsonEquivalence:
    def test_residuals_vanish(self):
        result = _make_equivalence(n_sites=8, dt=0.4, m=0.3, r=0.7).wilson_equivalence()
        assert result["rotation_residual"] <= 1e-12
        assert result["hamiltonian_spectral_distance"] <= 1e-10
        assert result["walk_spectral_distance"] <= 1e-10
