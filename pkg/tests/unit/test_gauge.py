"""Unit tests for pydtqw.gauge."""

import numpy as np
import pytest
from helpers import FakeLogger, FakeWalkClient
from scipy.linalg import logm

from pydtqw.digitize import Digitizer
from pydtqw.gauge import Gauge, GaugeConfig, GaugedScheme, GaugeTransform
from pydtqw.lattice import Lattice, WalkParams
from pydtqw.lattice.operators import max_norm


def _make_gauge(logger=None, **params):
    return Gauge(walk_client=FakeWalkClient(logger=logger, **params))


def _random_state(params, seed=0):
    return Lattice(walk_client=FakeWalkClient(params=params)).random_field(seed, params)


def _at(x, offset):
    """``x[p + offset]`` with periodic wrap."""
    return np.roll(x, -offset)


def _expected_leftright_step(field, gauge, j, params):
    """Gauged left-right update written out site by site, temporal phase taken at the source site."""
    c, s = np.cos(params.delta), np.sin(params.delta)
    phase = np.exp(-1j * gauge.alpha(j, params))
    lft, rgt = phase * field.amplitudes[:, 0], phase * field.amplitudes[:, 1]
    vt = gauge.vartheta(j, params)
    hop_in = np.exp(-1j * _at(vt, -1)) * _at(rgt, -1)
    hop_out = np.exp(1j * vt) * _at(lft, 1)
    new_l = s * c * hop_in + c**2 * lft - s * c * rgt + s**2 * hop_out
    new_r = s**2 * hop_in + s * c * lft + c**2 * rgt - s * c * hop_out
    return np.stack([new_l, new_r], axis=1)


def _expected_naive_step(field, gauge, j, params):
    """Gauged naive update written out site by site; two-site hops pick up both link phases."""
    c, s = np.cos(params.theta_tilde / 2.0), np.sin(params.theta_tilde / 2.0)
    phase = np.exp(-1j * gauge.alpha(j, params))
    lft, rgt = phase * field.amplitudes[:, 0], phase * field.amplitudes[:, 1]
    vt = gauge.vartheta(j, params)
    new_l = (
        c**2 * np.exp(1j * (vt + _at(vt, 1))) * _at(lft, 2)
        - s * c * np.exp(1j * vt) * _at(rgt, 1)
        + s**2 * lft
        + s * c * np.exp(-1j * _at(vt, -1)) * _at(rgt, -1)
    )
    new_r = (
        -s * c * np.exp(1j * vt) * _at(lft, 1)
        + s**2 * rgt
        + s * c * np.exp(-1j * _at(vt, -1)) * _at(lft, -1)
        + c**2 * np.exp(-1j * (_at(vt, -1) + _at(vt, -2))) * _at(rgt, -2)
    )
    return np.stack([new_l, new_r], axis=1)


# ---------------------------------------------------------------------------
# Configuration objects
# ---------------------------------------------------------------------------


class TestGaugeConfig:
    def test_window(self):
        gauge = GaugeConfig.zeros(3, 8)
        assert gauge.window == (3, 8)
        assert gauge.a1.shape == (4, 8)

    def test_a1_needs_one_extra_slice(self):
        with pytest.raises(ValueError, match="A1"):
            GaugeConfig(np.zeros((2, 4)), np.zeros((2, 4)))

    def test_charge_must_be_nonzero(self):
        with pytest.raises(ValueError, match="Charge"):
            GaugeConfig.zeros(1, 4, q=0.0)

    def test_non_finite_potential(self):
        a0 = np.zeros((1, 4))
        a0[0, 1] = np.nan
        with pytest.raises(ValueError, match="finite"):
            GaugeConfig(a0, np.zeros((2, 4)))

    def test_potentials_are_read_only(self):
        gauge = GaugeConfig.zeros(1, 4)
        with pytest.raises(ValueError):
            gauge.a0[0, 0] = 1.0

    def test_phases(self):
        params = WalkParams(n_sites=4, a=2.0, dt=0.5)
        a0 = np.arange(4.0)[None, :]
        a1 = np.vstack([np.zeros(4), np.full(4, 0.25)])
        gauge = GaugeConfig(a0, a1, q=2.0)
        assert np.allclose(gauge.alpha(0, params), [0.0, 1.0, 2.0, 3.0])
        assert np.allclose(gauge.vartheta(0, params), [-1.0] * 4)

    def test_time_index_outside_window(self):
        with pytest.raises(IndexError):
            GaugeConfig.zeros(2, 4).alpha(2, WalkParams(n_sites=4))

    def test_lattice_mismatch(self):
        with pytest.raises(ValueError, match="sites"):
            GaugeConfig.zeros(2, 6).check_lattice(WalkParams(n_sites=4))

    def test_random_is_seeded(self):
        assert np.array_equal(GaugeConfig.random(2, 4, seed=9).a0, GaugeConfig.random(2, 4, seed=9).a0)

    def test_from_dict_rejects_unknown_keys(self):
        with pytest.raises(ValueError, match="A2"):
            GaugeConfig.from_dict({"A0": [[0.0] * 4], "A1": [[0.0] * 4] * 2, "A2": []})

    def test_from_dict_requires_potentials(self):
        with pytest.raises(ValueError, match="missing"):
            GaugeConfig.from_dict({"q": 1.0, "A0": [[0.0] * 4]})

    def test_load_yaml(self, tmp_path):
        path = tmp_path / "gauge.yaml"
        path.write_text("q: -1.0\nA0:\n  - [0.1, 0.2, 0.3, 0.4]\nA1:\n  - [0, 0, 0, 0]\n  - [1, 1, 1, 1]\n")
        gauge = GaugeConfig.load(str(path))
        assert gauge.q == -1.0
        assert gauge.window == (1, 4)

    def test_dump_and_load(self, tmp_path):
        gauge = GaugeConfig.random(2, 4, q=0.5, seed=1)
        path = gauge.dump(str(tmp_path / "gauge.json"))
        again = GaugeConfig.load(path)
        assert np.array_equal(again.a0, gauge.a0)
        assert np.array_equal(again.a1, gauge.a1)
        assert again.q == 0.5

    def test_transform_window_is_checked(self):
        gauge = GaugeConfig.zeros(2, 4)
        with pytest.raises(ValueError, match="phi"):
            GaugeTransform(np.zeros((2, 4))).check_window(gauge)


# ---------------------------------------------------------------------------
# Gauged walks
# ---------------------------------------------------------------------------


class TestGaugedWalks:
    def test_zero_field_left_right_step_is_transport(self):
        params = WalkParams(n_sites=8, dt=0.3)
        client = FakeWalkClient()
        step = Gauge(walk_client=client).build_gauged_leftright_step(GaugeConfig.zeros(1, 8), 0, params)
        assert max_norm(step.array - Digitizer(walk_client=client).build_dtqw_compact(params).array) <= 1e-14
        assert step.radius == 1

    def test_zero_field_naive_step_is_naive_transport(self):
        params = WalkParams(n_sites=8, dt=0.3)
        client = FakeWalkClient()
        step = Gauge(walk_client=client).build_gauged_naive_step(GaugeConfig.zeros(1, 8), 0, params)
        assert max_norm(step.array - Digitizer(walk_client=client).build_naive_dtqw(params).array) <= 1e-14
        assert step.radius == 2

    def test_constant_scalar_potential_is_a_global_phase(self):
        params = WalkParams(n_sites=6, dt=0.4)
        client = FakeWalkClient()
        gauge = GaugeConfig(np.full((1, 6), 0.7), np.zeros((2, 6)), q=1.5)
        step = Gauge(walk_client=client).build_gauged_leftright_step(gauge, 0, params)
        expected = np.exp(-1j * 0.4 * 1.5 * 0.7) * Digitizer(walk_client=client).build_dtqw_compact(params).array
        assert max_norm(step.array - expected) <= 1e-14

    @pytest.mark.parametrize("component", ["L", "R"])
    @pytest.mark.parametrize("site", [0, 3, 7])
    def test_leftright_step_on_peak_matches_site_update(self, site, component):
        params = WalkParams(n_sites=8, dt=0.3, a=0.9)
        gauge = GaugeConfig.random(3, 8, q=1.3, seed=11)
        peak = Lattice(walk_client=FakeWalkClient(params=params)).delta_peak(site, component)
        out = _make_gauge().build_gauged_leftright_step(gauge, 1, params).apply(peak)
        assert max_norm(out.amplitudes - _expected_leftright_step(peak, gauge, 1, params)) <= 1e-13

    @pytest.mark.parametrize("component", ["L", "R"])
    @pytest.mark.parametrize("site", [0, 5])
    def test_naive_step_on_peak_matches_site_update(self, site, component):
        params = WalkParams(n_sites=8, dt=0.3, a=0.9)
        gauge = GaugeConfig.random(3, 8, q=-0.7, seed=12)
        peak = Lattice(walk_client=FakeWalkClient(params=params)).delta_peak(site, component)
        out = _make_gauge().build_gauged_naive_step(gauge, 2, params).apply(peak)
        assert max_norm(out.amplitudes - _expected_naive_step(peak, gauge, 2, params)) <= 1e-13

    @pytest.mark.parametrize(
        ("scheme", "expected"),
        [(GaugedScheme.LEFT_RIGHT, _expected_leftright_step), (GaugedScheme.NAIVE, _expected_naive_step)],
    )
    def test_step_on_random_state_matches_site_update(self, scheme, expected):
        params = WalkParams(n_sites=10, dt=0.45)
        gauge = GaugeConfig.random(2, 10, q=2.0, seed=13, scale=2.0)
        state = _random_state(params, 14)
        out = _make_gauge().build_gauged_step(scheme, gauge, 0, params).apply(state)
        assert max_norm(out.amplitudes - expected(state, gauge, 0, params)) <= 1e-13

    @pytest.mark.parametrize(
        ("scheme", "builder"),
        [(GaugedScheme.LEFT_RIGHT, "build_gauged_leftright_hamiltonian"), (GaugedScheme.NAIVE, "build_gauged_naive_hamiltonian")],
    )
    def test_step_generator_tends_to_hamiltonian_at_first_order(self, scheme, builder):
        gauge = GaugeConfig.random(2, 8, q=1.3, seed=15)
        gauge_helper = _make_gauge()
        dts = np.array([0.04, 0.02, 0.01, 0.005])
        errors = []
        for dt in dts:
            params = WalkParams(n_sites=8, dt=float(dt))
            step = gauge_helper.build_gauged_step(scheme, gauge, 1, params)
            hamiltonian = getattr(gauge_helper, builder)(gauge, 1, params)
            errors.append(max_norm(1j * logm(step.array) / dt - hamiltonian.matrix))
        assert np.all(np.diff(errors) < 0)
        slope = np.polyfit(np.log(dts), np.log(errors), 1)[0]
        assert 0.85 <= slope <= 1.15

    def test_time_outside_window(self):
        logger = FakeLogger()
        with pytest.raises(IndexError):
            _make_gauge(logger=logger, n_sites=4).build_gauged_leftright_step(GaugeConfig.zeros(2, 4), 2)
        assert logger.levels()[-1] == "error"

    def test_lattice_must_match(self):
        with pytest.raises(ValueError):
            _make_gauge(n_sites=4).build_gauged_naive_step(GaugeConfig.zeros(2, 6), 0)

    @pytest.mark.parametrize("builder", ["build_gauged_leftright_hamiltonian", "build_gauged_naive_hamiltonian"])
    def test_hamiltonians_are_hermitian_with_scalar_potential_on_diagonal(self, builder):
        params = WalkParams(n_sites=6)
        gauge = GaugeConfig.random(2, 6, q=2.0, seed=4)
        h = getattr(_make_gauge(), builder)(gauge, 1, params)
        assert h.hermiticity_error() <= 1e-15
        assert np.allclose(np.diag(h.matrix)[:6], 2.0 * gauge.a0[1])

    def test_evolution_covers_the_window(self):
        params = WalkParams(n_sites=8, dt=0.3)
        gauge = GaugeConfig.random(5, 8, seed=2)
        trajectory = _make_gauge().evolve_gauged(gauge, _random_state(params), GaugedScheme.NAIVE)
        assert trajectory.steps == 5
        assert trajectory.norm_drift() <= 1e-13

    def test_zero_field_evolution_matches_plain_walk(self):
        params = WalkParams(n_sites=8, dt=0.3)
        client = FakeWalkClient()
        state = _random_state(params)
        gauged = Gauge(walk_client=client).evolve_gauged(GaugeConfig.zeros(3, 8), state, "gauged_left_right")
        digitizer = Digitizer(walk_client=client)
        plain = digitizer.evolve(digitizer.build_dtqw_compact(params), state, 3)
        assert max_norm(gauged.final.amplitudes - plain.final.amplitudes) <= 1e-13


# ---------------------------------------------------------------------------
# Gauge transformations
# ---------------------------------------------------------------------------


class TestGaugeTransforms:
    @pytest.mark.parametrize("scheme", list(GaugedScheme))
    @pytest.mark.parametrize("j", [0, 2])
    def test_steps_are_covariant(self, scheme, j):
        params = WalkParams(n_sites=8, dt=0.4, a=0.8)
        gauge = GaugeConfig.random(3, 8, q=1.3, seed=5)
        transform = GaugeTransform.random(3, 8, seed=6)
        error = _make_gauge().covariance_error(gauge, transform, _random_state(params, 7), j, scheme, params)
        assert error <= 1e-12

    def test_global_phase_leaves_potentials_unchanged(self):
        params = WalkParams(n_sites=4, dt=0.5)
        gauge = GaugeConfig.random(2, 4, seed=3)
        transformed = _make_gauge().transform_potentials(gauge, GaugeTransform.constant(2, 4, 1.2), params)
        assert np.array_equal(transformed.a0, gauge.a0)
        assert np.array_equal(transformed.a1, gauge.a1)

    def test_state_picks_up_local_phase(self):
        params = WalkParams(n_sites=4, dt=0.5)
        gauge = GaugeConfig.zeros(1, 4, q=2.0)
        transform = GaugeTransform(np.vstack([np.zeros(4), np.arange(4.0)]))
        state = _random_state(params)
        rotated, _ = _make_gauge().apply_gauge_transform(state, gauge, transform, 1)
        assert np.allclose(rotated.amplitudes, state.amplitudes * np.exp(2j * np.arange(4.0))[:, None])

    def test_last_slice_is_allowed_but_not_beyond(self):
        params = WalkParams(n_sites=4, dt=0.5)
        gauge = GaugeConfig.zeros(2, 4)
        transform = GaugeTransform.random(2, 4)
        gauge_helper = _make_gauge()
        gauge_helper.apply_gauge_transform(_random_state(params), gauge, transform, 2)
        with pytest.raises(IndexError):
            gauge_helper.apply_gauge_transform(_random_state(params), gauge, transform, 3)

    def test_zero_time_step_is_rejected(self):
        with pytest.raises(ValueError, match="dt"):
            _make_gauge().transform_potentials(GaugeConfig.zeros(1, 4), GaugeTransform.random(1, 4), WalkParams(n_sites=4, dt=0.0))

    def test_large_shift_pattern_must_be_integer(self):
        gauge = GaugeConfig.zeros(1, 4)
        with pytest.raises(ValueError, match="integer"):
            _make_gauge(n_sites=4).large_gauge_shift(gauge, np.full((1, 4), 0.5), np.zeros((2, 4)))

    def test_large_shift_pattern_shape(self):
        gauge = GaugeConfig.zeros(1, 4)
        with pytest.raises(ValueError, match="shapes"):
            _make_gauge(n_sites=4).large_gauge_shift(gauge, np.zeros((2, 4)), np.zeros((2, 4)))

    def test_admissible_shift_has_nonzero_curl(self):
        w0 = np.zeros((3, 6), dtype=int)
        w0[1, 2] = 1
        w1 = np.zeros((4, 6), dtype=int)
        gauge = _make_gauge()
        assert gauge.is_admissible_shift(w0, w1, 1, 1)
        assert gauge.is_admissible_shift(w0, w1, 1, 2)
        assert not gauge.is_admissible_shift(w0, w1, 0, 0)


# ---------------------------------------------------------------------------
# Observables
# ---------------------------------------------------------------------------


class TestObservables:
    def test_field_strength_of_pure_gauge_vanishes(self):
        params = WalkParams(n_sites=6, dt=0.5)
        gauge = _make_gauge()
        pure = gauge.transform_potentials(GaugeConfig.zeros(3, 6), GaugeTransform.random(3, 6, seed=8), params)
        assert np.max(np.abs(gauge.field_strength_map(pure, params))) <= 1e-12

    def test_field_strength_value(self):
        params = WalkParams(n_sites=4, a=2.0, dt=0.5)
        a0 = np.array([[0.0, 1.0, 0.0, 0.0]])
        a1 = np.array([[0.0, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0]])
        gauge = GaugeConfig(a0, a1)
        # (0.5 - 0) / 0.5 + (1 - 0) / 2
        assert _make_gauge().field_strength_F01(gauge, 0, 0, params) == pytest.approx(1.5)

    def test_field_strength_is_gauge_invariant(self):
        params = WalkParams(n_sites=6, dt=0.4)
        helper = _make_gauge()
        gauge = GaugeConfig.random(3, 6, seed=10)
        transformed = helper.transform_potentials(gauge, GaugeTransform.random(3, 6, seed=11), params)
        assert np.max(np.abs(helper.field_strength_map(gauge, params) - helper.field_strength_map(transformed, params))) <= 1e-10

    def test_large_shift_changes_field_strength_but_not_plaquette(self):
        params = WalkParams(n_sites=6, dt=0.4)
        helper = _make_gauge()
        gauge = GaugeConfig.random(3, 6, seed=12)
        w0 = np.zeros((3, 6))
        w0[1, 2] = 1
        shifted = helper.large_gauge_shift(gauge, w0, np.zeros((4, 6)), params)
        assert abs(helper.field_strength_F01(shifted, 1, 1, params) - helper.field_strength_F01(gauge, 1, 1, params)) > 1.0
        assert abs(helper.plaquette_U01(shifted, 1, 1, params) - helper.plaquette_U01(gauge, 1, 1, params)) <= 1e-12

    def test_plaquette_is_unimodular(self):
        params = WalkParams(n_sites=6, dt=0.4)
        plaquettes = _make_gauge().plaquette_map(GaugeConfig.random(2, 6, seed=1), params)
        assert np.allclose(np.abs(plaquettes), 1.0)

    def test_point_outside_window(self):
        logger = FakeLogger()
        with pytest.raises(IndexError):
            _make_gauge(logger=logger, n_sites=4).field_strength_F01(GaugeConfig.zeros(2, 4), 2, 0)
        assert logger.levels()[-1] == "error"

    def test_zero_time_step(self):
        with pytest.raises(ValueError, match="dt"):
            _make_gauge().field_strength_map(GaugeConfig.zeros(1, 4), WalkParams(n_sites=4, dt=0.0))
