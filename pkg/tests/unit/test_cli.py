"""Unit tests for the pydtqw command-line front end."""

import json

import numpy as np
import pytest
from helpers import FakeWalkClient

from pydtqw.cli import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, build_parser, load_run_config, main
from pydtqw.gauge import GaugeConfig
from pydtqw.lattice import Lattice
from pydtqw.params import WalkParams
from pydtqw.verify import Verifier


@pytest.fixture(autouse=True)
def _isolated_cwd(tmp_path, monkeypatch):
    # WalkClient writes logs/ relative to the working directory
    monkeypatch.chdir(tmp_path)


def _write(tmp_path, text, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _read_csv_header(path):
    header = {}
    with open(path) as handle:
        for line in handle:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition(" = ")
            header[key] = value
    return header


# ---------------------------------------------------------------------------
# Parser and configuration
# ---------------------------------------------------------------------------


class TestParser:
    def test_command_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_unknown_scheme_is_rejected(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["evolve", "--scheme", "domain_wall"])

    def test_verify_takes_an_optional_suite(self):
        assert build_parser().parse_args(["verify"]).suite is None
        assert build_parser().parse_args(["verify", "gauge"]).suite == "gauge"
        with pytest.raises(SystemExit):
            build_parser().parse_args(["verify", "speed"])


class TestLoadRunConfig:
    def test_defaults(self):
        config = load_run_config()
        assert config.scheme == "left_right_dtqw"
        assert config.params == WalkParams()
        assert config.outputs == ("probability_density", "norm")
        assert config.representation == "left_right"

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("scheme: naive_dtqw\nn_sites: 8\ndt: 0.25\nmass: 0.5\n")
        config = load_run_config(str(path), {"dt": 0.1, "n_sites": None})
        assert config.scheme == "naive_dtqw"
        assert config.params == WalkParams(n_sites=8, dt=0.1, m=0.5)
        assert config.representation == "naive"

    def test_json_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"scheme": "wilson", "wilson_r": 0.5, "grid": {"dt": [0.1, 0.2]}}))
        config = load_run_config(str(path))
        assert config.is_hamiltonian
        assert config.params.r == 0.5
        assert config.grid == {"dt": (0.1, 0.2)}

    def test_unknown_key_names_the_line(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("n_sites: 8\nsteps: 3\ncolour: blue\n")
        with pytest.raises(ValueError, match=r"run\.yaml:3: unknown key 'colour'"):
            load_run_config(str(path))

    def test_bad_flag_names_the_flag(self):
        with pytest.raises(ValueError, match="--n-sites"):
            load_run_config(None, {"n_sites": 7})

    @pytest.mark.parametrize(
        ("overrides", "match"),
        [
            ({"a": 0.0}, "spacing"),
            ({"dt": -0.1}, "time step"),
            ({"outputs": ["F01"]}, "gauged scheme"),
            ({"scheme": "naive", "outputs": ["outside_cone_mass"]}, "ultralocal"),
            ({"gauge": "gauge.json"}, "gauge configuration"),
            ({"theta1": 0.3}, "coin angles"),
            ({"scheme": "strauch", "theta2": 0.3}, "single coin angle"),
            ({"initial_state": {"kind": "gaussian", "site": 2}}, "unknown field"),
            ({"initial_state": "vortex"}, "unknown kind"),
            ({"grid": {"steps": [1, 2]}}, "unknown grid key"),
            ({"format": "parquet"}, "unknown format"),
        ],
    )
    def test_invalid_values(self, overrides, match):
        with pytest.raises(ValueError, match=match):
            load_run_config(None, overrides)

    def test_header_carries_resolved_parameters(self):
        header = load_run_config(None, {"n_sites": 8, "seed": 3}).header("evolve")
        assert header["command"] == "evolve"
        assert header["seed"] == 3
        assert header["n_sites"] == 8
        assert header["delta"] == pytest.approx(0.5)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


class TestEvolve:
    def test_csv_outputs(self, tmp_path):
        out = tmp_path / "out"
        code = main(["evolve", "--n-sites", "8", "--steps", "2", "--out-dir", str(out)])
        assert code == EXIT_OK
        header = _read_csv_header(out / "evolve_probability_density.csv")
        assert header["command"] == "evolve"
        assert header["scheme"] == "left_right_dtqw"
        assert "units" in header
        assert (out / "evolve_norm.csv").exists()

    def test_json_output(self, tmp_path):
        out = tmp_path / "out"
        code = main(["evolve", "--scheme", "naive_dtqw", "--n-sites", "8", "--steps", "2", "--format", "json", "--out-dir", str(out)])
        assert code == EXIT_OK
        data = json.loads((out / "evolve.json").read_text())
        assert data["header"]["scheme"] == "naive_dtqw"
        assert data["summary"]["steps"] == 2
        assert len(data["outputs"]["norm"]) == 3
        assert data["outputs"]["norm"][-1]["norm"] == pytest.approx(1.0)

    def test_gauged_run_with_gauge_file(self, tmp_path):
        gauge_path = GaugeConfig.random(4, 8, seed=5).dump(str(tmp_path / "gauge.json"))
        config = tmp_path / "run.yaml"
        config.write_text(f"scheme: gauged_naive\nn_sites: 8\nsteps: 3\ngauge: {gauge_path}\noutputs: [norm, F01, U01]\nformat: json\n")
        assert main(["evolve", "--config", str(config), "--out-dir", str(tmp_path / "out")]) == EXIT_OK
        data = json.loads((tmp_path / "out" / "evolve.json").read_text())
        rows = data["outputs"]["gauge_fields"]
        assert {"j", "p", "F01", "U01"} <= set(rows[0])

    def test_steps_beyond_gauge_window(self, tmp_path, capsys):
        gauge_path = GaugeConfig.random(2, 8).dump(str(tmp_path / "gauge.json"))
        code = main(["evolve", "--scheme", "gauged_left_right", "--n-sites", "8", "--steps", "5", "--config", _write(tmp_path, f"gauge: {gauge_path}\n")])
        assert code == EXIT_CONFIG
        assert "gauge window" in capsys.readouterr().err

    def test_light_cone_output(self, tmp_path):
        code = main(["evolve", "--n-sites", "16", "--steps", "3", "--out-dir", str(tmp_path), "--config", _write(tmp_path, "outputs: [outside_cone_mass]\n")])
        assert code == EXIT_OK
        assert (tmp_path / "evolve_outside_cone_mass.csv").exists()

    def test_light_cone_is_scanned_once(self, tmp_path, monkeypatch):
        calls = []
        scan = Verifier.light_cone_scan

        def counting_scan(self, walk, steps, *args, **kwargs):
            calls.append(steps)
            return scan(self, walk, steps, *args, **kwargs)

        monkeypatch.setattr(Verifier, "light_cone_scan", counting_scan)
        config = _write(tmp_path, "outputs: [norm, outside_cone_mass]\nformat: json\n")
        assert main(["evolve", "--n-sites", "16", "--steps", "3", "--out-dir", str(tmp_path / "out"), "--config", config]) == EXIT_OK
        assert calls == [3]
        data = json.loads((tmp_path / "out" / "evolve.json").read_text())
        assert data["summary"]["outside_cone_mass"] <= 1e-15
        assert len(data["outputs"]["outside_cone_mass"]) == 4

    def test_one_step_peak_splits_evenly_at_quarter_pi(self, tmp_path):
        config = _write(tmp_path, "initial_state:\n  kind: delta_peak\n  site: 4\n  component: L\noutputs: [probability_density]\nformat: json\n")
        args = ["evolve", "--scheme", "left_right_dtqw", "--n-sites", "8", "--a", "1.0", "--dt", repr(np.pi / 4), "--mass", "0.0", "--steps", "1"]
        assert main([*args, "--config", config, "--out-dir", str(tmp_path / "out")]) == EXIT_OK
        rows = json.loads((tmp_path / "out" / "evolve.json").read_text())["outputs"]["probability_density"]
        final = {row["site"]: row for row in rows if row["step"] == 1}
        # one quarter of the probability on each of the four fed amplitudes
        for site in (3, 4):
            for component in ("psi_L", "psi_R"):
                value = final[site][component]
                assert value["re"] ** 2 + value["im"] ** 2 == pytest.approx(0.25, abs=1e-14)
            assert final[site]["density"] == pytest.approx(0.5, abs=1e-14)
        assert all(final[site]["density"] <= 1e-28 for site in final if site not in (3, 4))

    def test_zero_steps_echo_the_initial_state(self, tmp_path):
        config = _write(tmp_path, "initial_state:\n  kind: random\n  seed: 3\noutputs: [probability_density, norm]\nformat: json\n")
        assert main(["evolve", "--n-sites", "8", "--steps", "0", "--config", config, "--out-dir", str(tmp_path / "out")]) == EXIT_OK
        data = json.loads((tmp_path / "out" / "evolve.json").read_text())
        assert data["summary"] == {"norm_drift": 0.0, "steps": 0}
        rows = data["outputs"]["probability_density"]
        params = WalkParams(n_sites=8)
        initial = Lattice(walk_client=FakeWalkClient(params=params)).random_field(3, params)
        assert [row["step"] for row in rows] == [0] * 8
        for row in rows:
            left, right = initial.amplitudes[row["site"]]
            assert complex(row["psi_L"]["re"], row["psi_L"]["im"]) == left
            assert complex(row["psi_R"]["re"], row["psi_R"]["im"]) == right

    def test_long_gaussian_run_keeps_its_norm(self, tmp_path):
        config = _write(tmp_path, "initial_state:\n  kind: gaussian\n  width: 4.0\n  momentum: 0.5\noutputs: [norm]\nformat: json\n")
        assert main(["evolve", "--n-sites", "64", "--steps", "100", "--config", config, "--out-dir", str(tmp_path / "out")]) == EXIT_OK
        data = json.loads((tmp_path / "out" / "evolve.json").read_text())
        norms = [row["norm"] for row in data["outputs"]["norm"]]
        assert len(norms) == 101
        assert max(abs(n - 1.0) for n in norms) <= 1e-12
        assert data["summary"]["norm_drift"] <= 1e-12

    def test_reruns_write_identical_files(self, tmp_path):
        config = _write(tmp_path, "initial_state:\n  kind: random\noutputs: [probability_density, norm]\n")
        for out in ("first", "second"):
            assert main(["evolve", "--n-sites", "8", "--steps", "4", "--seed", "4", "--config", config, "--out-dir", str(tmp_path / out)]) == EXIT_OK
        for name in ("evolve_probability_density.csv", "evolve_norm.csv"):
            assert (tmp_path / "first" / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


class TestConfigErrors:
    def test_odd_site_count(self, capsys):
        assert main(["evolve", "--n-sites", "7"]) == EXIT_CONFIG
        assert "--n-sites" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path):
        assert main(["evolve", "--config", str(tmp_path / "absent.yaml")]) == EXIT_CONFIG

    def test_malformed_yaml(self, tmp_path):
        assert main(["evolve", "--config", _write(tmp_path, "n_sites: [8\n")]) == EXIT_CONFIG


class TestVerify:
    def test_single_suite_passes(self, tmp_path):
        code = main(["verify", "unitarity", "--n-sites", "8", "--format", "json", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "verify_unitarity.json").read_text())
        assert report["passed"] is True
        assert list(report["suites"]) == ["unitarity"]
        assert report["header"]["command"] == "verify"

    def test_csv_format_also_writes_the_json_report(self, tmp_path):
        assert main(["verify", "unitarity", "--n-sites", "8", "--out-dir", str(tmp_path)]) == EXIT_OK
        assert (tmp_path / "verify_unitarity.json").exists()
        assert (tmp_path / "verify_unitarity.csv").exists()

    def test_failed_suite_exits_one(self, tmp_path, monkeypatch):
        failed = {"passed": False, "params": WalkParams().to_dict(), "suites": {"gauge": {"suite": "gauge", "passed": False, "checks": []}}}
        monkeypatch.setattr(Verifier, "run_all_suites", lambda self, params, suites: failed)
        assert main(["verify", "gauge", "--format", "json", "--out-dir", str(tmp_path)]) == EXIT_FAILED
        assert json.loads((tmp_path / "verify_gauge.json").read_text())["passed"] is False


class TestSweep:
    def test_grid_rows(self, tmp_path):
        config = _write(tmp_path, "grid:\n  dt: [0.1, 0.2]\n  mass: [0.0, 0.5]\n")
        code = main(["sweep", "--n-sites", "8", "--steps", "2", "--format", "json", "--config", config, "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        data = json.loads((tmp_path / "sweep_left_right_dtqw.json").read_text())
        assert len(data["rows"]) == 4
        assert data["header"]["grid"] == {"dt": [0.1, 0.2], "mass": [0.0, 0.5]}
        assert all(row["final_norm"] == pytest.approx(1.0) for row in data["rows"])
        assert "step_error" in data["rows"][0]

    def test_empty_grid(self):
        assert main(["sweep"]) == EXIT_CONFIG


class TestSpectrum:
    def test_hamiltonian_energies(self, tmp_path):
        code = main(["spectrum", "--scheme", "naive", "--n-sites", "8", "--mass", "0", "--format", "json", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        data = json.loads((tmp_path / "spectrum_naive.json").read_text())
        assert data["header"]["zero_modes"] == 2
        energies = [row["energy"] for row in data["rows"]]
        assert energies == sorted(energies)
        assert len(energies) == 16

    def test_walk_quasi_energies(self, tmp_path):
        assert main(["spectrum", "--scheme", "even_odd", "--n-sites", "8", "--out-dir", str(tmp_path)]) == EXIT_OK
        with open(tmp_path / "spectrum_even_odd.csv") as handle:
            columns = next(line for line in handle if not line.startswith("#")).strip().split(",")
        assert "quasi_energy" in columns
        assert "eigenvalue_re" in columns


class TestMapCoeffs:
    def test_table_and_decay(self, tmp_path):
        config = _write(tmp_path, "max_offset: 4\nquadrature_points: 64\n")
        code = main(["map-coeffs", "--dt", "0.5", "--format", "json", "--config", config, "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        data = json.loads((tmp_path / "map_coeffs.json").read_text())
        assert len(data["rows"]) == 9 * 16
        assert data["header"]["quadrature_points"] == 64
        assert data["header"]["analytic_decay_ratio"] < 0.05


class TestGaugeCheck:
    @pytest.mark.parametrize("scheme", ["gauged_left_right", "gauged_naive"])
    def test_checks_pass(self, tmp_path, scheme):
        code = main(["gauge-check", "--scheme", scheme, "--n-sites", "8", "--steps", "3", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        report = json.loads((tmp_path / "gauge_check.json").read_text())
        assert report["passed"] is True
        assert report["scheme"] == scheme
        assert (tmp_path / "gauge_covariance.csv").exists()
