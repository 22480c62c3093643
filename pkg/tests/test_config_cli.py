"""Configuration validation and the command-line surface."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from qbounce.cli import main
from qbounce.config import (ConfigError, RunConfig, default_config_dict,
                            load_config, validate_config)


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def write_config(tmp_path, overrides=None, name="cfg.json"):
    raw = default_config_dict()
    for dotted, value in (overrides or {}).items():
        keys = dotted.split(".")
        target = raw
        for k in keys[:-1]:
            target = target[k]
        target[keys[-1]] = value
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path


class TestConfigValidation:
    def test_defaults_round_trip(self):
        cfg = validate_config(default_config_dict())
        assert cfg == RunConfig()

    def test_empty_config_uses_defaults(self):
        assert validate_config({}) == RunConfig()

    def test_unknown_root_key_named(self):
        with pytest.raises(ConfigError, match="unknown key: not_a_key"):
            validate_config({"not_a_key": 1})

    def test_unknown_nested_key_named(self):
        with pytest.raises(ConfigError, match="unknown key: geometry.wobble"):
            validate_config({"geometry": {"wobble": 2}})

    def test_type_errors_are_named(self):
        with pytest.raises(ConfigError, match="geometry.velocity"):
            validate_config({"geometry": {"velocity": "fast"}})
        with pytest.raises(ConfigError, match="n_max"):
            validate_config({"n_max": 10.5})

    def test_physics_bounds(self):
        with pytest.raises(ConfigError, match="rotation.latitude_cos"):
            validate_config({"rotation": {"latitude_cos": 1.4}})
        with pytest.raises(ConfigError, match="psd.amplitude_nm2_mm"):
            validate_config({"psd": {"amplitude_nm2_mm": -1.0}})
        with pytest.raises(ConfigError, match="planck_h"):
            validate_config({"constants": {"planck_h": 6.0e-34}})

    def test_level_range_consistency(self):
        with pytest.raises(ConfigError, match="levels"):
            validate_config({"levels": {"min": 5, "max": 2}})
        with pytest.raises(ConfigError, match="levels.max"):
            validate_config({"levels": {"min": 1, "max": 100}, "n_max": 100})

    def test_alpha_list_window(self):
        with pytest.raises(ConfigError, match="alpha_list"):
            validate_config({"alpha_list": [0.2]})
        cfg = validate_config({"alpha_list": [0.0, 1e-5]})
        assert cfg.alpha_list == (0.0, 1e-5)

    def test_output_format_enum(self):
        with pytest.raises(ConfigError, match="output.format"):
            validate_config({"output": {"format": "yaml"}})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ConfigError, match="not valid JSON"):
            load_config(path)

    def test_shipped_default_config_is_valid(self):
        import pathlib
        shipped = pathlib.Path(__file__).resolve().parents[1] / "configs" / "default.json"
        assert load_config(shipped) == RunConfig()


class TestCliCommands:
    def test_eigen_reference_rows(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["eigen", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "eigen.csv")
        tp = header.index("turning_point_um")
        assert float(rows[0][tp]) == pytest.approx(13.7, abs=0.1)
        assert float(rows[1][tp]) == pytest.approx(24.0, abs=0.1)
        assert (out / "eigen.meta.json").exists()

    def test_eigen_level_override_and_bad_range(self, tmp_path):
        out = tmp_path / "out"
        assert main(["eigen", "--out", str(out), "--levels", "1..3"]) == 0
        _, rows = read_csv(out / "eigen.csv")
        assert len(rows) == 3
        assert main(["eigen", "--out", str(out), "--levels", "5..2"]) == 2

    def test_fig1_scan_structure(self, table, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["fig1", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "fig1_level1.csv")
        meta = json.loads((out / "fig1_level1.meta.json").read_text())
        finals = meta["metadata"]["final_levels"]
        assert header == (["frequency_hz"]
                          + [f"p_max_to_{n}" for n in finals]
                          + ["p_max_envelope"])
        assert len(header) == len(finals) + 2
        freqs = np.array([float(r[0]) for r in rows])
        env = np.array([float(r[-1]) for r in rows])
        for n in finals:
            f_res = table.transition_frequency_hz(1, n)
            assert env[np.argmin(np.abs(freqs - f_res))] > 0.99
        assert (out / "fig1_level2.csv").exists()

    def test_fig2_markers_and_slope(self, tmp_path):
        cfg = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["fig2", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "fig2.csv")
        markers = {r[header.index("marker")] for r in rows if r[-1]}
        assert markers == {"resolve_time", "flow_through", "beta_lifetime"}
        times = {float(r[0]): r for r in rows}
        assert {0.01, 0.075, 886.0} <= set(times)
        # inverse law: log-log slope -1 between two grid times
        col = header.index("gradient_t_per_m_1_to_2")
        t1, t2 = 0.01, 886.0
        g1, g2 = float(times[t1][col]), float(times[t2][col])
        slope = (np.log(g2) - np.log(g1)) / (np.log(t2) - np.log(t1))
        assert slope == pytest.approx(-1.0, abs=1e-9)

    def test_fig4_zero_angle_column(self, tmp_path):
        cfg = write_config(tmp_path, {"levels.max": 4})
        out = tmp_path / "out"
        assert main(["fig4", "--config", str(cfg), "--out", str(out),
                     "--alpha", "0", "1e-5"]) == 0
        header, rows = read_csv(out / "fig4.csv")
        zero_col = header.index("p_escape_alpha_0e+00")
        assert all(float(r[zero_col]) == 0.0 for r in rows)
        live_col = header.index("p_escape_alpha_1e-05")
        assert all(float(r[live_col]) > 0.0 for r in rows)

    def test_fig5_reference_magnitude(self, tmp_path):
        cfg = write_config(tmp_path, {"fall_times.points": 7,
                                      "fall_times.min_s": 5e-6,
                                      "fall_times.max_s": 8e-5,
                                      "fall_times.max_level": 2})
        out = tmp_path / "out"
        assert main(["fig5", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "fig5.csv")
        meta = json.loads((out / "fig5.meta.json").read_text())
        assert meta["metadata"]["default_fall_time_s"] == pytest.approx(2e-5)
        times = [float(r[0]) for r in rows]
        assert times == sorted(times)
        p1 = [float(r[header.index("p_loss_level_1")]) for r in rows]
        assert all(p1[i] <= p1[i + 1] + 1e-12 for i in range(len(p1) - 1))

    def test_fig6_additivity_and_summary(self, tmp_path, capsys):
        cfg = write_config(tmp_path, {"levels.max": 3})
        out = tmp_path / "out"
        assert main(["fig6", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "fig6.csv")
        for r in rows:
            total = float(r[header.index("total_rate")])
            parts = sum(float(r[header.index(c)]) for c in
                        ("beta_rate", "wavy_rate", "wall_rate", "corner_rate"))
            assert total == pytest.approx(parts, rel=1e-12)
        meta = json.loads((out / "fig6.meta.json").read_text())
        assert "resolve_threshold_definition" in meta["metadata"]
        assert meta["config"]["levels"]["max"] == 3

    def test_earth_report(self, tmp_path):
        cfg = write_config(tmp_path, {"levels.max": 2})
        out = tmp_path / "out"
        assert main(["earth", "--config", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out / "earth.csv")
        qcol = header.index("quantity")
        vcol = header.index("v_ns_m_per_s")
        jcol = header.index("value_j")
        zero_rows = [r for r in rows if r[qcol] == "rotation_shift"
                     and float(r[vcol]) == 0.0]
        assert zero_rows and all(float(r[jcol]) == 0.0 for r in zero_rows)
        zeeman = [r for r in rows if r[qcol] == "rotational_zeeman_shift"]
        assert len(zeeman) == 1
        pev = float(zeeman[0][header.index("value_pev")])
        assert 3e-8 <= pev <= 1.2e-7
        level1 = [r for r in rows if r[qcol] == "rotation_shift"
                  and r[header.index("level")] == "1"
                  and float(r[vcol]) != 0.0]
        assert "1e-06" in level1[0][header.index("note")]

    def test_json_format_output(self, tmp_path):
        out = tmp_path / "out"
        assert main(["eigen", "--out", str(out), "--levels", "1..2",
                     "--format", "json"]) == 0
        assert not (out / "eigen.csv").exists()
        payload = json.loads((out / "eigen.json").read_text())
        assert payload["columns"][0] == "level"
        assert len(payload["rows"]) == 2

    def test_config_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"mystery": 1}))
        assert main(["eigen", "--config", str(bad)]) == 2
        err = capsys.readouterr().err
        assert "code=2" in err and "mystery" in err

    def test_velocity_override_propagates(self, tmp_path):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, {"levels.max": 2})
        assert main(["fig4", "--config", str(cfg), "--out", str(out),
                     "--velocity", "2.5", "--alpha", "1e-5"]) == 0
        meta = json.loads((out / "fig4.meta.json").read_text())
        assert meta["config"]["geometry"]["velocity"] == 2.5
        assert meta["metadata"]["velocity_m_per_s"] == 2.5

    def test_psd_model_curve(self, tmp_path):
        from qbounce.losses import PSDModel, psd_eval
        out = tmp_path / "out"
        assert main(["psd", "--out", str(out), "--k-min", "1e3",
                     "--k-max", "1e5", "--k-points", "11"]) == 0
        header, rows = read_csv(out / "psd.csv")
        assert header == ["wavenumber_inv_m", "psd_model_m3"]
        assert len(rows) == 11
        model = PSDModel()
        for r in rows:
            assert float(r[1]) == pytest.approx(psd_eval(model, float(r[0])),
                                                rel=1e-12)

    def test_psd_with_measured_profile(self, tmp_path):
        from qbounce.losses import SurfaceProfile, write_profile_binary
        rng = np.random.default_rng(11)
        prof = SurfaceProfile(samples=rng.normal(0, 1e-9, 2048),
                              spacing=1e-6)
        prof_path = tmp_path / "mirror.prof"
        write_profile_binary(prof_path, prof)
        out = tmp_path / "out"
        assert main(["psd", "--out", str(out), "--profile", str(prof_path),
                     "--k-min", "1e4", "--k-max", "4e5",
                     "--k-points", "16"]) == 0
        header, rows = read_csv(out / "psd.csv")
        assert header[-1] == "psd_estimate_m3"
        estimates = [float(r[2]) for r in rows]
        assert all(np.isfinite(v) and v >= 0 for v in estimates)
        meta = json.loads((out / "psd.meta.json").read_text())
        assert meta["metadata"]["profile"]["samples"] == 2048

    def test_psd_missing_profile_is_config_error(self, tmp_path):
        out = tmp_path / "out"
        assert main(["psd", "--out", str(out),
                     "--profile", str(tmp_path / "absent.prof")]) == 2

    def test_psd_bad_grid_is_config_error(self, tmp_path):
        out = tmp_path / "out"
        assert main(["psd", "--out", str(out), "--k-min", "10",
                     "--k-max", "1"]) == 2

    def test_console_entry_point(self, tmp_path):
        out = tmp_path / "out"
        proc = subprocess.run(
            [sys.executable, "-m", "qbounce.cli", "eigen", "--out", str(out),
             "--levels", "1..2"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert (out / "eigen.csv").exists()
