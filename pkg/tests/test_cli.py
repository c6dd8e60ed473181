import json
import math

import numpy as np
import pytest

from burgersvortex.cli import main
from burgersvortex.csvio import read_csv, write_csv


def write_cfg(tmp_path, obj, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


class TestCsvIo:
    def test_round_trip_bit_exact(self, tmp_path):
        path = str(tmp_path / "t.csv")
        rng = np.random.default_rng(3)
        x = rng.standard_normal(50)
        y = rng.standard_normal(50) * 1e-17
        write_csv(path, ["x", "y"], [x, y], ["a comment"])
        names, cols = read_csv(path)
        assert names == ["x", "y"]
        np.testing.assert_array_equal(cols[0], x)
        np.testing.assert_array_equal(cols[1], y)

    def test_length_mismatch(self, tmp_path):
        with pytest.raises(ValueError):
            write_csv(str(tmp_path / "t.csv"), ["a", "b"], [np.zeros(3), np.zeros(4)])

    def test_no_header_rejected(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("# only a comment\n")
        with pytest.raises(ValueError):
            read_csv(str(p))


class TestEval:
    def test_steady_profile(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1,
            "solution": {"type": "steady", "alpha": 1.0},
            "grid": {"half_width": 4.0, "num_points": 81},
        })
        assert main(["--out", str(tmp_path), "eval", "--config", cfg]) == 0
        names, cols = read_csv(str(tmp_path / "eval.csv"))
        assert names == ["xi", "omega"]
        mid = 40
        assert cols[1][mid] == pytest.approx(1.0, rel=1e-12)
        np.testing.assert_allclose(cols[1], np.exp(-0.5 * cols[0] ** 2), rtol=1e-10)

    def test_eigenmode_antisymmetry(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1,
            "solution": {"type": "eigenmode", "n": 1, "alpha": 1.0},
            "grid": {"half_width": 4.0, "num_points": 81},
        })
        assert main(["--out", str(tmp_path), "eval", "--config", cfg]) == 0
        _, cols = read_csv(str(tmp_path / "eval.csv"))
        np.testing.assert_allclose(cols[1], -cols[1][::-1], atol=1e-14)

    def test_w_column(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1,
            "solution": {"type": "steady", "alpha": 1.0},
            "grid": {"half_width": 10.0, "num_points": 21},
            "coords": "x",
            "include_w": True,
        })
        assert main(["--out", str(tmp_path), "eval", "--config", cfg]) == 0
        names, cols = read_csv(str(tmp_path / "eval.csv"))
        assert names == ["x", "omega", "w"]
        # gauge and plateau of the Gaussian integral
        assert cols[2][10] == 0.0
        assert cols[2][-1] == pytest.approx(math.sqrt(math.pi / 2), abs=1e-7)

    def test_bad_config_exits_2(self, tmp_path):
        cfg = write_cfg(tmp_path, {"schema_version": 1})
        assert main(["--out", str(tmp_path), "eval", "--config", cfg]) == 2

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["--out", str(tmp_path), "eval", "--config",
                     str(tmp_path / "nope.json")]) == 2


EVOLVE_BASE = {
    "schema_version": 1,
    "equation": "similarity",
    "alpha": 1.0,
    "initial": {"type": "eigenmode", "n": 1, "alpha": 1.0},
    "grid": {"half_width": 10.0, "num_points": 401},
    "time": {"end": 0.5, "dt": 1e-3, "scheme": "trapezoidal"},
    "snapshot_times": [0.0, 0.5],
}


class TestEvolve:
    def test_decay_of_first_mode(self, tmp_path):
        cfg = write_cfg(tmp_path, EVOLVE_BASE)
        assert main(["--out", str(tmp_path), "evolve", "--config", cfg]) == 0
        _, cols0 = read_csv(str(tmp_path / "snapshot_tau0.csv"))
        _, cols1 = read_csv(str(tmp_path / "snapshot_tau0.5.csv"))
        ratio = np.max(np.abs(cols1[1])) / np.max(np.abs(cols0[1]))
        assert ratio == pytest.approx(math.exp(-0.5), abs=2e-3)
        names, ncols = read_csv(str(tmp_path / "norms.csv"))
        assert names == ["tau", "l2", "linf"]
        assert ncols[0][-1] == pytest.approx(0.5)

    def test_repeat_runs_identical(self, tmp_path):
        out1 = tmp_path / "a"
        out2 = tmp_path / "b"
        cfg = write_cfg(tmp_path, EVOLVE_BASE)
        assert main(["--out", str(out1), "evolve", "--config", cfg]) == 0
        assert main(["--out", str(out2), "evolve", "--config", cfg]) == 0
        assert (out1 / "snapshot_tau0.5.csv").read_text() == \
               (out2 / "snapshot_tau0.5.csv").read_text()

    def test_csv_reingest_round_trip(self, tmp_path):
        """Evolve, reload the snapshot as initial data, evolve for zero time;
        the output must be byte-identical to the input snapshot values."""
        cfg = write_cfg(tmp_path, EVOLVE_BASE)
        assert main(["--out", str(tmp_path), "evolve", "--config", cfg]) == 0
        snap = str(tmp_path / "snapshot_tau0.5.csv")
        cfg2 = write_cfg(tmp_path, {
            **EVOLVE_BASE,
            "initial": {"type": "csv", "path": snap},
            "time": {"end": 0.0, "dt": 1e-3},
            "snapshot_times": [0.0],
        }, name="cfg2.json")
        out2 = tmp_path / "again"
        assert main(["--out", str(out2), "evolve", "--config", cfg2]) == 0
        _, a = read_csv(snap)
        _, b = read_csv(str(out2 / "snapshot_tau0.csv"))
        np.testing.assert_array_equal(a[1], b[1])

    def test_grid_mismatch_exits_2(self, tmp_path):
        snap = str(tmp_path / "short.csv")
        write_csv(snap, ["xi", "omega"], [np.zeros(11), np.zeros(11)])
        cfg = write_cfg(tmp_path, {
            **EVOLVE_BASE, "initial": {"type": "csv", "path": snap},
        })
        assert main(["--out", str(tmp_path), "evolve", "--config", cfg]) == 2

    def test_physical_run(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1,
            "equation": "physical",
            "strain": {"kind": "rational", "c1": -0.5, "c2": -1.0},
            "nu": 1.0,
            "initial": {"type": "eigenmode", "n": 0, "alpha": 1.5},
            "grid": {"half_width": 12.0, "num_points": 401},
            "time": {"end": 0.5, "dt": 1e-3, "scheme": "trapezoidal"},
        })
        assert main(["--out", str(tmp_path), "evolve", "--config", cfg]) == 0
        names, _ = read_csv(str(tmp_path / "norms.csv"))
        assert names == ["t", "l2", "linf"]


class TestSpectrum:
    def test_matches_closed_form(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "alpha": 1.0, "k": 4,
            "grid": {"half_width": 10.0, "num_points": 2001},
        })
        assert main(["--out", str(tmp_path), "spectrum", "--config", cfg]) == 0
        payload = json.loads((tmp_path / "spectrum.json").read_text())
        got = [c["eigenvalue"] for c in payload["computed"]]
        np.testing.assert_allclose(got, [0, 1, 2, 3], atol=1e-6)
        assert payload["growing_modes"] == []

    def test_growing_mode_flagged(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "alpha": 0.5, "k": 2,
            "grid": {"half_width": 14.0, "num_points": 2001},
        })
        assert main(["--out", str(tmp_path), "spectrum", "--config", cfg]) == 0
        payload = json.loads((tmp_path / "spectrum.json").read_text())
        assert payload["growing_modes"] == [0]

    def test_tolerance_override_can_fail(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "alpha": 0.5, "k": 1,
            "grid": {"half_width": 10.0, "num_points": 2001},
        })
        # alpha=0.5 on [-10,10] carries ~6e-6 truncation error; an absurdly
        # tight override must turn that into exit code 1
        rc = main(["--out", str(tmp_path), "--tolerance", "spectrum=1e-12",
                   "spectrum", "--config", cfg])
        assert rc == 1

    def test_coarse_grid_exits_2(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "alpha": 1.0, "k": 2,
            "grid": {"half_width": 10.0, "num_points": 101},
        })
        assert main(["--out", str(tmp_path), "spectrum", "--config", cfg]) == 2


class TestCrosscheck:
    def test_winner_reported(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "c1": -0.5, "c2": -1.0, "t_end": 0.5,
            "modes": [0], "num_points": 801, "dt": 2e-3,
        })
        assert main(["--out", str(tmp_path), "crosscheck", "--config", cfg]) == 0
        payload = json.loads((tmp_path / "crosscheck.json").read_text())
        assert payload["cross_checks"][0]["winner"] == "1 - c1"
        assert len(payload["discrepancy_report"]) == 4

    def test_beyond_horizon_exits_2(self, tmp_path):
        cfg = write_cfg(tmp_path, {
            "schema_version": 1, "c1": 0.5, "c2": -1.0, "t_end": 1.5,
        })
        assert main(["--out", str(tmp_path), "crosscheck", "--config", cfg]) == 2


class TestSelfChecks:
    def test_specfun_check(self, tmp_path, capsys):
        assert main(["--out", str(tmp_path), "specfun-check"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_specfun_check_tight_tolerance_fails(self, tmp_path):
        rc = main(["--out", str(tmp_path), "--tolerance", "recurrence=1e-30",
                   "specfun-check"])
        assert rc == 1

    def test_bad_tolerance_syntax_exits_2(self, tmp_path):
        assert main(["--out", str(tmp_path), "--tolerance", "oops", "specfun-check"]) == 2
