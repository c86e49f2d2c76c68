import csv
import json

import numpy as np
import pytest

from tflocal import artifacts as art
from tflocal.cli import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main
from tflocal.stft_bridge import SampledSignal


def run(tmp_path, command, config, out="out"):
    cfg = tmp_path / f"{command}.json"
    cfg.write_text(json.dumps(config))
    return main([command, "--config", str(cfg), "--out", str(tmp_path / out)])


def read_json(path):
    return json.loads(path.read_text())


def test_direct_disk(tmp_path):
    rc = run(tmp_path, "direct", {"domain": {"shape": "disk", "radius": 1.1}, "N": 16})
    assert rc == EXIT_OK
    meta = read_json(tmp_path / "out" / "meta.json")
    assert meta["max_deviation"] <= 1e-8
    assert meta["tflocal_version"] == "0.1.0" and len(meta["config_sha256"]) == 64
    header, rows = art.read_table_csv(tmp_path / "out" / "spectrum.csv")
    assert header == ["index", "eigenvalue", "residual", "closed_form", "deviation"]
    assert len(rows) == 16
    first = (tmp_path / "out" / "spectrum.csv").read_text().splitlines()[0]
    assert first.startswith("# tflocal 0.1.0 config_sha256=")


def test_direct_empty_domain(tmp_path):
    assert run(tmp_path, "direct", {"domain": {"shape": "empty"}, "N": 6}) == EXIT_OK
    _, rows = art.read_table_csv(tmp_path / "out" / "spectrum.csv")
    assert all(float(r[1]) == 0.0 for r in rows)


def test_outputs_are_byte_identical(tmp_path):
    cfg = {"domain": {"shape": "square", "side": 2.0}, "N": 12}
    assert run(tmp_path, "direct", cfg, "a") == EXIT_OK
    assert run(tmp_path, "direct", cfg, "b") == EXIT_OK
    for name in ("spectrum.csv", "matrix.csv", "meta.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    echo_a, echo_b = read_json(tmp_path / "a" / "config.json"), read_json(tmp_path / "b" / "config.json")
    assert echo_a.pop("out") != echo_b.pop("out")
    assert echo_a == echo_b


@pytest.mark.parametrize("config", [
    {"domain": {"shape": "disk", "radius": 1.0}, "bogus": 1},
    {"domain": {"shape": "hexagon"}},
    {"domain": {"shape": "disk", "radius": 1.0}, "N": 0},
    {"domain": {"shape": "disk", "radius": 1.0}, "command": "frames"},
])
def test_config_errors(tmp_path, config, capsys):
    assert run(tmp_path, "direct", config) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_unreadable_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["direct", "--config", str(bad)]) == EXIT_CONFIG


def test_probe_verdicts(tmp_path):
    assert run(tmp_path, "probe", {"domain": {"shape": "disk", "radius": 1.2}}, "d") == EXIT_OK
    rep = read_json(tmp_path / "d" / "probe_report.json")
    assert rep["verdict"] == "DiskCentered" and abs(rep["radius"] - 1.2) < 1e-8
    assert rep["caveat"] == "assuming the symbol is an indicator of a simply connected set"
    assert run(tmp_path, "probe", {"domain": {"shape": "square", "side": 2.0}}, "s") == EXIT_OK
    assert read_json(tmp_path / "s" / "probe_report.json")["verdict"] == "NotRadial"


def test_probe_from_matrix_file(tmp_path):
    assert run(tmp_path, "direct", {"domain": {"shape": "annulus", "r_in": 0.5, "r_out": 1.0}, "N": 32},
               "m") == EXIT_OK
    mfile = str(tmp_path / "m" / "matrix.csv")
    assert run(tmp_path, "probe", {"matrix_file": mfile, "N": 32}, "p") == EXIT_OK
    rep = read_json(tmp_path / "p" / "probe_report.json")
    assert rep["verdict"] == "RadialMultiRing"
    assert rep["rings"][0] == pytest.approx([0.5, 1.0], abs=1e-4)
    assert run(tmp_path, "probe", {"matrix_file": mfile, "N": 40}, "q") == EXIT_CONFIG


def test_probe_needs_exactly_one_source(tmp_path):
    assert run(tmp_path, "probe", {}) == EXIT_CONFIG


def test_symbol_and_wavelet_and_frames(tmp_path):
    assert run(tmp_path, "symbol", {"N_target": 2, "N": 12}, "sym") == EXIT_OK
    meta = read_json(tmp_path / "sym" / "meta.json")
    assert meta["residual_target"] < 1e-10 and meta["residual_next"] > 1e-3
    assert run(tmp_path, "wavelet", {"alpha": 0.5, "n_max": 1, "sample_points": [[0.0, 2.0]]}, "w") == EXIT_OK
    pd = read_json(tmp_path / "w" / "pseudodisk.json")
    assert pd["center"] == [0.0, 1.0] and abs(pd["rho"] - 0.6) < 1e-8
    assert read_json(tmp_path / "w" / "meta.json")["max_transform_error"] < 1e-8
    assert run(tmp_path, "frames", {"redundancies": [2.0]}, "f") == EXIT_OK
    header, rows = art.read_table_csv(tmp_path / "f" / "sweep.csv")
    assert header == ["redundancy", "rect_cond", "hex_cond", "ratio"] and float(rows[0][3]) < 1


def test_validate(tmp_path):
    assert run(tmp_path, "validate", {}) == EXIT_OK
    assert read_json(tmp_path / "out" / "validate.json")["all_passed"] is True


def test_validate_reports_quadrature_failure(tmp_path):
    rc = run(tmp_path, "validate", {"quadrature": {"target_abs_tol": 1e-15}})
    assert rc == EXIT_NUMERIC
    checks = read_json(tmp_path / "out" / "validate.json")["checks"]
    assert any(c["status"] == "quadrature_failure" for c in checks)


def test_matrix_round_trip(tmp_path, rng):
    M = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    stamp = art.Stamp("0" * 64)
    art.write_matrix_csv(tmp_path / "m.csv", M, stamp)
    assert np.array_equal(art.read_matrix_csv(tmp_path / "m.csv"), M)


def test_incomplete_matrix_rejected(tmp_path):
    path = tmp_path / "m.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "re", "im"])
        w.writerow([0, 0, 1.0, 0.0])
        w.writerow([1, 1, 1.0, 0.0])
    with pytest.raises(ValueError):
        art.read_matrix_csv(path)


def test_signal_round_trip(tmp_path, rng):
    sig = SampledSignal(rng.standard_normal(7) + 1j * rng.standard_normal(7), -1.5, 0.25)
    art.write_signal(tmp_path / "s.csv", sig, art.Stamp("f" * 64))
    back = art.read_signal(tmp_path / "s.csv")
    assert np.array_equal(back.samples, sig.samples) and back.t0 == -1.5 and back.dt == 0.25
