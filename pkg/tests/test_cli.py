import json

import pytest

from ontolab import cli


def run(argv):
    return cli.main(argv)


def test_list_runs(capsys):
    assert run(["list"]) == 0
    out = capsys.readouterr().out
    assert "bell.chsh" in out and "dham.orbit" in out


def test_csv_output_and_determinism(tmp_path, capsys):
    d1 = tmp_path / "a"
    d2 = tmp_path / "b"
    assert run(["cogwheel", "spectrum", "--cycles", "3,5", "--out", str(d1)]) == 0
    assert run(["cogwheel", "spectrum", "--cycles", "3,5", "--out", str(d2)]) == 0
    files1 = sorted(d1.iterdir())
    files2 = sorted(d2.iterdir())
    assert files1 and [f.name for f in files1] == [f.name for f in files2]
    for f1, f2 in zip(files1, files2):
        assert f1.read_bytes() == f2.read_bytes()
    header = files1[0].read_text().splitlines()
    assert header[0].startswith("# experiment=")
    assert any(line.startswith("# seed=") for line in header[:4])


def test_seeded_experiment_writes_json(tmp_path):
    out = tmp_path / "bell"
    assert run(["bell", "chsh", "--n", "20000", "--seed", "7",
                "--out", str(out)]) == 0
    payload = json.loads((out / "bell_chsh.json").read_text())
    result = payload["result"]
    assert result["S_quadrature"] == pytest.approx(2.0 * 2.0**0.5, abs=1e-5)
    assert abs(result["S_montecarlo"] - result["S_quadrature"]) < 0.05


def test_run_with_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "experiment": "neutrino.correlations",
        "params": {"range": "8"},
        "out": str(tmp_path / "nu"),
    }))
    assert run(["run", "--config", str(cfg)]) == 0
    assert (tmp_path / "nu" / "neutrino_correlations.csv").exists()


def test_unknown_config_key_is_config_error(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"experiment": "bell.chsh", "bogus": 1}))
    assert run(["run", "--config", str(cfg)]) == cli.EXIT_CONFIG


def test_missing_experiment_is_config_error(tmp_path):
    assert run(["run", "--out", str(tmp_path)]) == cli.EXIT_CONFIG


def test_bad_numeric_precondition_is_config_error(tmp_path):
    assert run(["hilbert", "omega", "--R", "0.2",
                "--out", str(tmp_path)]) == cli.EXIT_CONFIG


def test_seed_required_for_montecarlo(tmp_path):
    # bell.chsh draws samples, so it insists on an explicit seed
    code = run(["bell", "chsh", "--n", "1000", "--out", str(tmp_path)])
    assert code == cli.EXIT_CONFIG
