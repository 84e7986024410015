# tests/test_cli.py
import json

import pytest

from config.settings import settings
from main import main


def test_rates_run_with_checks(tmp_path):
    assert main(["run", "rates", "--check", "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "rates" / "summary.json").read_text())
    assert summary["schema_version"] == settings.SCHEMA_VERSION
    assert summary["scenario"] == "rates"
    assert all(c["status"] == "PASS" for c in summary["checks"])
    assert (tmp_path / "rates" / "rates.csv").exists()
    assert (tmp_path / "rates" / "quoted_rates.json").exists()
    assert any((tmp_path / "logs").iterdir())


def test_device_prints_report(tmp_path, capsys):
    assert main(["run", "device-silicon", "--check", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert '"omega_r_hz"' in out
    report = json.loads((tmp_path / "device-silicon" / "device.json").read_text())
    assert report["material"] == "silicon"


def test_failed_checks_exit_one(tmp_path):
    document = json.loads((settings.SCENARIO_DIR / "rates.json").read_text())
    document["checks"]["ld_min_hz"] = 1500.0
    config = tmp_path / "strict.json"
    config.write_text(json.dumps(document, indent=2))
    assert main(["run", str(config), "--check", "--out", str(tmp_path / "out")]) == 1
    assert main(["run", str(config), "--out", str(tmp_path / "out")]) == 0


def test_invalid_config_exits_two(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text('{\n  "scenario": "rates",\n  "name": "bad",\n  "parameters": {},\n  "extra": 1\n}')
    assert main(["run", str(config), "--out", str(tmp_path)]) == 2
    assert "ConfigError" in capsys.readouterr().err
    assert main(["run", "no-such-scenario", "--out", str(tmp_path)]) == 2


def test_numerical_failure_exits_three(tmp_path):
    document = json.loads((settings.SCENARIO_DIR / "lamb-dicke.json").read_text())
    document["cutoff"] = 10
    config = tmp_path / "small.json"
    config.write_text(json.dumps(document, indent=2))
    assert main(["run", str(config), "--out", str(tmp_path)]) == 3


def test_output_root_from_environment(out_root):
    assert main(["run", "device-diamond"]) == 0
    assert (out_root / "device-diamond" / "summary.json").exists()


def test_run_needs_a_config():
    with pytest.raises(SystemExit):
        main(["run"])
