# tests/test_services.py
import json

import numpy as np
import pandas as pd
import pytest

from core.models.results import CheckResult
from core.services.datastore import DataStore, to_plain
from core.services.error_manager import (ConfigError, CutoffError, ErrorManager, IntegrationError,
                                         SimulationError, TrackingError)
from core.services.logger import CheckErrorCode, JSONRunLogger


def test_exit_codes():
    manager = ErrorManager()
    assert manager.exit_code_for(ConfigError("bad key", line=3, path="x.json")) == 2
    assert manager.exit_code_for(TrackingError("lost")) == 3
    assert manager.exit_code_for(ValueError("plain")) == 3


def test_error_description_keeps_context():
    record = ErrorManager().describe(IntegrationError("trace drifted", time=4.5, seed=7))
    assert record["error_code"] == "DYN_001"
    assert record["context"] == {"time": 4.5, "seed": 7}
    assert record["category"] == "Numerical Failure"
    assert ErrorManager().get_error_details("NOPE") is None


def test_config_error_message_has_location():
    error = ConfigError("unknown key 'x'", line=12, path="fock.json")
    assert str(error).startswith("fock.json:12: ")
    assert isinstance(CutoffError("small", required_cutoff=30), SimulationError)


def test_to_plain_conversion():
    converted = to_plain({"a": np.float64(1.5), "b": np.arange(2), "c": 1 + 2j, 3: np.bool_(True)})
    assert converted == {"a": 1.5, "b": [0, 1], "c": {"re": 1.0, "im": 2.0}, "3": True}


def test_datastore_writers(tmp_path):
    frame = pd.DataFrame({"time": [0.0, 0.5], "P1": [0.0, 1.0 / 3.0]})
    table = DataStore.write_table(frame, tmp_path / "nested" / "populations.csv")
    assert table.read_text().splitlines()[-1] == "0.5,0.333333333333"
    assert np.allclose(DataStore.read_table(table)["P1"], [0.0, 0.333333333333])

    document = json.loads(DataStore.write_json({"b": 1, "a": np.int64(2)}, tmp_path / "doc.json").read_text())
    assert list(document) == ["a", "b"]

    lines = DataStore.write_jsonl([{"seed": 1, "time": 0.5}], tmp_path / "jumps.jsonl").read_text().splitlines()
    assert json.loads(lines[0]) == {"seed": 1, "time": 0.5}


def test_run_logger_files(tmp_path, capsys):
    logger = JSONRunLogger(tmp_path / "logs")
    logger.log_check(CheckResult("fock", "peak_P1", "PASS", 0.97, ">= 0.95"))
    assert not logger.failed
    logger.log_check(CheckResult("fock", "convergence", "FAIL", 2e-3, "< 0.0001", ["N=12 vs N=17"]))
    logger.log_error("cat", TrackingError("tracked pair lost"))
    assert logger.failed

    files = logger.save()
    failures = json.loads(files["failures_file"].read_text())
    assert [r["error_code"] for r in failures] == [CheckErrorCode.CONVERGENCE, CheckErrorCode.RUN]
    assert failures[1]["details"]["error_code"] == "SPC_001"
    summary = json.loads(files["summary_file"].read_text())
    assert (summary["passed_checks"], summary["failed_checks"]) == (1, 2)
    assert "Failed Checks: 2" in capsys.readouterr().out


@pytest.mark.parametrize("scenario", sorted(JSONRunLogger.CODE_BY_SCENARIO))
def test_every_scenario_has_a_failure_description(scenario):
    code = JSONRunLogger.CODE_BY_SCENARIO[scenario]
    assert CheckErrorCode.get_description(code) != "Unknown check"
