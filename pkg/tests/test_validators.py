# tests/test_validators.py
from pathlib import Path

import pytest

from core.models.results import ScenarioResult
from core.models.scenario import ScenarioConfig
from core.services.error_manager import ParameterError
from core.services.scenarios import ensemble_z_limit
from core.validators import VALIDATORS
from core.validators.cat import CatValidator
from core.validators.correlations import CorrelationValidator
from core.validators.device import DeviceValidator
from core.validators.drift import DriftValidator
from core.validators.fock import FockValidator
from core.validators.rates import RateValidator


def _cfg(scenario, checks=None, **parameters):
    return ScenarioConfig(scenario=scenario, name=scenario, parameters=parameters, source=Path("inline.json"),
                          checks=checks or {})


def _result(scenario, summary, convergence=None):
    return ScenarioResult(scenario=scenario, config_name=scenario, parameters={}, summary=summary,
                          convergence=convergence or {})


RATE_SUMMARY = {
    "quoted": [
        {"n": 2, "Omega": 5.0, "rate": -0.1, "computed": -0.1},
        {"n": 4, "Omega": 6.0, "rate": -0.004, "significant_figures": 1, "computed": -0.0041152263},
    ],
    "cross_max_rel_diff": 3e-12,
    "ld_point": {"rate_hz": 1125.0, "eta": 0.3},
}


def test_every_scenario_has_a_validator():
    assert set(VALIDATORS) == {"spectrum", "rates", "fock", "cat", "correlations", "drift", "device",
                               "lamb-dicke"}
    assert all(v.scenario == k for k, v in VALIDATORS.items())


def test_rate_checks_pass():
    validator = RateValidator(_cfg("rates"))
    outcome = validator.validate(_result("rates", RATE_SUMMARY))
    assert outcome["status"] == "PASS"
    assert set(outcome["details"]["checks"]) == {"quoted_n2", "quoted_n4", "cross_method", "ld_point"}


def test_one_significant_figure_is_not_four():
    summary = {**RATE_SUMMARY, "quoted": [{"n": 4, "Omega": 6.0, "rate": -0.004, "computed": -0.0041152263}]}
    outcome = RateValidator(_cfg("rates")).validate(_result("rates", summary))
    assert outcome["status"] == "FAIL"
    assert outcome["details"]["checks"]["quoted_n4"] == "FAIL"


def test_ld_window_from_config():
    validator = RateValidator(_cfg("rates", {"ld_min_hz": 1500.0}))
    outcome = validator.validate(_result("rates", RATE_SUMMARY))
    assert outcome["details"]["checks"]["ld_point"] == "FAIL"
    assert outcome["details"]["total_failures"] == 1


def test_fock_peak_and_leak():
    summary = {"n": 2, "peak_population": 0.6, "peak_time": 11.0, "max_populations": {"P1": 0.2}}
    validator = FockValidator(_cfg("fock", {"min_peak": 0.5, "max_single_phonon_ratio": 0.1}))
    outcome = validator.validate(_result("fock", summary))
    assert outcome["details"]["checks"] == {"peak_P2": "PASS", "single_phonon_leak": "FAIL"}
    assert [r.check for r in validator.results] == ["peak_P2", "single_phonon_leak"]


def test_drift_checks():
    summary = {
        "relative_change": {"0.0": 0.0, "5.0": 0.04, "8.0": 0.3},
        "scaled_detuning": {"relative_change": 0.05, "original_relative_change": 0.3, "detuning_scale": 2.0,
                            "delta_n": 8.0},
    }
    outcome = DriftValidator(_cfg("drift", {"small_drift": 5.0, "large_drift": 8.0})).validate(_result("drift", summary))
    assert outcome["status"] == "PASS"


def test_drift_missing_point_fails():
    summary = {
        "relative_change": {"0.0": 0.0, "5.0": 0.04},
        "scaled_detuning": {"relative_change": 0.05, "original_relative_change": 0.3, "detuning_scale": 2.0,
                            "delta_n": 8.0},
    }
    outcome = DriftValidator(_cfg("drift")).validate(_result("drift", summary))
    assert outcome["details"]["checks"]["large_drift"] == "FAIL"


def test_device_targets_are_optional():
    report = {"omega_r_hz": 5.01e6, "a0": 5.76e-13, "lambda_hz": 1.61e5, "n_th": 41.1}
    validator = DeviceValidator(_cfg("device", {"omega_r_hz": 5e6, "omega_r_rel_tol": 0.02, "n_th": 40.0}))
    outcome = validator.validate(_result("device", report))
    assert outcome["details"]["checks"] == {"omega_r_hz": "PASS", "n_th": "PASS"}


def test_convergence_gate_is_recorded():
    gate = {"applicable": True, "passed": False, "cutoff": 30, "cutoff_grown": 35, "rtol": 1e-4,
            "max_rel_change": 3e-3, "metrics": {}}
    summary = {"n": 1, "peak_population": 0.99, "peak_time": 10.0, "max_populations": {"P1": 0.99}}
    validator = FockValidator(_cfg("fock", {"min_peak": 0.95}))
    outcome = validator.validate(_result("fock", summary, gate))
    assert outcome["status"] == "FAIL"
    assert outcome["details"]["checks"]["convergence"] == "FAIL"
    assert any("N=30" in m for m in outcome["messages"])


@pytest.mark.parametrize("applicable", [False, None])
def test_inapplicable_gate_is_skipped(applicable):
    gate = {} if applicable is None else {"applicable": False}
    summary = {"n": 1, "peak_population": 0.99, "peak_time": 10.0, "max_populations": {"P1": 0.99}}
    outcome = FockValidator(_cfg("fock", {"min_peak": 0.95})).validate(_result("fock", summary, gate))
    assert "convergence" not in outcome["details"]["checks"]


def test_fock_leak_message_names_rabi_window():
    summary = {"n": 2, "peak_population": 0.8, "peak_time": 22.0, "first_period": 44.4,
               "max_populations": {"P1": 0.02}, "max_populations_full": {"P1": 0.3}}
    validator = FockValidator(_cfg("fock", {"min_peak": 0.5, "max_single_phonon_ratio": 0.1}))
    outcome = validator.validate(_result("fock", summary))
    assert outcome["status"] == "PASS"
    leak = validator.results[-1]
    assert leak.details["first_period"] == 44.4
    assert "t <= 44.4" in leak.messages[0]


def _correlation_summary(min_g, g0=0.217):
    return {"regime": "long_lifetime", "g0": {"1": 1.4, "2": g0},
            "rise": {"2": {"window": [200.0, 400.0], "points": 201, "min_g": min_g, "rises": min_g > g0}}}


def test_long_lifetime_rise_window():
    validator = CorrelationValidator(_cfg("correlations"))
    outcome = validator.validate(_result("correlations", _correlation_summary(0.41)))
    assert outcome["details"]["checks"] == {"g2_antibunched": "PASS", "g2_rises": "PASS"}
    assert validator.results[-1].details["window"] == [200.0, 400.0]

    outcome = CorrelationValidator(_cfg("correlations")).validate(_result("correlations", _correlation_summary(0.05)))
    assert outcome["details"]["checks"]["g2_rises"] == "FAIL"


def test_short_lifetime_bunching():
    summary = {"regime": "short_lifetime", "g0": {"1": 1.2, "2": 3.5}}
    outcome = CorrelationValidator(_cfg("correlations")).validate(_result("correlations", summary))
    assert outcome["details"]["checks"] == {"g1_bunched": "PASS", "g2_bunched": "PASS"}


def _cat_summary(max_sigma, z_limit):
    return {
        "steady_mean_number": 10.0, "beta_squared": 10.0,
        "dark_state_residuals": {"even": 1e-12, "odd": 1e-12},
        "steady_fringe_contrast": 0.01, "trajectory_fringe_contrast": 0.9, "trajectory_state_time": 800.0,
        "trajectory_parity": {"flips_with_jumps": True, "max_deviation": 1e-9, "loss_jumps": 4},
        "ensemble": {"n_traj": 500, "points": 20, "family_alpha": 0.01, "z_limit": z_limit,
                     "max_sigma": max_sigma, "worst_time": 155.0},
    }


def test_unraveling_uses_family_wise_limit():
    limit = ensemble_z_limit(20, 0.01)
    assert limit == pytest.approx(3.4808, abs=1e-3)
    outcome = CatValidator(_cfg("cat")).validate(_result("cat", _cat_summary(3.04, limit)))
    assert outcome["status"] == "PASS"
    outcome = CatValidator(_cfg("cat")).validate(_result("cat", _cat_summary(3.9, limit)))
    assert outcome["details"]["checks"]["unraveling"] == "FAIL"


def test_family_wise_limit_grows_with_comparisons():
    assert ensemble_z_limit(1, 0.01) == pytest.approx(2.5758, abs=1e-3)
    assert ensemble_z_limit(100, 0.01) > ensemble_z_limit(20, 0.01) > ensemble_z_limit(1, 0.01)
    with pytest.raises(ParameterError):
        ensemble_z_limit(0, 0.01)
