# core/validators/lamb_dicke.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator


class LambDickeValidator(AcceptanceValidator):
    scenario = "lamb-dicke"

    def run_checks(self, result: ScenarioResult):
        s = result.summary
        spectrum_atol = self.threshold("spectrum_atol", 1e-8)
        self.record("polaron_spectrum", s["spectrum_max_abs_diff"] <= spectrum_atol, s["spectrum_max_abs_diff"],
                    f"<= {spectrum_atol:g}", f"lowest-level mismatch {s['spectrum_max_abs_diff']:.3e}")

        population_atol = self.threshold("population_atol", 0.1)
        self.record("sideband_dynamics", s["population_max_abs_diff"] <= population_atol,
                    s["population_max_abs_diff"], f"<= {population_atol:g}",
                    f"effective vs full upper-state population differ by {s['population_max_abs_diff']:.3f} "
                    f"(detuning calibrated to {s['calibrated_delta']:.6g})")
