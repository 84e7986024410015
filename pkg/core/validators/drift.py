# core/validators/drift.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator


class DriftValidator(AcceptanceValidator):
    scenario = "drift"

    def run_checks(self, result: ScenarioResult):
        s = result.summary
        changes = {float(k): v for k, v in s["relative_change"].items()}

        small, small_max = self.threshold("small_drift", 5.0), self.threshold("small_drift_max_change", 0.1)
        tolerated = {k: v for k, v in changes.items() if k <= small}
        worst = max(tolerated.values()) if tolerated else 0.0
        self.record("small_drift", worst < small_max, worst, f"< {small_max:.0%} for delta_n <= {small:g}",
                    f"largest peak change {worst:.2%} for delta_n <= {small:g}")

        large, large_min = self.threshold("large_drift", 8.0), self.threshold("large_drift_min_change", 0.2)
        change = changes.get(float(large))
        self.record("large_drift", change is not None and change > large_min, change,
                    f"> {large_min:.0%} at delta_n = {large:g}",
                    f"peak change at delta_n = {large:g}: {change:.2%}" if change is not None
                    else f"delta_n = {large:g} was not simulated")

        scaled = s["scaled_detuning"]
        self.record("larger_detuning", scaled["relative_change"] < scaled["original_relative_change"],
                    scaled["relative_change"], f"< {scaled['original_relative_change']:.3g}",
                    f"scaling Delta by {scaled['detuning_scale']:g} changes the delta_n = {scaled['delta_n']:g} "
                    f"degradation from {scaled['original_relative_change']:.2%} to {scaled['relative_change']:.2%}")
