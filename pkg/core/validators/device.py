# core/validators/device.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator
from utils.helpers import rel_error


class DeviceValidator(AcceptanceValidator):
    """Feasibility numbers against the targets in the config's checks block; absent targets are skipped."""

    scenario = "device"

    RELATIVE = (
        ("omega_r_hz", "omega_r_rel_tol"),
        ("a0", "a0_rel_tol"),
        ("lambda_hz", "lambda_rel_tol"),
    )

    def run_checks(self, result: ScenarioResult):
        report = result.summary
        for key, tol_key in self.RELATIVE:
            target = self.threshold(key, None)
            if target is None:
                continue
            tol = self.threshold(tol_key, 0.05)
            offset = rel_error(report[key], target)
            self.record(key, offset <= tol, report[key], f"{target:g} within {tol:.0%}",
                        f"{key} = {report[key]:.4g} ({offset:.2%} from {target:g})")

        low, high = self.threshold("lambda_min_hz", None), self.threshold("lambda_max_hz", None)
        if low is not None or high is not None:
            low = 0.0 if low is None else low
            high = float("inf") if high is None else high
            value = report["lambda_hz"]
            self.record("lambda_range", low <= value <= high, value, f"[{low:g}, {high:g}] Hz",
                        f"lambda/2pi = {value:.4g} Hz")

        n_th = self.threshold("n_th", None)
        if n_th is not None:
            tol = self.threshold("n_th_abs_tol", 2.0)
            self.record("n_th", abs(report["n_th"] - n_th) <= tol, report["n_th"], f"{n_th:g} ± {tol:g}",
                        f"n_th = {report['n_th']:.3f}")
