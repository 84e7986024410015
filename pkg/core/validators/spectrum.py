# core/validators/spectrum.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator
from utils.helpers import rel_error


class SpectrumValidator(AcceptanceValidator):
    """Avoided crossings sit at Omega ≈ n Delta_a / 2 with gap 2 sqrt(n!) |lambda^(n)| (lambda for n = 1)."""

    scenario = "spectrum"

    def run_checks(self, result: ScenarioResult):
        lam = self.cfg.param("lam", 1.0)
        position_tol = self.threshold("omega_star_rel_tol", 0.05)
        for crossing in result.summary["crossings"]:
            n = crossing["n"]
            offset = rel_error(crossing["Omega_star"], crossing["predicted_Omega"])
            self.record(f"n{n}_position", offset <= position_tol, crossing["Omega_star"],
                        f"within {position_tol:.0%} of {crossing['predicted_Omega']:g}",
                        f"n={n} crossing at Omega={crossing['Omega_star']:.5g}, off by {offset:.2%}")

            if n == 1:
                tol, reference = self.threshold("jc_gap_rel_tol", 0.05), lam
            else:
                tol, reference = self.threshold("gap_rel_tol", 0.15), crossing["predicted_gap"]
            gap_error = rel_error(crossing["gap"], reference)
            self.record(f"n{n}_gap", gap_error <= tol, crossing["gap"], f"within {tol:.0%} of {reference:.5g}",
                        f"n={n} gap {crossing['gap']:.5g} against {reference:.5g} ({gap_error:.2%})")
