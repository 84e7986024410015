# core/validators/rates.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator
from utils.helpers import matches_quoted


class RateValidator(AcceptanceValidator):
    """
    Closed-form n-phonon rates against printed values, the resolvent
    expansion against the closed form, and the low-frequency sideband point.
    """

    scenario = "rates"

    def run_checks(self, result: ScenarioResult):
        summary = result.summary
        quoted_tol = self.threshold("quoted_rel_tol", 1e-12)
        for entry in summary["quoted"]:
            figures = entry.get("significant_figures")
            ok = matches_quoted(entry["computed"], entry["rate"], figures, quoted_tol)
            precision = f"to {figures} significant figures" if figures else f"to relative {quoted_tol:g}"
            self.record(f"quoted_n{entry['n']}", ok, entry["computed"], f"{entry['rate']:g} {precision}",
                        f"lambda^({entry['n']}) at Omega={entry['Omega']:g} is {entry['computed']:.6g}")

        cross_tol = self.threshold("cross_rel_tol", 1e-9)
        worst = summary["cross_max_rel_diff"]
        self.record("cross_method", worst <= cross_tol, worst, f"<= {cross_tol:g}",
                    f"largest closed-form/resolvent relative difference {worst:.3e}")

        if "ld_point" in summary:
            low, high = self.threshold("ld_min_hz", 500.0), self.threshold("ld_max_hz", 2000.0)
            rate_hz = summary["ld_point"]["rate_hz"]
            self.record("ld_point", low <= rate_hz <= high, rate_hz, f"[{low:g}, {high:g}] Hz",
                        f"sideband rate {rate_hz:.4g} Hz at eta={summary['ld_point']['eta']:.3g}")
