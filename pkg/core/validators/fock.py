# core/validators/fock.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator


class FockValidator(AcceptanceValidator):
    """
    Peak P_n and the single-phonon leak, both over the first Rabi period of the
    |+,0> <-> |-,n> swap (times flagged `first_period` in populations.csv).
    """

    scenario = "fock"

    def run_checks(self, result: ScenarioResult):
        summary = result.summary
        n = summary["n"]
        peak = summary["peak_population"]
        period = summary.get("first_period")
        span = f" for t <= {period:.4g}" if period is not None else ""
        minimum = self.threshold("min_peak", None)
        if minimum is not None:
            self.record(f"peak_P{n}", peak >= minimum, peak, f">= {minimum:g}",
                        f"peak P{n} = {peak:.4f} at t = {summary['peak_time']:.4g}{span}")

        ratio_limit = self.threshold("max_single_phonon_ratio", None)
        if ratio_limit is not None and n > 1:
            single = summary["max_populations"]["P1"]
            self.record("single_phonon_leak", single < ratio_limit * peak, single,
                        f"< {ratio_limit:g} x peak P{n}",
                        f"max P1 = {single:.3e} against peak P{n} = {peak:.4f}{span}", first_period=period)
