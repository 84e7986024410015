# core/validators/correlations.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator


class CorrelationValidator(AcceptanceValidator):
    """
    short_lifetime: g1(0) > 1 and g2(0) > 1 (bundle bunching).
    long_lifetime:  g2(0) < 1 and g2 above g2(0) across the rise window, a
                    tau range in units of the bundle coupling time 1/|lambda^(n)|.
    """

    scenario = "correlations"

    def run_checks(self, result: ScenarioResult):
        s = result.summary
        g0 = s["g0"]
        if s["regime"] == "short_lifetime":
            for order in ("1", "2"):
                if order in g0:
                    self.record(f"g{order}_bunched", g0[order] > 1.0, g0[order], "> 1", f"g{order}(0) = {g0[order]:.4f}")
            return

        if "2" not in g0:
            self.record("g2_present", False, None, "order 2 computed", "long_lifetime regime needs order 2")
            return
        self.record("g2_antibunched", g0["2"] < 1.0, g0["2"], "< 1", f"g2(0) = {g0['2']:.4f}")
        rise = s["rise"]["2"]
        lo, hi = rise["window"]
        self.record("g2_rises", rise["rises"], rise["min_g"], f"> g2(0) = {g0['2']:.4f} for tau in [{lo:.4g}, {hi:.4g}]",
                    f"min g2 over {rise['points']} tau points in [{lo:.4g}, {hi:.4g}] is {rise['min_g']:.4f}",
                    window=[lo, hi])
