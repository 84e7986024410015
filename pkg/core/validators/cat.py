# core/validators/cat.py
from core.models.results import ScenarioResult
from core.validators.base import AcceptanceValidator
from utils.helpers import rel_error


class CatValidator(AcceptanceValidator):
    """
    Steady-state phonon number, dark-state residuals, Wigner fringe contrast
    of the steady state and of a post-jump trajectory state, parity flips at
    phonon-loss jumps and, when run, trajectory/master-equation agreement.
    """

    scenario = "cat"

    def run_checks(self, result: ScenarioResult):
        s = result.summary

        tol = self.threshold("mean_number_rel_tol", 0.1)
        offset = rel_error(s["steady_mean_number"], s["beta_squared"])
        self.record("steady_mean_number", offset <= tol, s["steady_mean_number"],
                    f"{s['beta_squared']:g} within {tol:.0%}", f"<n>_ss = {s['steady_mean_number']:.4f}")

        limit = self.threshold("dark_residual_max", 1e-6)
        for label, residual in s["dark_state_residuals"].items():
            self.record(f"dark_{label}", residual < limit, residual, f"< {limit:g}",
                        f"{label} cat residual {residual:.3e}")

        steady_max = self.threshold("steady_fringe_max", 0.1)
        self.record("steady_fringes", s["steady_fringe_contrast"] < steady_max, s["steady_fringe_contrast"],
                    f"< {steady_max:g}", f"steady-state fringe contrast {s['steady_fringe_contrast']:.3f}")

        trajectory_min = self.threshold("trajectory_fringe_min", 0.5)
        self.record("trajectory_fringes", s["trajectory_fringe_contrast"] > trajectory_min,
                    s["trajectory_fringe_contrast"], f"> {trajectory_min:g}",
                    f"post-jump fringe contrast {s['trajectory_fringe_contrast']:.3f} "
                    f"at t = {s['trajectory_state_time']:.4g}")

        flips = s["trajectory_parity"]
        self.record("parity_flips", flips["flips_with_jumps"], flips["max_deviation"], "parity flips at every a-jump",
                    f"{flips['loss_jumps']} phonon-loss jumps, max parity deviation {flips['max_deviation']:.2e}")

        if "ensemble" in s:
            ensemble = s["ensemble"]
            worst, limit = ensemble["max_sigma"], ensemble["z_limit"]
            self.record("unraveling", worst <= limit, worst, f"<= {limit:.3g} standard errors",
                        f"{ensemble['n_traj']} trajectories: worst deviation {worst:.2f} standard errors "
                        f"at t = {ensemble['worst_time']:.4g} over {ensemble['points']} compared times "
                        f"(family-wise alpha {ensemble['family_alpha']:g})")
