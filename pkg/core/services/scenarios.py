# core/services/scenarios.py
"""
Scenario runners behind `main.py run`.

Each runner turns a validated ScenarioConfig into data files under the output
directory and a ScenarioResult whose summary feeds summary.json and the
acceptance validators. Every runner that truncates the Fock space repeats its
headline numbers at cutoff N + CUTOFF_STEP for the convergence gate.
"""
import math
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import numpy as np
import pandas as pd
from scipy.stats import norm

from config.settings import settings
from core.models.hilbert import HilbertSpace, QuantumState
from core.models.params import DissipationParams, LDParams, MollowParams
from core.models.results import ScenarioResult
from core.models.scenario import ScenarioConfig
from core.physics.device import device_from_material, feasibility_report
from core.physics.dynamics import (lindblad_evolve, make_model, mcwf_trajectory, schrodinger_evolve,
                                   steady_state, trajectory_ensemble)
from core.physics.hilbert import basis_state, cat_state, default_cutoff, spin_op
from core.physics.model import (build_cat_interaction, build_dressed_mollow, build_driven_jc,
                                build_effective_mollow, build_ld_effective, build_ld_polaron,
                                build_ld_rotating, drift_shift, with_drift)
from core.physics.observables import (cat_fidelity, dark_state_residual, fringe_contrast, g2_generalized,
                                      number_populations, parity, phonon_observables, population_operators,
                                      wigner)
from core.physics.perturbation import ld_rate, mollow_rate, resolvent_rate
from core.physics.spectra import find_crossing, sweep
from core.services.datastore import DataStore
from core.services.error_manager import CutoffError, ParameterError

PLUS, MINUS = 0, 1
SPECTRUM_BUILDERS = {"dressed": build_dressed_mollow, "driven_jc": build_driven_jc}
ENSEMBLE_COMPARE_POINTS = 20
PARITY_ATOL = 1e-6
ENSEMBLE_FAMILY_ALPHA = 0.01


def apply_integrator(cfg: ScenarioConfig):
    """Per-scenario integrator overrides; one scenario runs per process."""
    overrides = {"rtol": "ODE_RTOL", "atol": "ODE_ATOL", "method": "ODE_METHOD"}
    for key, attr in overrides.items():
        if key in cfg.integrator:
            setattr(settings, attr, cfg.integrator[key])


def convergence_gate(metrics: Dict[str, Tuple[float, float]], cutoff: int, rtol: float) -> Dict:
    """Relative change of each headline number between cutoff N and N + CUTOFF_STEP."""
    rows = {}
    worst = 0.0
    for name, (base, grown) in metrics.items():
        change = abs(grown - base) / max(abs(base), 1e-12)
        rows[name] = {"value": base, "value_grown": grown, "rel_change": change}
        worst = max(worst, change)
    return {
        "applicable": True,
        "cutoff": cutoff,
        "cutoff_grown": cutoff + settings.CUTOFF_STEP,
        "rtol": rtol,
        "metrics": rows,
        "max_rel_change": worst,
        "passed": worst < rtol,
    }


def _not_truncated() -> Dict:
    return {"applicable": False, "passed": True}


def _result(cfg: ScenarioConfig, summary: Dict, files: Dict[str, Path], convergence: Dict) -> ScenarioResult:
    return ScenarioResult(
        scenario=cfg.scenario,
        config_name=cfg.name,
        parameters=cfg.echo(),
        summary=summary,
        files={k: Path(v).name for k, v in files.items()},
        convergence=convergence,
    )


def _rtol(cfg: ScenarioConfig) -> float:
    return float(cfg.check("convergence_rtol", settings.CONVERGENCE_RTOL))


# --- spectrum ---------------------------------------------------------------

def _crossings(cfg: ScenarioConfig, space: HilbertSpace) -> List[Dict]:
    lam = cfg.param("lam", 1.0)
    reports = []
    for entry in cfg.param("crossings"):
        n = int(entry["n"])
        p = MollowParams(lam=lam, Delta_a=entry["Delta_a"])
        report = find_crossing(build_dressed_mollow, p, space, n,
                               resolution=cfg.param("crossing_resolution", 81), labels=("+,0", f"-,{n}"))
        rate = mollow_rate(n, lam, report.Omega_star).rate
        record = report.to_dict()
        record.update({
            "Delta_a": entry["Delta_a"],
            "rate": rate,
            "predicted_gap": 2.0 * math.sqrt(math.factorial(n)) * abs(rate),
        })
        reports.append(record)
    return reports


def run_spectrum(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    builder_name = cfg.param("builder", "dressed")
    builder = SPECTRUM_BUILDERS[builder_name]
    orders = [int(c["n"]) for c in cfg.param("crossings")]
    cutoff = cfg.cutoff or default_cutoff(max(orders))
    space = HilbertSpace(2, cutoff)

    p = MollowParams(lam=cfg.param("lam", 1.0), Delta_a=cfg.param("Delta_a"))
    grid = np.linspace(cfg.param("Omega_min"), cfg.param("Omega_max"), cfg.param("resolution"))
    levels = tuple(cfg.param("levels")) if cfg.param("levels") else None
    spectrum = sweep(builder, p, space, grid, "Omega", levels=levels)

    crossings = _crossings(cfg, space)
    grown = _crossings(cfg, space.with_cutoff(cutoff + settings.CUTOFF_STEP))
    metrics = {}
    for base, bigger in zip(crossings, grown):
        metrics[f"n{base['n']}_Omega_star"] = (base["Omega_star"], bigger["Omega_star"])
        metrics[f"n{base['n']}_gap"] = (base["gap"], bigger["gap"])

    files = {
        "spectrum": DataStore.write_table(spectrum.to_frame(), out_dir / "spectrum.csv"),
        "crossings": DataStore.write_json({"crossings": crossings}, out_dir / "crossings.json"),
    }
    summary = {"builder": builder_name, "fock_cutoff": cutoff, "levels": list(levels or []),
               "crossings": crossings}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


# --- rates ------------------------------------------------------------------

def run_rates(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    lam = cfg.param("lam", 1.0)
    rows = []
    for n in range(1, cfg.param("cross_orders") + 1):
        for Omega in cfg.param("cross_Omegas"):
            closed = mollow_rate(n, lam, Omega).rate
            resolvent = resolvent_rate(n, lam, Omega)
            rows.append({
                "n": n,
                "Omega": Omega,
                "closed_form": closed,
                "resolvent": resolvent.rate,
                "rel_diff": abs(resolvent.rate - closed) / abs(closed),
                "shift_plus_0": resolvent.energy_shifts["+,0"],
                "shift_minus_n": resolvent.energy_shifts[f"-,{n}"],
            })

    quoted = []
    for entry in cfg.param("quoted"):
        computed = mollow_rate(entry["n"], lam, entry["Omega"]).rate
        quoted.append({**entry, "computed": computed})

    summary = {"quoted": quoted, "cross_max_rel_diff": max(r["rel_diff"] for r in rows)}
    ld = cfg.param("ld_point")
    if ld:
        # the rate is linear in frequency, so Hz in gives Hz out
        rate = ld_rate(ld["n"], ld["lambda_hz"], ld["Omega_hz"], ld["omega_r_hz"])
        summary["ld_point"] = {**ld, "eta": 2.0 * ld["lambda_hz"] / ld["omega_r_hz"], "rate_hz": abs(rate.rate)}

    files = {
        "rates": DataStore.write_table(pd.DataFrame(rows), out_dir / "rates.csv"),
        "quoted": DataStore.write_json({"quoted": quoted}, out_dir / "quoted_rates.json"),
    }
    return _result(cfg, summary, files, _not_truncated())


# --- fock -------------------------------------------------------------------

def _fock_run(cfg: ScenarioConfig, cutoff: int) -> pd.DataFrame:
    n = cfg.param("n")
    space = HilbertSpace(2, cutoff)
    p = MollowParams(lam=cfg.param("lam", 1.0), Omega=cfg.param("Omega"), Delta_a=cfg.param("Delta_a"))
    H = build_effective_mollow(n, p, space, frame=cfg.param("frame", "interaction"))
    d = DissipationParams(gamma_s=cfg.param("gamma_s"), gamma_m=cfg.param("gamma_m"), n_th=cfg.param("n_th"))
    times = np.linspace(0.0, cfg.param("t_max"), cfg.param("n_times"))
    result = lindblad_evolve(make_model(H, d, "fock"), basis_state(space, PLUS, 0).as_mixed(), times,
                             observables=population_operators(space, range(n + 2)))
    return result.to_frame()


def first_rabi_period(n: int, rate: float) -> float:
    """Period of the |+,0> <-> |-,n> population swap, pi / (|lambda^(n)| sqrt(n!))."""
    return math.pi / (abs(rate) * math.sqrt(math.factorial(n)))


def run_fock(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    n = cfg.param("n")
    cutoff = cfg.cutoff or default_cutoff(n)
    frame = _fock_run(cfg, cutoff)
    grown = _fock_run(cfg, cutoff + settings.CUTOFF_STEP)

    rate = mollow_rate(n, cfg.param("lam", 1.0), cfg.param("Omega")).rate
    period = first_rabi_period(n, rate)
    frame["first_period"] = frame["time"] <= period
    window = frame[frame["first_period"]]
    columns = [col for col in frame.columns if col.startswith("P")]

    target = f"P{n}"
    peak = window[target].idxmax()
    summary = {
        "n": n,
        "fock_cutoff": cutoff,
        "rate": rate,
        "first_period": period,
        "peak_population": float(window.loc[peak, target]),
        "peak_time": float(window.loc[peak, "time"]),
        "max_populations": {col: float(window[col].max()) for col in columns},
        "max_populations_full": {col: float(frame[col].max()) for col in columns},
    }
    files = {"populations": DataStore.write_table(frame, out_dir / "populations.csv")}
    grown_window = grown[grown["time"] <= period]
    metrics = {"peak_population": (summary["peak_population"], float(grown_window[target].max()))}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


# --- cat --------------------------------------------------------------------

def _cat_beta(cfg: ScenarioConfig) -> float:
    beta2 = -cfg.param("Omega0") / cfg.param("lambda2")
    if not beta2 > 0:
        raise ParameterError(f"lambda2 and Omega0 must have opposite signs, got beta^2 = {beta2}")
    return math.sqrt(beta2)


def _cat_model(cfg: ScenarioConfig, space: HilbertSpace):
    H = build_cat_interaction(cfg.param("lambda2"), cfg.param("Omega0"), space)
    d = DissipationParams.from_damping(gamma_s=cfg.param("gamma_s"), damping=cfg.param("damping"),
                                       n_th=cfg.param("n_th", 0.0))
    return make_model(H, d, "cat")


def _mean_number(state) -> float:
    populations = number_populations(state)
    return float(np.sum(np.arange(populations.size) * populations))


def _post_jump_state(record, space: HilbertSpace, loss_channel: int, threshold: float) -> Tuple[int, np.ndarray]:
    """First sample after the last phonon-loss jump that follows the build-up; the final sample otherwise."""
    number = np.real(record.expectations["n"])
    grown = np.nonzero(number >= threshold)[0]
    losses = [t for t, k in record.jumps if k == loss_channel]
    if grown.size and losses:
        after = losses[-1]
        later = np.nonzero(record.times > after)[0]
        if later.size and later[0] >= grown[0]:
            return int(later[0]), record.states[later[0]]
    return record.times.size - 1, record.states[-1]


def _parity_follows_jumps(record, loss_channel: int) -> Dict:
    """Parity at each sample against (-1)^(phonon-loss jumps so far) times the initial parity."""
    observed = np.real(record.expectations["parity"])
    losses = np.sort(record.jump_times(loss_channel))
    counts = np.searchsorted(losses, record.times, side="right")
    expected = observed[0] * (-1.0) ** counts
    deviation = float(np.max(np.abs(observed - expected)))
    return {"loss_jumps": int(losses.size), "max_deviation": deviation, "flips_with_jumps": deviation < PARITY_ATOL}


def ensemble_z_limit(points: int, family_alpha: float) -> float:
    """Two-sided Bonferroni z threshold: family-wise false-alarm rate family_alpha over `points` comparisons."""
    if points < 1 or not 0.0 < family_alpha < 1.0:
        raise ParameterError(f"need points >= 1 and 0 < family_alpha < 1, got {points}, {family_alpha}")
    return float(norm.isf(family_alpha / (2.0 * points)))


def run_cat(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    beta = _cat_beta(cfg)
    cutoff = cfg.cutoff or default_cutoff(2, beta)
    space = HilbertSpace(2, cutoff)
    model = _cat_model(cfg, space)
    loss_channel = model.labels.index("phonon_loss")

    rho_ss = steady_state(model)
    grown_ss = steady_state(_cat_model(cfg, space.with_cutoff(cutoff + settings.CUTOFF_STEP)))

    dark_space = HilbertSpace(2, cfg.param("dark_state_cutoff", 50))
    dark_H = build_cat_interaction(cfg.param("lambda2"), cfg.param("Omega0"), dark_space)
    residuals = {label: dark_state_residual(dark_H, cat_state(beta, label, dark_space, spin=MINUS))
                 for label in ("even", "odd")}

    extent = cfg.param("wigner_extent", math.sqrt(2.0) * (beta + 2.0))
    axis = np.linspace(-extent, extent, cfg.param("wigner_points", 41))
    steady_grid = wigner(rho_ss, axis, axis)

    times = np.linspace(0.0, cfg.param("t_max"), cfg.param("n_times"))
    psi0 = basis_state(space, PLUS, 0)
    observables = phonon_observables(space)
    master = lindblad_evolve(model, psi0.as_mixed(), times, observables=observables)

    seed0 = cfg.seeds.get("seed0", 0)
    record = mcwf_trajectory(model, psi0, times, seed0, observables=observables, keep_states=True)
    index, post_jump = _post_jump_state(record, space, loss_channel, 0.5 * beta ** 2)
    trajectory_grid = wigner(QuantumState.pure(post_jump, space, normalize=True), axis, axis)

    summary = {
        "beta": beta,
        "beta_squared": beta ** 2,
        "fock_cutoff": cutoff,
        "steady_mean_number": _mean_number(rho_ss),
        "steady_parity": parity(rho_ss),
        "steady_cat_fidelity": {label: cat_fidelity(rho_ss, beta, label) for label in ("even", "odd")},
        "dark_state_residuals": residuals,
        "steady_fringe_contrast": fringe_contrast(steady_grid, beta),
        "trajectory_fringe_contrast": fringe_contrast(trajectory_grid, beta),
        "trajectory_state_time": float(times[index]),
        "trajectory_parity": _parity_follows_jumps(record, loss_channel),
        "wigner": steady_grid.metadata(),
    }

    files = {
        "phonon_number": DataStore.write_table(master.to_frame(), out_dir / "phonon_number.csv"),
        "trajectory": DataStore.write_table(
            pd.DataFrame({"time": record.times, **{k: np.real(v) for k, v in record.expectations.items()}}),
            out_dir / "trajectory.csv"),
        "jumps": DataStore.write_jsonl(
            [{**j, "label": model.channel_label(j["channel"])} for j in record.jump_log()], out_dir / "jumps.jsonl"),
        "wigner_steady": DataStore.write_table(steady_grid.to_frame(), out_dir / "wigner_steady.csv"),
        "wigner_trajectory": DataStore.write_table(trajectory_grid.to_frame(), out_dir / "wigner_trajectory.csv"),
    }

    if cfg.param("ensemble", False):
        n_traj = cfg.seeds.get("n_traj", 500)
        ensemble = trajectory_ensemble(model, psi0, times, n_traj, seed0, observables={"n": observables["n"]},
                                       threads=threads)
        compare = np.unique(np.linspace(0, times.size - 1, ENSEMBLE_COMPARE_POINTS).astype(int))
        reference = np.real(master.expectations["n"])
        diff = np.abs(ensemble.mean["n"] - reference)[compare]
        err = ensemble.stderr["n"][compare]
        sigmas = np.where(err > 0, diff / np.where(err > 0, err, 1.0), np.where(diff < PARITY_ATOL, 0.0, np.inf))
        family_alpha = float(cfg.check("ensemble_family_alpha", ENSEMBLE_FAMILY_ALPHA))
        worst = int(np.argmax(sigmas))
        summary["ensemble"] = {
            "n_traj": n_traj,
            "seed0": seed0,
            "compared_times": times[compare],
            "points": int(compare.size),
            "family_alpha": family_alpha,
            "z_limit": ensemble_z_limit(compare.size, family_alpha),
            "max_sigma": float(sigmas[worst]),
            "worst_time": float(times[compare][worst]),
        }
        frame = ensemble.to_frame("n")
        frame["master"] = reference
        files["ensemble"] = DataStore.write_table(frame, out_dir / "ensemble_number.csv")

    metrics = {"steady_mean_number": (summary["steady_mean_number"], _mean_number(grown_ss))}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


# --- correlations -----------------------------------------------------------

def _correlation_run(cfg: ScenarioConfig, cutoff: int):
    n = cfg.param("n", 2)
    omega_r = cfg.param("omega_r")
    space = HilbertSpace(2, cutoff)
    p = LDParams(lam=cfg.param("lam", 1.0), Omega=cfg.param("Omega"), delta=n * omega_r, omega_r=omega_r)
    H = build_ld_effective(n, p, space, frame=cfg.param("frame", "interaction"))
    d = DissipationParams.from_damping(gamma_s=cfg.param("gamma_s"), damping=cfg.param("damping"),
                                       n_th=cfg.param("n_th", 0.0), Gamma_0=cfg.param("Gamma_0"))
    model = make_model(H, d, "correlation")
    rho_ss = steady_state(model)
    tau = np.linspace(0.0, cfg.param("tau_max"), cfg.param("n_tau"))
    series = {k: g2_generalized(model, k, tau, rho_ss) for k in cfg.param("orders", [1, 2])}
    return series, rho_ss, p


def _rise(series, rate: float, window) -> Dict:
    """g over tau in window/|rate| against g(0); window is in units of the bundle coupling time 1/|rate|."""
    lo, hi = (float(w) / abs(rate) for w in window)
    inside = (series.tau >= lo) & (series.tau <= hi)
    if not np.any(inside):
        raise ParameterError(f"rise window tau in [{lo:.6g}, {hi:.6g}] lies outside the tau grid "
                             f"(tau_max = {series.tau[-1]:.6g})")
    lowest = float(np.min(series.g[inside]))
    return {"window": [lo, hi], "points": int(np.count_nonzero(inside)), "min_g": lowest,
            "rises": bool(lowest > series.g0)}


def run_correlations(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    n = cfg.param("n", 2)
    cutoff = cfg.cutoff or default_cutoff(n)
    series, rho_ss, p = _correlation_run(cfg, cutoff)
    grown, _, _ = _correlation_run(cfg, cutoff + settings.CUTOFF_STEP)

    rate = ld_rate(n, p.lam, p.Omega, p.omega_r).rate
    window = cfg.check("rise_window", [2.0, 4.0])
    summary = {
        "n": n,
        "regime": cfg.param("regime"),
        "fock_cutoff": cutoff,
        "eta": p.eta,
        "rate": rate,
        "steady_mean_number": _mean_number(rho_ss),
        "g0": {str(k): s.g0 for k, s in series.items()},
        "rise": {str(k): _rise(s, rate, window) for k, s in series.items()},
    }
    frame = pd.DataFrame({"tau": next(iter(series.values())).tau,
                          **{f"g{k}": s.g for k, s in series.items()}})
    files = {"correlations": DataStore.write_table(frame, out_dir / "correlations.csv")}
    metrics = {f"g{k}_0": (s.g0, grown[k].g0) for k, s in series.items()}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


# --- drift ------------------------------------------------------------------

def _drift_peak(cfg: ScenarioConfig, cutoff: int, Delta: float, Omega_x: float, delta_n: float):
    n = cfg.param("n", 2)
    space = HilbertSpace(2, cutoff)
    drift = drift_shift(Delta, Omega_x, delta_n)
    p = with_drift(MollowParams(lam=cfg.param("lam", 1.0), Omega=cfg.param("Omega"), Delta_a=cfg.param("Delta_a"),
                                Omega_x=Omega_x, Delta=Delta), drift)
    d = DissipationParams(gamma_s=cfg.param("gamma_s"), gamma_m=cfg.param("gamma_m"), n_th=cfg.param("n_th"))
    times = np.linspace(0.0, cfg.param("t_max"), cfg.param("n_times"))
    result = lindblad_evolve(make_model(build_dressed_mollow(p, space), d, "fock"),
                             basis_state(space, PLUS, 0).as_mixed(), times,
                             observables=population_operators(space, [n]))
    series = np.real(result.expectations[f"P{n}"])
    return float(series.max()), series, times, drift


def run_drift(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    n = cfg.param("n", 2)
    cutoff = cfg.cutoff or default_cutoff(n)
    Delta, Omega_x = cfg.param("Delta"), cfg.param("Omega_x")
    drifts = sorted(set([0.0] + [float(v) for v in cfg.param("delta_n")]))

    columns, peaks, shifts = {}, {}, []
    times = None
    for delta_n in drifts:
        peak, series, times, drift = _drift_peak(cfg, cutoff, Delta, Omega_x, delta_n)
        columns[f"P{n}_delta_n_{delta_n:g}"] = series
        peaks[delta_n] = peak
        shifts.append({"delta_n": delta_n, "delta_omega_bd": drift.delta_omega_bd, "omega_bd": drift.omega_bd,
                       "dark_overlap": drift.dark_overlap, "bright_overlap": drift.bright_overlap})
    changes = {f"{k:g}": abs(v - peaks[0.0]) / peaks[0.0] for k, v in peaks.items()}

    scale = cfg.param("detuning_scale", 2.0)
    largest = max(drifts)
    # Omega_x scales with Delta so the mixing angle stays fixed
    scaled_base, *_ = _drift_peak(cfg, cutoff, scale * Delta, scale * Omega_x, 0.0)
    scaled_peak, *_ = _drift_peak(cfg, cutoff, scale * Delta, scale * Omega_x, largest)
    grown_base, *_ = _drift_peak(cfg, cutoff + settings.CUTOFF_STEP, Delta, Omega_x, 0.0)

    summary = {
        "n": n,
        "fock_cutoff": cutoff,
        "peaks": {f"{k:g}": v for k, v in peaks.items()},
        "relative_change": changes,
        "scaled_detuning": {
            "detuning_scale": scale,
            "delta_n": largest,
            "baseline_peak": scaled_base,
            "peak": scaled_peak,
            "relative_change": abs(scaled_peak - scaled_base) / scaled_base,
            "original_relative_change": changes[f"{largest:g}"],
        },
    }
    files = {
        "drift": DataStore.write_table(pd.DataFrame({"time": times, **columns}), out_dir / "drift.csv"),
        "shifts": DataStore.write_json({"shifts": shifts}, out_dir / "drift_shifts.json"),
    }
    metrics = {"baseline_peak": (peaks[0.0], grown_base)}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


# --- device -----------------------------------------------------------------

def run_device(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    d = device_from_material(cfg.param("material"), cfg.param("l"), cfg.param("w"), cfg.param("t"),
                             cfg.param("G_m"), cfg.param("h"), cfg.param("T"), g_s=cfg.param("g_s", 2.0))
    drives = {int(k): float(v) for k, v in cfg.param("rate_drives", {2: 5.0, 3: 7.5}).items()}
    report = feasibility_report(d, drives)
    files = {"device": DataStore.write_json(report, out_dir / "device.json")}
    return _result(cfg, report, files, _not_truncated())


# --- lamb-dicke -------------------------------------------------------------

def _ld_dynamics(cfg: ScenarioConfig, cutoff: int):
    n = cfg.param("n")
    omega_r = cfg.param("omega_r")
    space = HilbertSpace(2, cutoff)
    resonant = LDParams(lam=cfg.param("lam"), Omega=cfg.param("Omega"), delta=n * omega_r, omega_r=omega_r)

    half = cfg.param("window", 0.02 * n * omega_r)
    crossing = find_crossing(build_ld_rotating, resonant, space, n, parameter="delta",
                             window=(n * omega_r - half, n * omega_r + half),
                             resolution=cfg.param("crossing_resolution", 81),
                             pair=(space.index(MINUS, 0), space.index(PLUS, n)), labels=("lower,0", f"upper,{n}"))
    calibrated = LDParams(lam=resonant.lam, Omega=resonant.Omega, delta=crossing.Omega_star, omega_r=omega_r)

    rate = ld_rate(n, resonant.lam, resonant.Omega, omega_r).rate
    coupling = math.sqrt(math.factorial(n)) * abs(rate)
    times = np.linspace(0.0, cfg.param("cycles", 1.0) * math.pi / coupling, cfg.param("n_times", 201))
    psi0 = basis_state(space, MINUS, 0)
    upper = {"P_up": spin_op("projector", space, PLUS, PLUS)}
    full = schrodinger_evolve(build_ld_rotating(calibrated, space), psi0, times, upper)
    effective = schrodinger_evolve(build_ld_effective(n, resonant, space, frame="interaction"), psi0, times, upper)
    return times, np.real(full.expectations["P_up"]), np.real(effective.expectations["P_up"]), crossing, rate


def run_lamb_dicke(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    n = cfg.param("n")
    omega_r = cfg.param("omega_r")
    cutoff = cfg.cutoff or 30
    if cutoff < 30:
        raise CutoffError(f"Lamb-Dicke comparison needs fock_cutoff >= 30, got {cutoff}", required_cutoff=30)
    space = HilbertSpace(2, cutoff)
    p = LDParams(lam=cfg.param("lam"), Omega=cfg.param("Omega"), delta=n * omega_r, omega_r=omega_r)
    p.require_lamb_dicke()

    count = cfg.param("spectrum_levels", 20)
    rotating = np.linalg.eigvalsh(build_ld_rotating(p, space).matrix)[:count]
    polaron = np.linalg.eigvalsh(build_ld_polaron(p, space).matrix)[:count]

    times, full, effective, crossing, rate = _ld_dynamics(cfg, cutoff)
    _, full_grown, _, _, _ = _ld_dynamics(cfg, cutoff + settings.CUTOFF_STEP)

    summary = {
        "n": n,
        "eta": p.eta,
        "fock_cutoff": cutoff,
        "rate": rate,
        "spectrum_max_abs_diff": float(np.max(np.abs(rotating - polaron))),
        "calibrated_delta": crossing.Omega_star,
        "crossing_gap": crossing.gap,
        "predicted_gap": 2.0 * math.sqrt(math.factorial(n)) * abs(rate),
        "population_max_abs_diff": float(np.max(np.abs(full - effective))),
    }
    files = {
        "spectrum": DataStore.write_table(
            pd.DataFrame({"level": np.arange(count), "E_rotating": rotating, "E_polaron": polaron,
                          "abs_diff": np.abs(rotating - polaron)}), out_dir / "ld_spectrum.csv"),
        "dynamics": DataStore.write_table(
            pd.DataFrame({"time": times, "P_up_full": full, "P_up_effective": effective}),
            out_dir / "ld_dynamics.csv"),
    }
    metrics = {"peak_P_up_full": (float(full.max()), float(full_grown.max()))}
    return _result(cfg, summary, files, convergence_gate(metrics, cutoff, _rtol(cfg)))


RUNNERS: Dict[str, Callable[[ScenarioConfig, Path, int], ScenarioResult]] = {
    "spectrum": run_spectrum,
    "rates": run_rates,
    "fock": run_fock,
    "cat": run_cat,
    "correlations": run_correlations,
    "drift": run_drift,
    "device": run_device,
    "lamb-dicke": run_lamb_dicke,
}


def run_scenario(cfg: ScenarioConfig, out_dir: Path, threads: int = 1) -> ScenarioResult:
    apply_integrator(cfg)
    DataStore.ensure_dir(out_dir)
    return RUNNERS[cfg.scenario](cfg, Path(out_dir), threads)


def write_summary(result: ScenarioResult, out_dir: Path) -> Path:
    """summary.json: schema version, echoed parameters, convergence gate, results and checks."""
    document = {
        "schema_version": settings.SCHEMA_VERSION,
        "scenario": result.scenario,
        "name": result.config_name,
        "config": result.parameters,
        "convergence": result.convergence,
        "results": result.summary,
        "files": result.files,
        "checks": [
            {"check": c.check, "status": c.status, "value": c.value, "expected": c.expected}
            for c in result.checks
        ],
    }
    return DataStore.write_json(document, Path(out_dir) / "summary.json")
