# core/physics/device.py
"""
SI feasibility numbers for a cantilever + magnetic tip device.

Frequencies returned by this module are angular (rad/s); *_hz helpers divide by 2 pi.
"""
import json
import math
from pathlib import Path
from typing import Dict, Optional

import numpy as np

from config.settings import settings
from core.models.params import DeviceParams, MollowParams
from core.physics.perturbation import mollow_rate
from core.services.error_manager import ConfigError, ParameterError

# CODATA 2018
CONSTANTS = {
    "hbar": 1.054571817e-34,   # J s
    "k_B": 1.380649e-23,       # J / K
    "mu_B": 9.2740100783e-24,  # J / T
}

FLEXURAL_COEFFICIENT = 3.516
MASS_FRACTION = 0.25


def load_materials(path: Optional[Path] = None) -> Dict[str, Dict]:
    """Load the material constant table from JSON."""
    path = Path(path or settings.MATERIALS_PATH)
    if not path.exists():
        raise ConfigError(f"material table not found: {path}", path=str(path))
    with open(path, "r") as f:
        return json.load(f)


def device_from_material(material: str, l: float, w: float, t: float, G_m: float, h: float, T: float,
                         g_s: float = 2.0, materials: Optional[Dict[str, Dict]] = None) -> DeviceParams:
    table = materials if materials is not None else load_materials()
    if material not in table:
        raise ParameterError(f"unknown material '{material}', known: {sorted(table)}")
    entry = table[material]
    return DeviceParams(l=l, w=w, t=t, E=entry["E"], varrho=entry["varrho"], G_m=G_m, h=h, T=T, g_s=g_s,
                        material=material, provenance=entry.get("provenance"))


def fundamental_frequency(d: DeviceParams) -> float:
    """omega_r = 3.516 (t / l^2) sqrt(E / (12 rho))."""
    return FLEXURAL_COEFFICIENT * d.t / d.l ** 2 * math.sqrt(d.E / (12.0 * d.varrho))


def effective_mass(d: DeviceParams) -> float:
    return MASS_FRACTION * d.varrho * d.l * d.w * d.t


def zero_point_amplitude(d: DeviceParams) -> float:
    """a_0 = sqrt(hbar / (2 m_eff omega_r))."""
    return math.sqrt(CONSTANTS["hbar"] / (2.0 * effective_mass(d) * fundamental_frequency(d)))


def magnetic_coupling(d: DeviceParams) -> float:
    """lambda = g_s mu_B G_m a_0 / hbar."""
    return d.g_s * CONSTANTS["mu_B"] * d.G_m * zero_point_amplitude(d) / CONSTANTS["hbar"]


def thermal_occupation(omega_r: float, T: float) -> float:
    """Bose factor 1 / (exp(hbar omega / k_B T) - 1); zero at T = 0."""
    if T < 0:
        raise ParameterError(f"temperature must be non-negative, got {T}")
    if T == 0:
        return 0.0
    return float(1.0 / np.expm1(CONSTANTS["hbar"] * omega_r / (CONSTANTS["k_B"] * T)))


def to_hz(omega: float) -> float:
    return omega / (2.0 * math.pi)


def to_lambda_units(lam_si: float, **frequencies_si: float) -> MollowParams:
    """MollowParams with lam = 1 from angular frequencies in rad/s."""
    if not lam_si > 0:
        raise ParameterError(f"coupling must be positive to set the unit, got {lam_si}")
    return MollowParams(lam=1.0, **{k: v / lam_si for k, v in frequencies_si.items()})


def to_si(p: MollowParams, lam_si: float) -> Dict[str, float]:
    """Angular frequencies in rad/s from parameters in units of lambda."""
    return {k: v * lam_si / p.lam for k, v in p.to_dict().items() if k != "lam"}


def feasibility_report(d: DeviceParams, Omega_ratios: Dict[int, float] = None) -> Dict:
    """
    omega_r, m_eff, a_0, lambda, n_th and the n-phonon rates lambda^(n) in SI.

    Omega_ratios maps phonon order to the drive Omega/lambda at which that
    rate is quoted.
    """
    Omega_ratios = Omega_ratios or {2: 5.0, 3: 7.5}
    omega_r = fundamental_frequency(d)
    lam = magnetic_coupling(d)
    report = {
        "material": d.material,
        "provenance": d.provenance,
        "device": d.to_dict(),
        "constants": dict(CONSTANTS),
        "omega_r": omega_r,
        "omega_r_hz": to_hz(omega_r),
        "m_eff": effective_mass(d),
        "a0": zero_point_amplitude(d),
        "lambda": lam,
        "lambda_hz": to_hz(lam),
        "n_th": thermal_occupation(omega_r, d.T),
        "eta": 2.0 * lam / omega_r,
        "rates_hz": {},
    }
    if lam > 0:
        for n, ratio in sorted(Omega_ratios.items()):
            rate = mollow_rate(int(n), 1.0, float(ratio)).rate
            report["rates_hz"][str(n)] = {"Omega_over_lambda": ratio, "rate_over_lambda": rate,
                                          "rate_hz": to_hz(rate * lam)}
    return report
