# core/models/params.py
from dataclasses import dataclass, field, asdict
from typing import Dict, List, Optional
import warnings

import numpy as np

from core.services.error_manager import ParameterError, SimulationWarning

# Ratio treated as "much larger than" by the perturbative validity flags
PERTURBATIVE_RATIO = 3.0


@dataclass(frozen=True)
class MollowParams:
    """Frequencies of the Mollow chain, in units of λ unless stated otherwise."""
    lam: float = 1.0
    Omega: float = 0.0
    Delta_a: float = 0.0
    Omega_x: float = 0.0
    Delta: float = 0.0
    omega_r: float = 0.0
    D: float = 0.0
    delta_B: float = 0.0
    delta_omega_bd: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"lambda must be positive, got {self.lam}")

    def validity_warnings(self) -> List[str]:
        messages = []
        if self.Omega < PERTURBATIVE_RATIO * self.lam:
            messages.append(f"strong-drive condition Omega >> lambda not met (Omega/lambda = {self.Omega / self.lam:.3g})")
        if self.Omega_x and self.Delta < PERTURBATIVE_RATIO * abs(self.Omega_x):
            messages.append(f"large-detuning condition Delta >> Omega_x not met (Delta/Omega_x = {self.Delta / abs(self.Omega_x):.3g})")
        return messages

    def check_validity(self):
        for message in self.validity_warnings():
            warnings.warn(message, SimulationWarning, stacklevel=3)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class LDParams:
    """Lamb-Dicke chain parameters; eta is always derived from lam and omega_r."""
    lam: float
    Omega: float
    delta: float
    omega_r: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ParameterError(f"lambda must be positive, got {self.lam}")
        if not self.omega_r > 0:
            raise ParameterError(f"omega_r must be positive, got {self.omega_r}")

    @property
    def eta(self) -> float:
        return 2.0 * self.lam / self.omega_r

    def require_lamb_dicke(self):
        if abs(self.eta) >= 1.0:
            raise ParameterError(f"effective Lamb-Dicke parameter |eta| = {abs(self.eta):.3g} must be < 1")

    def to_dict(self) -> Dict[str, float]:
        return {**asdict(self), "eta": self.eta}


@dataclass(frozen=True, eq=False)
class DressedStates:
    """Dressed spin-1 states in the (m_s=+1, 0, -1) basis."""
    theta: float
    omega_d: float
    omega_e: float
    omega_g: float
    omega_bd: float
    omega_dg: float
    omega_eg: float
    omega_bd_approx: float
    g: np.ndarray
    d: np.ndarray
    e: np.ndarray
    b: np.ndarray

    def basis(self) -> np.ndarray:
        """Columns |g⟩, |d⟩, |e⟩."""
        return np.column_stack([self.g, self.d, self.e])


@dataclass(frozen=True)
class DriftParams:
    delta_n: float
    delta_omega_bd: float
    omega_bd: float
    omega_bd_unperturbed: float
    dark_overlap: float
    bright_overlap: float


@dataclass(frozen=True)
class DissipationParams:
    gamma_s: float = 0.0
    gamma_m: float = 0.0
    n_th: float = 0.0
    Gamma_0: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value < 0:
                raise ParameterError(f"{name} must be non-negative, got {value}")

    @classmethod
    def from_damping(cls, gamma_s: float = 0.0, damping: float = 0.0, n_th: float = 0.0,
                     Gamma_0: float = 0.0) -> "DissipationParams":
        """Build from the combined damping (n_th+1)·γ_m quoted by the cat and correlation setups."""
        return cls(gamma_s=gamma_s, gamma_m=damping / (n_th + 1.0), n_th=n_th, Gamma_0=Gamma_0)


@dataclass(frozen=True)
class DeviceParams:
    """Cantilever + tip device in SI units."""
    l: float
    w: float
    t: float
    E: float
    varrho: float
    G_m: float
    h: float
    T: float
    g_s: float = 2.0
    material: str = "custom"
    provenance: Optional[str] = None

    def __post_init__(self):
        for name in ("l", "w", "t", "E", "varrho", "h"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"device parameter {name} must be positive, got {getattr(self, name)}")
        if self.G_m < 0 or self.T < 0 or self.g_s <= 0:
            raise ParameterError("G_m and T must be non-negative and g_s positive")

    def to_dict(self) -> Dict:
        return {k: v for k, v in asdict(self).items() if v is not None}
