# core/models/results.py
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd


@dataclass(frozen=True)
class RateResult:
    n: int
    rate: float
    method: str
    subspace_dim: Optional[int] = None
    energy_shifts: Optional[Dict[str, float]] = None


@dataclass(eq=False)
class SpectrumSweep:
    parameter: str
    grid: np.ndarray
    eigenvalues: np.ndarray
    builder: str
    fixed_params: Dict[str, Any]
    eigenvectors: Optional[np.ndarray] = None

    def to_frame(self) -> pd.DataFrame:
        columns = {self.parameter: self.grid}
        for k in range(self.eigenvalues.shape[1]):
            columns[f"E_{k + 1}"] = self.eigenvalues[:, k]
        return pd.DataFrame(columns)


@dataclass(frozen=True)
class CrossingReport:
    n: int
    Omega_star: float
    gap: float
    predicted_Omega: float
    parameter: str = "Omega"
    tracked_pair: Tuple[str, str] = ("+,0", "-,n")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "parameter": self.parameter,
            "Omega_star": self.Omega_star,
            "gap": self.gap,
            "predicted_Omega": self.predicted_Omega,
            "tracked_pair": list(self.tracked_pair),
        }


@dataclass(eq=False)
class EvolutionResult:
    times: np.ndarray
    expectations: Dict[str, np.ndarray]
    states: Optional[List[np.ndarray]] = None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"time": self.times, **{k: np.real(v) for k, v in self.expectations.items()}})


@dataclass(eq=False)
class TrajectoryRecord:
    seed: int
    times: np.ndarray
    expectations: Dict[str, np.ndarray]
    jumps: List[Tuple[float, int]]
    states: Optional[List[np.ndarray]] = None

    def jump_times(self, channel: Optional[int] = None) -> np.ndarray:
        return np.array([t for t, k in self.jumps if channel is None or k == channel])

    def jump_log(self) -> List[Dict[str, Any]]:
        return [{"seed": self.seed, "time": float(t), "channel": int(k)} for t, k in self.jumps]


@dataclass(eq=False)
class EnsembleResult:
    times: np.ndarray
    mean: Dict[str, np.ndarray]
    stderr: Dict[str, np.ndarray]
    n_traj: int
    seed0: int
    records: Optional[List[TrajectoryRecord]] = None

    def to_frame(self, name: str) -> pd.DataFrame:
        return pd.DataFrame({"time": self.times, "value": self.mean[name], "stderr": self.stderr[name]})


@dataclass(eq=False)
class WignerGrid:
    x: np.ndarray
    p: np.ndarray
    values: np.ndarray  # indexed [p, x]

    def to_frame(self) -> pd.DataFrame:
        xx, pp = np.meshgrid(self.x, self.p)
        return pd.DataFrame({"x": xx.ravel(), "p": pp.ravel(), "W": self.values.ravel()})

    def metadata(self) -> Dict[str, Any]:
        return {
            "convention": "displaced parity, alpha = (x + i p)/sqrt(2), peak 2/pi",
            "x_range": [float(self.x[0]), float(self.x[-1]), len(self.x)],
            "p_range": [float(self.p[0]), float(self.p[-1]), len(self.p)],
        }


@dataclass(eq=False)
class CorrelationSeries:
    n: int
    tau: np.ndarray
    g: np.ndarray
    g0: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"tau": self.tau, "g": self.g})


@dataclass
class CheckResult:
    scenario: str
    check: str
    status: str
    value: Any
    expected: str
    messages: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class ScenarioResult:
    scenario: str
    config_name: str
    parameters: Dict[str, Any]
    summary: Dict[str, Any]
    files: Dict[str, str] = field(default_factory=dict)
    convergence: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
