# core/models/scenario.py
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional


@dataclass
class ScenarioConfig:
    scenario: str
    name: str
    parameters: Dict[str, Any]
    source: Path
    description: str = ""
    cutoff: Optional[int] = None
    integrator: Dict[str, Any] = field(default_factory=dict)
    seeds: Dict[str, int] = field(default_factory=dict)
    output_dir: Optional[str] = None
    checks: Dict[str, Any] = field(default_factory=dict)

    def param(self, key: str, default: Any = None) -> Any:
        return self.parameters.get(key, default)

    def check(self, key: str, default: Any = None) -> Any:
        return self.checks.get(key, default)

    def echo(self) -> Dict[str, Any]:
        """Parameters as echoed into summary.json."""
        return {
            "scenario": self.scenario,
            "name": self.name,
            "parameters": self.parameters,
            "cutoff": self.cutoff,
            "integrator": self.integrator,
            "seeds": self.seeds,
            "checks": self.checks,
        }
