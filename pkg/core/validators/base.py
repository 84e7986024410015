# core/validators/base.py
from typing import Any, Dict, List

from core.models.results import CheckResult, ScenarioResult
from core.models.scenario import ScenarioConfig


class AcceptanceValidator:
    """
    Shared plumbing for the per-scenario acceptance validators.

    Subclasses implement run_checks(); validate() returns the status dict
    used throughout the code base and leaves the individual CheckResult
    records in self.results for the run logger.
    """

    scenario = ""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        self.results: List[CheckResult] = []

    def threshold(self, key: str, default: Any) -> Any:
        return self.cfg.check(key, default)

    def record(self, check: str, passed: bool, value: Any, expected: str, message: str = "",
               **details) -> CheckResult:
        result = CheckResult(
            scenario=self.scenario,
            check=check,
            status="PASS" if passed else "FAIL",
            value=value,
            expected=expected,
            messages=[message] if message else [],
            details=details,
        )
        self.results.append(result)
        return result

    def check_convergence(self, result: ScenarioResult):
        gate = result.convergence
        if not gate.get("applicable"):
            return
        self.record("convergence", gate["passed"], gate["max_rel_change"], f"< {gate['rtol']:g}",
                    f"N={gate['cutoff']} vs N={gate['cutoff_grown']}: max relative change {gate['max_rel_change']:.3e}",
                    metrics=gate["metrics"])

    def run_checks(self, result: ScenarioResult):
        raise NotImplementedError

    def validate(self, result: ScenarioResult) -> Dict:
        self.results = []
        self.run_checks(result)
        self.check_convergence(result)
        failed = [r for r in self.results if r.status != "PASS"]
        messages = [m for r in failed for m in r.messages]
        if not failed:
            messages.append(f"All {len(self.results)} {self.scenario} checks passed")
        return {
            "status": "FAIL" if failed else "PASS",
            "details": {
                "checks": {r.check: r.status for r in self.results},
                "total_failures": len(failed),
            },
            "messages": messages,
        }
