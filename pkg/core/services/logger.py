# core/services/logger.py
import json
import uuid
from collections import Counter
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List

from core.models.results import CheckResult
from core.services.datastore import to_plain
from core.services.error_manager import ErrorManager


class CheckErrorCode:
    SPECTRUM = "CHK_SPC"
    RATE = "CHK_RATE"
    FOCK = "CHK_FOCK"
    CAT = "CHK_CAT"
    CORRELATION = "CHK_CORR"
    DRIFT = "CHK_DRIFT"
    DEVICE = "CHK_DEV"
    LAMB_DICKE = "CHK_LD"
    CONVERGENCE = "CHK_CONV"
    RUN = "CHK_RUN"

    @staticmethod
    def get_description(code: str) -> str:
        descriptions = {
            "CHK_SPC": "Avoided-crossing location or gap outside tolerance",
            "CHK_RATE": "n-phonon rate disagrees with quoted or cross-method value",
            "CHK_FOCK": "Peak number-state population below threshold",
            "CHK_CAT": "Cat steady state, dark state or fringe check failed",
            "CHK_CORR": "Correlation function has the wrong bunching character",
            "CHK_DRIFT": "Drift sensitivity outside the expected band",
            "CHK_DEV": "Device feasibility number outside tolerance",
            "CHK_LD": "Lamb-Dicke effective model disagrees with the full model",
            "CHK_CONV": "Result changed by more than the tolerance when the cutoff grew",
            "CHK_RUN": "Scenario aborted with an error",
        }
        return descriptions.get(code, "Unknown check")


class JSONRunLogger:
    """Collects CheckResult records for one CLI session and writes pass/fail/summary files."""

    CODE_BY_SCENARIO = {
        "spectrum": CheckErrorCode.SPECTRUM,
        "rates": CheckErrorCode.RATE,
        "fock": CheckErrorCode.FOCK,
        "cat": CheckErrorCode.CAT,
        "correlations": CheckErrorCode.CORRELATION,
        "drift": CheckErrorCode.DRIFT,
        "device": CheckErrorCode.DEVICE,
        "lamb-dicke": CheckErrorCode.LAMB_DICKE,
    }

    def __init__(self, log_dir: Path):
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.session_id = str(uuid.uuid4())
        self.results: List[CheckResult] = []
        self.error_manager = ErrorManager()

    def _determine_error_code(self, result: CheckResult) -> str:
        if result.check == "convergence":
            return CheckErrorCode.CONVERGENCE
        if result.check == "run":
            return CheckErrorCode.RUN
        return self.CODE_BY_SCENARIO.get(result.scenario, "UNK_001")

    def _create_record(self, result: CheckResult) -> Dict[str, Any]:
        record = {
            "scenario": result.scenario,
            "check": result.check,
            "status": result.status,
            "value": result.value,
            "expected": result.expected,
            "messages": result.messages,
            "details": result.details,
            "timestamp": datetime.now().isoformat(),
            "session_id": self.session_id,
        }
        if result.status != "PASS":
            code = self._determine_error_code(result)
            record["error_code"] = code
            record["error_description"] = CheckErrorCode.get_description(code)
        return record

    def log_check(self, result: CheckResult):
        self.results.append(result)

    def log_error(self, scenario: str, error: Exception):
        """Record a scenario-level failure with the error-code table entry."""
        self.results.append(CheckResult(
            scenario=scenario,
            check="run",
            status="FAIL",
            value=None,
            expected="scenario completes",
            messages=[str(error)],
            details=self.error_manager.describe(error),
        ))

    @property
    def failed(self) -> bool:
        return any(r.status != "PASS" for r in self.results)

    def save(self) -> Dict[str, Path]:
        """Write check_passes/check_failures/check_summary JSON files and print a summary."""
        passes, failures = [], []
        failure_types = Counter()
        for r in self.results:
            record = self._create_record(r)
            if r.status == "PASS":
                passes.append(record)
            else:
                failures.append(record)
                failure_types[record["error_code"]] += 1

        passes_file = self.log_dir / f"check_passes_{self.timestamp}.json"
        failures_file = self.log_dir / f"check_failures_{self.timestamp}.json"
        summary_file = self.log_dir / f"check_summary_{self.timestamp}.json"

        with open(passes_file, "w", encoding="utf-8") as f:
            json.dump(to_plain(passes), f, indent=2, default=str)
        with open(failures_file, "w", encoding="utf-8") as f:
            json.dump(to_plain(failures), f, indent=2, default=str)

        summary = {
            "session_id": self.session_id,
            "timestamp": datetime.now().isoformat(),
            "total_checks": len(self.results),
            "passed_checks": len(passes),
            "failed_checks": len(failures),
            "failure_breakdown": [
                {"error_code": code, "count": count, "description": CheckErrorCode.get_description(code)}
                for code, count in failure_types.most_common()
            ],
        }
        with open(summary_file, "w", encoding="utf-8") as f:
            json.dump(summary, f, indent=2)

        print("\n📊 **Check Session Summary**")
        print(f"Session ID: {self.session_id}")
        print(f"✅ Passed Checks: {len(passes)}")
        print(f"❌ Failed Checks: {len(failures)}")
        if failures:
            print("\n🔍 **Failure Breakdown:**")
            for record in failures:
                print(f"  - {record['scenario']}/{record['check']}: {record['messages'][0] if record['messages'] else record['value']}")

        return {
            "passes_file": passes_file,
            "failures_file": failures_file,
            "summary_file": summary_file,
        }
