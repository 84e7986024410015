# core/services/error_manager.py
from typing import Dict, Optional


class SimulationWarning(UserWarning):
    """Non-fatal validity problems (perturbative regime, truncation support, fallbacks)."""


class SimulationError(Exception):
    code = "SIM_000"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context


class DimensionMismatchError(SimulationError):
    code = "HIL_001"


class CutoffError(SimulationError):
    code = "HIL_002"

    def __init__(self, message: str, required_cutoff: Optional[int] = None, **context):
        super().__init__(message, required_cutoff=required_cutoff, **context)
        self.required_cutoff = required_cutoff


class ParameterError(SimulationError):
    code = "MOD_001"


class DegenerateDenominatorError(SimulationError):
    code = "PRT_001"


class TrackingError(SimulationError):
    code = "SPC_001"


class IntegrationError(SimulationError):
    code = "DYN_001"

    def __init__(self, message: str, time: Optional[float] = None, **context):
        super().__init__(message, time=time, **context)
        self.time = time


class ConvergenceError(SimulationError):
    code = "DYN_002"


class ObservableError(SimulationError):
    code = "OBS_001"


class ConfigError(SimulationError):
    code = "CFG_001"

    def __init__(self, message: str, line: Optional[int] = None, path: Optional[str] = None):
        location = f"{path}:{line}: " if path and line else (f"line {line}: " if line else "")
        super().__init__(f"{location}{message}", line=line, path=path)
        self.line = line
        self.path = path


class ErrorManager:
    SEVERITY_LEVELS = {
        'CRITICAL': 5,
        'HIGH': 4,
        'MEDIUM': 3,
        'LOW': 2,
        'INFO': 1
    }

    CATEGORIES = {
        'config': 'Configuration Error',
        'algebra': 'Operator Algebra Error',
        'model': 'Model Parameter Error',
        'numerics': 'Numerical Failure',
        'check': 'Acceptance Check Failure'
    }

    ERROR_CODES = {
        'CFG_001': {'severity': 'HIGH', 'category': 'config', 'exit_code': 2,
                    'resolution': 'Fix the scenario file at the reported line; see config/scenario_schema.json.'},
        'HIL_001': {'severity': 'HIGH', 'category': 'algebra', 'exit_code': 3,
                    'resolution': 'Check spin_dim and fock_cutoff of the operands.'},
        'HIL_002': {'severity': 'MEDIUM', 'category': 'algebra', 'exit_code': 3,
                    'resolution': 'Raise fock_cutoff to the reported value.'},
        'MOD_001': {'severity': 'MEDIUM', 'category': 'model', 'exit_code': 3,
                    'resolution': 'Check model parameters against their documented ranges.'},
        'PRT_001': {'severity': 'MEDIUM', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'Move off the degenerate intermediate state or change the order n.'},
        'SPC_001': {'severity': 'MEDIUM', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'Narrow the sweep window around the crossing or raise the resolution.'},
        'DYN_001': {'severity': 'HIGH', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'Loosen integrator tolerances or shorten the time grid.'},
        'DYN_002': {'severity': 'HIGH', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'Check that the model has a unique steady state.'},
        'OBS_001': {'severity': 'MEDIUM', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'The observable is undefined for this state.'},
        'SIM_000': {'severity': 'HIGH', 'category': 'numerics', 'exit_code': 3,
                    'resolution': 'Inspect the diagnostic message.'},
    }

    def get_error_details(self, error_code: str) -> Optional[Dict]:
        """Lookup error details from error code."""
        return self.ERROR_CODES.get(error_code, None)

    def exit_code_for(self, error: Exception) -> int:
        details = self.get_error_details(getattr(error, "code", "SIM_000"))
        return details['exit_code'] if details else 3

    def describe(self, error: Exception) -> Dict:
        """Flatten an exception into a log-friendly record."""
        code = getattr(error, "code", "SIM_000")
        details = self.get_error_details(code) or self.ERROR_CODES['SIM_000']
        return {
            "error_code": code,
            "error_type": type(error).__name__,
            "message": str(error),
            "severity": details['severity'],
            "category": self.CATEGORIES[details['category']],
            "resolution": details['resolution'],
            "context": {k: v for k, v in getattr(error, "context", {}).items() if v is not None}
        }
