# config/settings.py
import os
from pathlib import Path

CONFIG_DIR = Path(__file__).parent


class Settings:
    # Output root; SIDEBAND_OUTPUT_ROOT overrides, --out overrides both
    OUTPUT_ROOT = Path("./output")
    SCENARIO_DIR = CONFIG_DIR / "scenarios"
    SCHEMA_PATH = CONFIG_DIR / "scenario_schema.json"
    MATERIALS_PATH = CONFIG_DIR / "materials.json"
    SCHEMA_VERSION = "1.0"

    # Integrator
    ODE_METHOD = "DOP853"
    ODE_RTOL = 1e-8
    ODE_ATOL = 1e-10

    # Numerical tolerances
    HERMITIAN_ATOL = 1e-12
    NORM_ATOL = 1e-10
    TRACE_ATOL = 1e-8
    POSITIVITY_ATOL = 1e-7
    STEADY_STATE_RESIDUAL = 1e-9
    JUMP_TIME_RTOL = 1e-3
    CROSSING_XTOL = 1e-4
    TRACKING_MIN_OVERLAP = 0.3
    DRIFT_MIN_OVERLAP = 0.5

    # Truncation
    CUTOFF_STEP = 5
    CONVERGENCE_RTOL = 1e-4

    # Dense/sparse switches
    SPARSE_DIM_THRESHOLD = 512
    DIRECT_STEADY_STATE_LIMIT = 2500
    WIGNER_SUPPORT_TAIL = 1e-3

    # Parallelism
    DEFAULT_THREADS = max(1, (os.cpu_count() or 1))

    def output_root(self) -> Path:
        """SIDEBAND_OUTPUT_ROOT wins over the default, read at call time."""
        return Path(os.environ.get("SIDEBAND_OUTPUT_ROOT", self.OUTPUT_ROOT))


settings = Settings()
