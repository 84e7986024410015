# main.py
import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from config.settings import settings
from core.models.results import ScenarioResult
from core.models.scenario import ScenarioConfig
from core.services.datastore import to_plain
from core.services.error_manager import ErrorManager, SimulationError
from core.services.logger import JSONRunLogger
from core.services.normalizer import load_config
from core.services.scenarios import run_scenario, write_summary
from core.validators import VALIDATORS


class ScenarioApplication:
    def __init__(self, out_root: Optional[Path] = None, threads: int = 1):
        self.out_root = Path(out_root or settings.output_root())
        self.threads = max(1, threads)
        self.logger = JSONRunLogger(self.out_root / "logs")
        self.error_manager = ErrorManager()

    def output_dir(self, cfg: ScenarioConfig) -> Path:
        return self.out_root / (cfg.output_dir or cfg.name)

    def check(self, cfg: ScenarioConfig, result: ScenarioResult) -> dict:
        """Run the scenario's acceptance validator and log every check."""
        validator = VALIDATORS[cfg.scenario](cfg)
        outcome = validator.validate(result)
        result.checks = validator.results
        for record in validator.results:
            self.logger.log_check(record)
        for message in outcome["messages"]:
            print(f"  {'✅' if outcome['status'] == 'PASS' else '❌'} {message}")
        return outcome

    def run(self, config: str, check: bool = False) -> int:
        """Load, run and optionally check one scenario; returns the process exit code."""
        scenario = "config"
        try:
            cfg = load_config(config)
            scenario = cfg.scenario
            out_dir = self.output_dir(cfg)
            print(f"▶ Running {cfg.name} ({cfg.scenario}) → {out_dir}")

            result = run_scenario(cfg, out_dir, threads=self.threads)
            if cfg.scenario == "device":
                print(json.dumps(to_plain(result.summary), indent=2, sort_keys=True))
            gate = result.convergence
            if gate.get("applicable"):
                print(f"  Convergence gate N={gate['cutoff']} vs {gate['cutoff_grown']}: "
                      f"max relative change {gate['max_rel_change']:.3e}")

            status = "PASS"
            if check:
                status = self.check(cfg, result)["status"]
            write_summary(result, out_dir)
            print(f"  Wrote {', '.join(sorted(result.files.values()))}, summary.json")
            return 0 if status == "PASS" else 1

        except SimulationError as e:
            print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
            self.logger.log_error(scenario, e)
            return self.error_manager.exit_code_for(e)
        except (ArithmeticError, ValueError, RuntimeError, FloatingPointError) as e:
            print(f"❌ Numerical failure: {e}", file=sys.stderr)
            self.logger.log_error(scenario, e)
            return 3
        finally:
            self.logger.save()


def main(argv=None) -> int:
    """Main function."""
    parser = argparse.ArgumentParser(description="Spin-mechanical multi-phonon sideband scenarios")
    commands = parser.add_subparsers(dest="command", required=True)
    run = commands.add_parser("run", help="Run one scenario config")
    run.add_argument("config", help="Path to a scenario JSON file or a bundled name such as spectrum")
    run.add_argument("--check", action="store_true", help="Evaluate the scenario's acceptance checks")
    run.add_argument("--threads", type=int, default=settings.DEFAULT_THREADS,
                     help="Cap on worker processes for trajectory ensembles")
    run.add_argument("--out", type=Path, default=None,
                     help="Output root (default: $SIDEBAND_OUTPUT_ROOT or ./output)")
    args = parser.parse_args(argv)

    app = ScenarioApplication(out_root=args.out, threads=args.threads)
    return app.run(args.config, check=args.check)


if __name__ == "__main__":
    sys.exit(main())
