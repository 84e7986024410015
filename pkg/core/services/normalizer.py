# core/services/normalizer.py
"""
Scenario config loading and schema enforcement.

Every problem is reported as ConfigError carrying the line of the offending
key in the source file.
"""
import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional

from config.settings import settings
from core.models.scenario import ScenarioConfig
from core.services.error_manager import ConfigError

TYPE_CHECKS = {
    "string": lambda v: isinstance(v, str),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "boolean": lambda v: isinstance(v, bool),
    "object": lambda v: isinstance(v, dict),
    "array": lambda v: isinstance(v, list),
}


def load_schema(path: Optional[Path] = None) -> Dict[str, Any]:
    """Load the published scenario schema from JSON."""
    path = Path(path or settings.SCHEMA_PATH)
    if not path.exists():
        raise FileNotFoundError(f"Scenario schema not found: {path}")
    with open(path, "r") as f:
        return json.load(f)


def resolve_config_path(name: str) -> Path:
    """Accept a file path or the bare name of a bundled scenario (e.g. 'spectrum')."""
    path = Path(name)
    if path.exists():
        return path
    bundled = settings.SCENARIO_DIR / (name if name.endswith(".json") else f"{name}.json")
    if bundled.exists():
        return bundled
    raise ConfigError(f"config '{name}' not found (also looked in {settings.SCENARIO_DIR})", path=str(path))


class _Locator:
    """Maps a key path onto the first matching line of the raw text."""

    def __init__(self, text: str):
        self.lines = text.splitlines()

    def line_of(self, keys: List[str]) -> Optional[int]:
        start = 0
        found = None
        for key in keys:
            if isinstance(key, int):
                continue
            pattern = re.compile(r'"' + re.escape(key) + r'"\s*:')
            for i in range(start, len(self.lines)):
                if pattern.search(self.lines[i]):
                    found, start = i + 1, i
                    break
        return found


class ConfigValidator:
    def __init__(self, schema: Dict[str, Any], locator: _Locator, path: Path):
        self.schema = schema
        self.locator = locator
        self.path = path

    def fail(self, message: str, keys: List):
        raise ConfigError(message, line=self.locator.line_of(keys), path=str(self.path))

    def check_value(self, value: Any, spec: Dict[str, Any], keys: List):
        label = ".".join(str(k) for k in keys)
        if value is None and spec.get("nullable"):
            return
        expected = spec.get("type")
        if expected and not TYPE_CHECKS[expected](value):
            self.fail(f"'{label}' must be of type {expected}, got {type(value).__name__}", keys)
        if "enum" in spec and value not in spec["enum"]:
            self.fail(f"'{label}' must be one of {spec['enum']}, got {value!r}", keys)
        if "minimum" in spec and value < spec["minimum"]:
            self.fail(f"'{label}' must be >= {spec['minimum']}, got {value}", keys)
        if "exclusiveMinimum" in spec and value <= spec["exclusiveMinimum"]:
            self.fail(f"'{label}' must be > {spec['exclusiveMinimum']}, got {value}", keys)
        if expected == "array":
            if "length" in spec and len(value) != spec["length"]:
                self.fail(f"'{label}' must have {spec['length']} entries, got {len(value)}", keys)
            for i, item in enumerate(value):
                self.check_value(item, spec.get("items", {}), keys + [i])
        if expected == "object" and "properties" in spec:
            self.check_object(value, spec, keys)

    def check_object(self, document: Dict[str, Any], spec: Dict[str, Any], keys: List):
        properties = spec.get("properties", {})
        for key in spec.get("required", []):
            if key not in document:
                label = ".".join(str(k) for k in keys) or "config"
                self.fail(f"'{label}' is missing required key '{key}'", keys)
        for key, value in document.items():
            if key not in properties:
                self.fail(f"unknown key '{key}'", keys + [key])
            self.check_value(value, properties[key], keys + [key])

    def validate(self, document: Dict[str, Any]):
        if not isinstance(document, dict):
            raise ConfigError("config root must be a JSON object", line=1, path=str(self.path))
        self.check_object(document, self.schema["top_level"], [])
        scenario = self.schema["scenarios"][document["scenario"]]
        self.check_object(document["parameters"], scenario["parameters"], ["parameters"])
        for key, value in document.get("checks", {}).items():
            if key not in scenario.get("checks", []):
                self.fail(f"unknown check '{key}' for scenario '{document['scenario']}'", ["checks", key])
            if not (TYPE_CHECKS["number"](value) or TYPE_CHECKS["boolean"](value)
                    or (isinstance(value, list) and all(TYPE_CHECKS["number"](v) for v in value))):
                self.fail(f"check '{key}' must be a number, boolean or list of numbers", ["checks", key])


def load_config(name: str, schema: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    """Read, parse and schema-check a scenario config."""
    path = resolve_config_path(name)
    text = path.read_text(encoding="utf-8")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON: {e.msg}", line=e.lineno, path=str(path))

    ConfigValidator(schema or load_schema(), _Locator(text), path).validate(document)
    return ScenarioConfig(
        scenario=document["scenario"],
        name=document["name"],
        parameters=document["parameters"],
        source=path,
        description=document.get("description", ""),
        cutoff=document.get("cutoff"),
        integrator=document.get("integrator", {}),
        seeds=document.get("seeds", {}),
        output_dir=document.get("output_dir"),
        checks=document.get("checks", {}),
    )
