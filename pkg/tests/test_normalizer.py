# tests/test_normalizer.py
import json

import pytest

from config.settings import settings
from core.services.normalizer import load_config, resolve_config_path
from core.services.error_manager import ConfigError

BUNDLED = sorted(p.stem for p in settings.SCENARIO_DIR.glob("*.json"))


def _write(tmp_path, text, name="scenario.json"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_configs_load(name):
    cfg = load_config(name)
    assert cfg.name == name
    assert cfg.source == settings.SCENARIO_DIR / f"{name}.json"


def test_bare_name_and_path_resolve_to_same_file():
    assert resolve_config_path("rates") == resolve_config_path(str(settings.SCENARIO_DIR / "rates.json"))
    with pytest.raises(ConfigError):
        resolve_config_path("no-such-scenario")


def test_unknown_key_reports_its_line(tmp_path):
    text = "\n".join([
        "{",
        '  "scenario": "device",',
        '  "name": "odd",',
        '  "parameters": {"material": "silicon", "l": 1e-6, "w": 1e-7, "t": 1e-7, "G_m": 1e7, "h": 1e-8, "T": 0.01},',
        '  "colour": "blue"',
        "}",
    ])
    with pytest.raises(ConfigError) as exc:
        load_config(_write(tmp_path, text))
    assert exc.value.line == 5
    assert "colour" in str(exc.value)


def test_invalid_json_reports_its_line(tmp_path):
    text = '{\n  "scenario": "rates",\n  "name": "broken"\n  "parameters": {}\n}'
    with pytest.raises(ConfigError) as exc:
        load_config(_write(tmp_path, text))
    assert exc.value.line == 4


def test_type_and_enum_errors(tmp_path):
    document = json.loads((settings.SCENARIO_DIR / "rates.json").read_text())
    document["parameters"]["cross_orders"] = "five"
    with pytest.raises(ConfigError) as exc:
        load_config(_write(tmp_path, json.dumps(document, indent=2)))
    assert "cross_orders" in str(exc.value)

    document = json.loads((settings.SCENARIO_DIR / "rates.json").read_text())
    document["scenario"] = "teleport"
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, json.dumps(document, indent=2), "enum.json"))


def test_unknown_check_rejected(tmp_path):
    document = json.loads((settings.SCENARIO_DIR / "device-silicon.json").read_text())
    document["checks"]["vibes"] = 1.0
    with pytest.raises(ConfigError) as exc:
        load_config(_write(tmp_path, json.dumps(document, indent=2)))
    assert "vibes" in str(exc.value)


def test_missing_required_key(tmp_path):
    with pytest.raises(ConfigError) as exc:
        load_config(_write(tmp_path, '{"scenario": "rates", "parameters": {}}'))
    assert "name" in str(exc.value)
