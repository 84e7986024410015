# core/services/datastore.py
import json
from pathlib import Path
from typing import Any, Dict, Iterable

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.12g"


def to_plain(value: Any) -> Any:
    """Convert numpy scalars/arrays and paths into JSON-native values."""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(np.real(value)), "im": float(np.imag(value))}
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, Path):
        return str(value)
    return value


class DataStore:
    """Deterministic writers for scenario outputs."""

    @staticmethod
    def ensure_dir(path: Path) -> Path:
        path = Path(path)
        path.mkdir(parents=True, exist_ok=True)
        return path

    @staticmethod
    def write_table(frame: pd.DataFrame, path: Path) -> Path:
        """Write a DataFrame as CSV with fixed float formatting."""
        path = Path(path)
        DataStore.ensure_dir(path.parent)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return path

    @staticmethod
    def write_json(document: Dict[str, Any], path: Path) -> Path:
        path = Path(path)
        DataStore.ensure_dir(path.parent)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(to_plain(document), f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    @staticmethod
    def write_jsonl(records: Iterable[Dict[str, Any]], path: Path) -> Path:
        """One JSON object per line, keys sorted."""
        path = Path(path)
        DataStore.ensure_dir(path.parent)
        with open(path, "w", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps(to_plain(record), sort_keys=True) + "\n")
        return path

    @staticmethod
    def read_table(path: Path) -> pd.DataFrame:
        return pd.read_csv(path)
