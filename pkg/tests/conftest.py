# tests/conftest.py
import pytest
from hypothesis import HealthCheck, settings

from core.models.hilbert import HilbertSpace

settings.register_profile("fast", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("fast")


@pytest.fixture
def qubit_space():
    return HilbertSpace(2, 12)


@pytest.fixture
def out_root(tmp_path, monkeypatch):
    monkeypatch.setenv("SIDEBAND_OUTPUT_ROOT", str(tmp_path / "output"))
    return tmp_path / "output"
