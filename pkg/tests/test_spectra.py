# tests/test_spectra.py
import math

import numpy as np
import pytest

from core.models.hilbert import HilbertSpace
from core.models.params import MollowParams
from core.physics.model import build_dressed_mollow
from core.physics.perturbation import mollow_rate
from core.physics import spectra
from core.physics.spectra import find_crossing, gap_at, sweep
from core.services.error_manager import ParameterError, SimulationWarning, TrackingError


def test_sweep_shape_and_order():
    space = HilbertSpace(2, 9)
    result = sweep(build_dressed_mollow, MollowParams(Delta_a=5.0), space, np.linspace(0.0, 10.0, 11),
                   levels=(1, 9))
    assert result.eigenvalues.shape == (11, 8)
    assert np.all(np.diff(result.eigenvalues, axis=1) >= -1e-12)
    frame = result.to_frame()
    assert list(frame.columns[:2]) == ["Omega", "E_1"]
    assert "Omega" not in result.fixed_params


def test_sweep_validation():
    space = HilbertSpace(2, 9)
    with pytest.raises(ParameterError):
        sweep(build_dressed_mollow, MollowParams(Delta_a=5.0), space, [1.0, 2.0])
    with pytest.raises(ParameterError):
        sweep(build_dressed_mollow, MollowParams(Delta_a=5.0), space, [1.0, 2.0, 3.0], parameter="bogus")


def test_single_phonon_crossing_gap_is_lambda():
    space = HilbertSpace(2, 13)
    report = find_crossing(build_dressed_mollow, MollowParams(Delta_a=10.0), space, 1)
    assert report.Omega_star == pytest.approx(5.0, rel=0.05)
    assert report.gap == pytest.approx(1.0, rel=0.05)


def test_two_phonon_crossing():
    space = HilbertSpace(2, 17)
    report = find_crossing(build_dressed_mollow, MollowParams(Delta_a=5.0), space, 2)
    assert report.predicted_Omega == pytest.approx(5.0)
    assert report.Omega_star == pytest.approx(5.0, rel=0.05)
    predicted_gap = 2.0 * math.sqrt(2.0) * abs(mollow_rate(2, 1.0, report.Omega_star).rate)
    assert report.gap == pytest.approx(predicted_gap, rel=0.15)
    assert report.tracked_pair == ("+,0", "-,n")


def test_gap_at_crossing_matches_report():
    space = HilbertSpace(2, 13)
    report = find_crossing(build_dressed_mollow, MollowParams(Delta_a=10.0), space, 1)
    gap = gap_at(build_dressed_mollow, MollowParams(Omega=report.Omega_star, Delta_a=10.0), space,
                 (space.index(0, 0), space.index(1, 1)))
    assert gap == pytest.approx(report.gap, rel=1e-3)


def test_failed_refinement_warns_and_keeps_grid_minimum(monkeypatch):
    def refuse(*args, **kwargs):
        raise ValueError("bracket is flat")

    monkeypatch.setattr(spectra, "minimize_scalar", refuse)
    space = HilbertSpace(2, 13)
    with pytest.warns(SimulationWarning, match="refinement"):
        report = find_crossing(build_dressed_mollow, MollowParams(Delta_a=10.0), space, 1)
    assert report.Omega_star == pytest.approx(5.0, rel=0.05)
    assert report.gap == pytest.approx(1.0, rel=0.1)


def test_minimum_at_window_edge_raises():
    space = HilbertSpace(2, 13)
    with pytest.raises(TrackingError):
        find_crossing(build_dressed_mollow, MollowParams(Delta_a=5.0), space, 2, window=(1.0, 2.0))


def test_window_required_for_other_parameters():
    with pytest.raises(ParameterError):
        find_crossing(build_dressed_mollow, MollowParams(Omega=5.0, Delta_a=5.0), HilbertSpace(2, 13), 2,
                      parameter="Delta_a")
