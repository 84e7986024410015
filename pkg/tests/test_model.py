# tests/test_model.py
import math

import numpy as np
import pytest

from core.models.hilbert import HilbertSpace
from core.models.params import LDParams, MollowParams
from core.physics.hilbert import basis_state, cat_state
from core.physics.model import (build_cat_interaction, build_dressed_mollow, build_driven_jc,
                                build_effective_mollow, build_ld_effective, build_ld_polaron, build_ld_rotating,
                                dressed_basis_change, dressed_spin_hamiltonian, dressed_states, drift_shift,
                                to_dressed_basis, with_drift)
from core.physics.observables import dark_state_residual
from core.services.error_manager import CutoffError, DimensionMismatchError, ParameterError


def test_dressed_splitting_matches_small_drive_limit():
    states = dressed_states(10.0, 1.0)
    assert states.omega_bd_approx == pytest.approx(0.2)
    assert states.omega_bd == pytest.approx(0.2, rel=0.02)
    assert states.omega_eg == pytest.approx(math.sqrt(108.0))


def test_dressed_states_diagonalize_spin_hamiltonian():
    states = dressed_states(10.0, 1.0)
    h = dressed_spin_hamiltonian(10.0, 1.0)
    assert np.allclose(h @ states.e, states.omega_e * states.e)
    assert np.allclose(h @ states.g, states.omega_g * states.g)
    assert np.allclose(h @ states.d, states.omega_d * states.d)
    basis = states.basis()
    assert np.allclose(basis.conj().T @ basis, np.eye(3))


def test_dressed_states_need_a_drive_or_detuning():
    with pytest.raises(ParameterError):
        dressed_states(0.0, 0.0)


def test_dressed_basis_change_is_unitary():
    u = dressed_basis_change()
    assert np.allclose(u.conj().T @ u, np.eye(2))


def test_driven_jc_in_dressed_basis_is_dressed_mollow():
    space = HilbertSpace(2, 10)
    p = MollowParams(lam=1.0, Omega=3.0, Delta_a=5.0, delta_omega_bd=0.3)
    assert np.allclose(to_dressed_basis(build_driven_jc(p, space)).matrix,
                       build_dressed_mollow(p, space).matrix, atol=1e-12)


def test_builders_need_a_qubit():
    with pytest.raises(DimensionMismatchError):
        build_dressed_mollow(MollowParams(Omega=1.0, Delta_a=1.0), HilbertSpace(3, 5))


def test_effective_mollow_coupling_element():
    space = HilbertSpace(2, 13)
    p = MollowParams(lam=1.0, Omega=5.0, Delta_a=5.0)
    h = build_effective_mollow(2, p, space, frame="interaction")
    assert h.matrix[space.index(0, 0), space.index(1, 2)] == pytest.approx(-0.1 * math.sqrt(2.0))
    assert np.allclose(np.diag(h.matrix), 0.0)


def test_effective_mollow_rotating_frame_diagonal():
    space = HilbertSpace(2, 13)
    p = MollowParams(lam=1.0, Omega=5.0, Delta_a=5.0)
    h = build_effective_mollow(2, p, space)
    assert h.matrix[space.index(0, 0), space.index(0, 0)] == pytest.approx(5.0)
    assert h.matrix[space.index(1, 2), space.index(1, 2)] == pytest.approx(5.0)


def test_effective_mollow_rejects_small_cutoff():
    with pytest.raises(CutoffError) as excinfo:
        build_effective_mollow(3, MollowParams(Omega=7.5, Delta_a=5.0), HilbertSpace(2, 12))
    assert excinfo.value.required_cutoff == 13


def test_effective_mollow_rate_override():
    space = HilbertSpace(2, 9)
    h = build_effective_mollow(1, MollowParams(Omega=5.0, Delta_a=10.0), space, rate_override=0.25,
                               frame="interaction")
    assert h.matrix[space.index(0, 0), space.index(1, 1)] == pytest.approx(0.25)


def test_unknown_frame():
    with pytest.raises(ParameterError):
        build_effective_mollow(1, MollowParams(Omega=5.0, Delta_a=10.0), HilbertSpace(2, 9), frame="lab")


def test_polaron_spectrum_matches_rotating_frame():
    space = HilbertSpace(2, 30)
    p = LDParams(lam=0.05, Omega=0.05, delta=2.0, omega_r=1.0)
    rotating = np.linalg.eigvalsh(build_ld_rotating(p, space).matrix)[:10]
    polaron = np.linalg.eigvalsh(build_ld_polaron(p, space).matrix)[:10]
    assert np.max(np.abs(rotating - polaron)) < 1e-8


def test_ld_effective_strength():
    space = HilbertSpace(2, 13)
    p = LDParams(lam=1.0, Omega=2.0, delta=40.0, omega_r=20.0)
    h = build_ld_effective(2, p, space, frame="interaction")
    # sigma† a†^2 takes |lower,0> to |upper,2>
    assert h.matrix[space.index(0, 2), space.index(1, 0)] == pytest.approx(0.01 * math.sqrt(2.0))


def test_ld_effective_requires_lamb_dicke_regime():
    with pytest.raises(ParameterError):
        build_ld_effective(1, LDParams(lam=1.0, Omega=1.0, delta=1.0, omega_r=1.0), HilbertSpace(2, 8))


def test_cat_dark_states():
    space = HilbertSpace(2, 50)
    beta = math.sqrt(10.0)
    h = build_cat_interaction(-0.02, 0.2, space)
    for label in ("even", "odd"):
        assert dark_state_residual(h, cat_state(beta, label, space, spin=1)) < 1e-6
    assert dark_state_residual(h, basis_state(space, 0, 0)) > 1e-2


def test_drift_shift_vanishes_without_drift():
    drift = drift_shift(2500.0, 250.0, 0.0)
    assert drift.delta_omega_bd == pytest.approx(0.0, abs=1e-9)
    assert drift.dark_overlap > 0.99


def test_drift_shift_grows_with_drift():
    small = drift_shift(2500.0, 250.0, 2.0)
    large = drift_shift(2500.0, 250.0, 8.0)
    assert abs(large.delta_omega_bd) > abs(small.delta_omega_bd) > 0


def test_with_drift_sets_shift():
    drift = drift_shift(2500.0, 250.0, 5.0)
    p = with_drift(MollowParams(Omega=7.94, Delta_a=8.0), drift)
    assert p.delta_omega_bd == drift.delta_omega_bd
    assert p.Omega == 7.94
