# tests/test_hilbert.py
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from core.models.hilbert import HilbertSpace, Operator, QuantumState
from core.physics.hilbert import (basis_state, cat_amplitudes, cat_state, coherent_amplitudes, coherent_state,
                                  default_cutoff, fock_matrix, fock_op, phonon_density,
                                  required_cutoff, spin_op, tensor)
from core.services.error_manager import CutoffError, DimensionMismatchError, ParameterError


def test_space_rejects_bad_dimensions():
    with pytest.raises(ParameterError):
        HilbertSpace(4, 10)
    with pytest.raises(ParameterError):
        HilbertSpace(2, 1)


def test_flat_index_is_spin_major():
    space = HilbertSpace(3, 7)
    assert space.dim == 21
    assert space.index(2, 3) == 17
    with pytest.raises(DimensionMismatchError):
        space.index(0, 7)


@given(st.integers(min_value=2, max_value=40))
def test_canonical_commutator_except_top_level(cutoff):
    a = fock_matrix("annihilate", cutoff)
    commutator = a @ a.conj().T - a.conj().T @ a
    expected = np.eye(cutoff)
    expected[-1, -1] = 1 - cutoff
    assert np.allclose(commutator, expected)


def test_creation_annihilates_top_state():
    a_dag = fock_matrix("create", 6)
    top = np.zeros(6)
    top[-1] = 1.0
    assert np.allclose(a_dag @ top, 0.0)


def test_tensor_orders_spin_first():
    op = tensor(np.diag([1.0, 2.0]), np.diag([0.0, 1.0, 2.0]))
    assert op.space == HilbertSpace(2, 3)
    assert np.allclose(np.diag(op.matrix), [0, 1, 2, 0, 2, 4])


def test_operator_algebra_checks_spaces():
    a = fock_op("annihilate", HilbertSpace(2, 5))
    b = fock_op("annihilate", HilbertSpace(2, 6))
    with pytest.raises(DimensionMismatchError):
        a @ b
    with pytest.raises(DimensionMismatchError):
        a + b


def test_hermitian_flag_is_verified():
    space = HilbertSpace(2, 4)
    with pytest.raises(ParameterError):
        Operator(space, fock_op("annihilate", space).matrix, hermitian_flag=True)


def test_number_and_parity_expectations():
    space = HilbertSpace(2, 8)
    state = basis_state(space, 1, 3)
    assert fock_op("number", space).expect(state) == pytest.approx(3.0)
    assert fock_op("parity", space).expect(state) == pytest.approx(-1.0)
    assert spin_op("sigma_z", space).expect(state) == pytest.approx(-1.0)


def test_state_validation():
    space = HilbertSpace(2, 4)
    with pytest.raises(ParameterError):
        QuantumState.pure(np.ones(space.dim), space)
    with pytest.raises(ParameterError):
        QuantumState.mixed(np.eye(space.dim), space)
    state = QuantumState.pure(np.ones(space.dim), space, normalize=True)
    assert state.as_mixed().purity() == pytest.approx(1.0)


def test_required_cutoff_formula():
    assert required_cutoff(math.sqrt(10.0)) == 30
    assert default_cutoff(2) == 13
    assert default_cutoff(2, math.sqrt(10.0)) == 30


def test_coherent_state_cutoff_error():
    with pytest.raises(CutoffError) as excinfo:
        coherent_amplitudes(3.0, 10)
    assert excinfo.value.required_cutoff == required_cutoff(3.0)


@given(st.floats(min_value=0.1, max_value=3.0))
def test_coherent_mean_number(beta):
    space = HilbertSpace(2, default_cutoff(beta=beta) + 10)
    state = coherent_state(beta, space)
    assert fock_op("number", space).expect(state).real == pytest.approx(beta ** 2, rel=1e-6)


@pytest.mark.parametrize("label, sign", [("even", 1.0), ("odd", -1.0)])
def test_cat_parity(label, sign):
    space = HilbertSpace(2, 40)
    state = cat_state(2.0, label, space, spin=1)
    assert fock_op("parity", space).expect(state).real == pytest.approx(sign, abs=1e-12)


def test_odd_cat_of_vacuum_is_rejected():
    with pytest.raises(ParameterError):
        cat_amplitudes(0.0, "odd", 10)


def test_phonon_density_traces_out_spin():
    space = HilbertSpace(2, 6)
    vector = (space.basis_vector(0, 1) + space.basis_vector(1, 2)) / math.sqrt(2.0)
    rho = phonon_density(QuantumState.pure(vector, space))
    assert np.allclose(rho, np.diag([0, 0.5, 0.5, 0, 0, 0]))
    mixed = phonon_density(QuantumState.pure(vector, space).as_mixed())
    assert np.allclose(mixed, rho)


@given(st.lists(st.floats(-2.0, 2.0), min_size=4, max_size=4), st.floats(-3.0, 3.0))
def test_tensor_commutes_with_adjoint_and_scaling(entries, factor):
    spin = np.array(entries[:2]) + 1j * np.array(entries[2:])
    spin = np.outer(spin, [1.0, 0.5j])
    fock = fock_matrix("annihilate", 4)
    op = tensor(spin, fock)
    assert np.allclose(op.dag().matrix, tensor(spin.conj().T, fock.conj().T).matrix)
    assert np.allclose((op * factor).matrix, tensor(spin * factor, fock).matrix)
    assert np.allclose((op @ op.dag() + op).matrix, op.matrix @ op.matrix.conj().T + op.matrix)


def test_expectation_matches_trace_on_mixed_state():
    space = HilbertSpace(2, 8)
    number = fock_op("number", space)
    state = coherent_state(0.5, space)
    assert number.expect(state) == pytest.approx(number.expect(state.as_mixed()))
