# core/physics/hilbert.py
"""
Truncated Fock-space and spin operator algebra.

Ordering is spin factor first, Fock factor second, everywhere. The creation
operator annihilates the top retained Fock state (hard cutoff).
"""
import math
from typing import Optional, Sequence, Union

import numpy as np

from core.models.hilbert import HilbertSpace, Operator, QuantumState
from core.services.error_manager import CutoffError, DimensionMismatchError, ParameterError

FOCK_KINDS = ("annihilate", "create", "number", "parity", "identity")
SPIN1_KINDS = ("Sz", "Sx")
QUBIT_KINDS = ("sigma_minus", "sigma_plus", "sigma_z", "sigma_x")

SpinSpec = Union[int, Sequence[complex], np.ndarray]


def fock_matrix(kind: str, cutoff: int) -> np.ndarray:
    """Single-mode matrix on the Fock factor alone."""
    if kind == "annihilate":
        return np.diag(np.sqrt(np.arange(1, cutoff)), k=1).astype(complex)
    if kind == "create":
        return np.diag(np.sqrt(np.arange(1, cutoff)), k=-1).astype(complex)
    if kind == "number":
        return np.diag(np.arange(cutoff)).astype(complex)
    if kind == "parity":
        return np.diag((-1.0) ** np.arange(cutoff)).astype(complex)
    if kind == "identity":
        return np.eye(cutoff, dtype=complex)
    raise ParameterError(f"unknown Fock operator kind '{kind}', expected one of {FOCK_KINDS}")


def spin_matrix(kind: str, spin_dim: int, i: Optional[int] = None, j: Optional[int] = None) -> np.ndarray:
    """
    Matrix on the spin factor alone.

    Spin-1 basis is (m_s=+1, 0, -1). Qubit basis is (upper, lower), so
    sigma_minus = |1><0| and sigma_z = diag(+1, -1).
    """
    if kind == "identity":
        return np.eye(spin_dim, dtype=complex)
    if kind == "projector":
        if i is None or j is None or not (0 <= i < spin_dim and 0 <= j < spin_dim):
            raise DimensionMismatchError(f"projector({i},{j}) invalid for spin_dim={spin_dim}")
        m = np.zeros((spin_dim, spin_dim), dtype=complex)
        m[i, j] = 1.0
        return m
    if kind in SPIN1_KINDS:
        if spin_dim != 3:
            raise DimensionMismatchError(f"{kind} requires spin_dim=3, got {spin_dim}")
        if kind == "Sz":
            return np.diag([1.0, 0.0, -1.0]).astype(complex)
        return np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / np.sqrt(2.0)
    if kind in QUBIT_KINDS:
        if spin_dim != 2:
            raise DimensionMismatchError(f"{kind} requires spin_dim=2, got {spin_dim}")
        return {
            "sigma_minus": np.array([[0, 0], [1, 0]], dtype=complex),
            "sigma_plus": np.array([[0, 1], [0, 0]], dtype=complex),
            "sigma_z": np.array([[1, 0], [0, -1]], dtype=complex),
            "sigma_x": np.array([[0, 1], [1, 0]], dtype=complex),
        }[kind]
    raise ParameterError(f"unknown spin operator kind '{kind}'")


def tensor(spin_factor: np.ndarray, fock_factor: np.ndarray, hermitian_flag: Optional[bool] = None) -> Operator:
    """Kronecker product spin ⊗ Fock on the matching HilbertSpace."""
    spin_factor = np.asarray(spin_factor, dtype=complex)
    fock_factor = np.asarray(fock_factor, dtype=complex)
    for name, factor in (("spin", spin_factor), ("fock", fock_factor)):
        if factor.ndim != 2 or factor.shape[0] != factor.shape[1]:
            raise DimensionMismatchError(f"{name} factor must be square, got shape {factor.shape}")
    space = HilbertSpace(spin_factor.shape[0], fock_factor.shape[0])
    return Operator(space, np.kron(spin_factor, fock_factor), hermitian_flag)


def identity(space: HilbertSpace) -> Operator:
    return Operator(space, np.eye(space.dim, dtype=complex), True)


def fock_op(kind: str, space: HilbertSpace) -> Operator:
    """Bosonic operator on the Fock factor, identity on the spin factor."""
    flag = True if kind in ("number", "parity", "identity") else None
    return tensor(np.eye(space.spin_dim), fock_matrix(kind, space.fock_cutoff), flag)


def spin_op(kind: str, space: HilbertSpace, i: Optional[int] = None, j: Optional[int] = None) -> Operator:
    """Spin operator on the spin factor, identity on the Fock factor."""
    flag = True if kind in ("Sz", "Sx", "sigma_z", "sigma_x", "identity") else None
    return tensor(spin_matrix(kind, space.spin_dim, i, j), np.eye(space.fock_cutoff), flag)


def required_cutoff(beta: complex) -> int:
    """Smallest N with |beta|^2 + 6 sqrt(|beta|^2 + 1) < N."""
    nbar = abs(beta) ** 2
    return int(math.floor(nbar + 6.0 * math.sqrt(nbar + 1.0))) + 1


def default_cutoff(n_target: int = 0, beta: Optional[complex] = None) -> int:
    """N = max(4 n_target + 5, coherent-state support of beta)."""
    cutoff = 4 * n_target + 5
    if beta is not None:
        cutoff = max(cutoff, required_cutoff(beta))
    return cutoff


def coherent_amplitudes(beta: complex, cutoff: int, normalize: bool = True) -> np.ndarray:
    if cutoff < required_cutoff(beta):
        raise CutoffError(
            f"fock_cutoff={cutoff} too small for beta={beta}; need at least {required_cutoff(beta)}",
            required_cutoff=required_cutoff(beta))
    amps = np.empty(cutoff, dtype=complex)
    amps[0] = np.exp(-abs(beta) ** 2 / 2.0)
    for n in range(1, cutoff):
        amps[n] = amps[n - 1] * beta / np.sqrt(n)
    if normalize:
        amps /= np.linalg.norm(amps)
    return amps


def _spin_vector(space: HilbertSpace, spin: SpinSpec) -> np.ndarray:
    if isinstance(spin, (int, np.integer)):
        vec = np.zeros(space.spin_dim, dtype=complex)
        vec[int(spin)] = 1.0
        return vec
    vec = np.asarray(spin, dtype=complex)
    if vec.shape != (space.spin_dim,):
        raise DimensionMismatchError(f"spin vector of shape {vec.shape} does not match spin_dim={space.spin_dim}")
    return vec / np.linalg.norm(vec)


def product_state(space: HilbertSpace, spin: SpinSpec, fock: np.ndarray) -> QuantumState:
    """|spin⟩ ⊗ |fock⟩ as a normalized pure state."""
    fock = np.asarray(fock, dtype=complex)
    if fock.shape != (space.fock_cutoff,):
        raise DimensionMismatchError(f"Fock vector of length {fock.shape} does not match cutoff {space.fock_cutoff}")
    return QuantumState.pure(np.kron(_spin_vector(space, spin), fock), space, normalize=True)


def basis_state(space: HilbertSpace, spin: int, n: int) -> QuantumState:
    return QuantumState.pure(space.basis_vector(spin, n), space)


def coherent_state(beta: complex, space: HilbertSpace, spin: SpinSpec = 0) -> QuantumState:
    """|spin⟩ ⊗ |beta⟩, renormalized after truncation."""
    return product_state(space, spin, coherent_amplitudes(beta, space.fock_cutoff))


def cat_amplitudes(beta: complex, parity: str, cutoff: int) -> np.ndarray:
    if parity not in ("even", "odd"):
        raise ParameterError(f"parity must be 'even' or 'odd', got '{parity}'")
    amps = coherent_amplitudes(beta, cutoff, normalize=False)
    sign = 1.0 if parity == "even" else -1.0
    cat = amps * (1.0 + sign * (-1.0) ** np.arange(cutoff))
    norm = np.linalg.norm(cat)
    if norm < 1e-12:
        raise ParameterError(f"{parity} cat with beta={beta} is the null state")
    return cat / norm


def cat_state(beta: complex, parity: str, space: HilbertSpace, spin: SpinSpec = 0) -> QuantumState:
    """|spin⟩ ⊗ N(|beta⟩ ± |-beta⟩)."""
    return product_state(space, spin, cat_amplitudes(beta, parity, space.fock_cutoff))


def phonon_density(state: QuantumState) -> np.ndarray:
    """Reduced Fock-space density matrix, spin traced out."""
    s, n = state.space.spin_dim, state.space.fock_cutoff
    if state.is_pure:
        psi = state.vector.reshape(s, n)
        return np.einsum("sn,sm->nm", psi, psi.conj())
    return np.einsum("snsm->nm", state.density.reshape(s, n, s, n))
