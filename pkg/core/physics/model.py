# core/physics/model.py
"""
Rotating-frame Hamiltonians of the Mollow and Lamb-Dicke sideband chains.

Qubit conventions (spin factor index 0 / index 1):
  bare Mollow:     |b> / |d>,  sigma = |d><b|
  dressed Mollow:  |+> / |->,  sigma~ = |-><+|
  Lamb-Dicke:      |0> / |-1>, sigma = |-1><0|
"""
import math
from dataclasses import replace
from typing import Optional

import numpy as np
from scipy.linalg import expm

from core.models.hilbert import HilbertSpace, Operator
from core.models.params import DressedStates, DriftParams, LDParams, MollowParams
from core.physics.hilbert import fock_matrix, spin_matrix, tensor
from core.physics.perturbation import dressed_perturbation, mollow_rate
from core.services.error_manager import (CutoffError, DimensionMismatchError, ParameterError,
                                         TrackingError)
from config.settings import settings

SPIN1_PLUS, SPIN1_ZERO, SPIN1_MINUS = 0, 1, 2
KET_BRIGHT = np.array([1.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_DARK = np.array([1.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)
KET_ZERO = np.array([0.0, 1.0, 0.0], dtype=complex)

FRAMES = ("rotating", "interaction")


def _require_qubit(space: HilbertSpace, builder: str):
    if space.spin_dim != 2:
        raise DimensionMismatchError(f"{builder} needs a qubit space (spin_dim=2), got spin_dim={space.spin_dim}")


def _require_frame(frame: str):
    if frame not in FRAMES:
        raise ParameterError(f"frame must be one of {FRAMES}, got '{frame}'")


def _qubit_terms(space: HilbertSpace):
    n_cut = space.fock_cutoff
    ops = {name: spin_matrix(name, 2) for name in ("sigma_minus", "sigma_plus", "sigma_z", "sigma_x")}
    a = fock_matrix("annihilate", n_cut)
    return ops, a, np.eye(2), np.eye(n_cut)


def _hermitian(space: HilbertSpace, matrix: np.ndarray) -> Operator:
    return Operator(space, matrix, hermitian_flag=True)


def dressed_states(Delta: float, Omega_x: float) -> DressedStates:
    """Dressed spin-1 states under two equal x drives (basis m_s = +1, 0, -1)."""
    if Delta == 0 and Omega_x == 0:
        raise ParameterError("Delta and Omega_x cannot both be zero")
    root = math.sqrt(Delta ** 2 + 8.0 * Omega_x ** 2)
    theta = 0.5 * math.atan2(2.0 * math.sqrt(2.0) * Omega_x, Delta)
    omega_d = Delta
    omega_e = (Delta + root) / 2.0
    omega_g = (Delta - root) / 2.0
    g = math.cos(theta) * KET_ZERO - math.sin(theta) * KET_BRIGHT
    e = math.sin(theta) * KET_ZERO + math.cos(theta) * KET_BRIGHT
    return DressedStates(
        theta=theta,
        omega_d=omega_d,
        omega_e=omega_e,
        omega_g=omega_g,
        omega_bd=omega_e - omega_d,
        omega_dg=omega_d - omega_g,
        omega_eg=omega_e - omega_g,
        omega_bd_approx=2.0 * Omega_x ** 2 / Delta if Delta else float("inf"),
        g=g,
        d=KET_DARK.copy(),
        e=e,
        b=KET_BRIGHT.copy(),
    )


def dressed_spin_hamiltonian(Delta: float, Omega_x: float, delta_n: float = 0.0) -> np.ndarray:
    """3x3 rotating-frame spin Hamiltonian with detunings Delta ± delta_n."""
    h = np.diag([Delta + delta_n, 0.0, Delta - delta_n]).astype(complex)
    h[SPIN1_ZERO, SPIN1_PLUS] = h[SPIN1_PLUS, SPIN1_ZERO] = Omega_x
    h[SPIN1_ZERO, SPIN1_MINUS] = h[SPIN1_MINUS, SPIN1_ZERO] = Omega_x
    return h


def dressed_basis_change() -> np.ndarray:
    """Columns |+>, |-> expressed in the bare (|b>, |d>) qubit basis."""
    return np.array([[1.0, -1.0], [1.0, 1.0]], dtype=complex) / np.sqrt(2.0)


def to_dressed_basis(op: Operator) -> Operator:
    """Rewrite a bare-basis Mollow operator in the |±> basis."""
    _require_qubit(op.space, "to_dressed_basis")
    u = np.kron(dressed_basis_change(), np.eye(op.space.fock_cutoff))
    return Operator(op.space, u.conj().T @ op.matrix @ u, op.hermitian_flag)


def build_driven_jc(p: MollowParams, space: HilbertSpace) -> Operator:
    """Delta_a a†a + lambda(a sigma† + a† sigma) + Omega(sigma + sigma†) [+ (delta_omega_bd/2) sigma_z]."""
    _require_qubit(space, "build_driven_jc")
    s, a, i_s, i_f = _qubit_terms(space)
    flip = np.kron(s["sigma_plus"], a)
    h = p.Delta_a * np.kron(i_s, a.conj().T @ a)
    h = h + p.lam * (flip + flip.conj().T)
    h = h + p.Omega * np.kron(s["sigma_x"], i_f)
    h = h + 0.5 * p.delta_omega_bd * np.kron(s["sigma_z"], i_f)
    return _hermitian(space, h)


def build_dressed_mollow(p: MollowParams, space: HilbertSpace) -> Operator:
    """Delta_a a†a + Omega sigma~_z + (lambda/2)[a†(sigma~ - sigma~† + sigma~_z) + h.c.]."""
    _require_qubit(space, "build_dressed_mollow")
    s, a, i_s, i_f = _qubit_terms(space)
    h = p.Delta_a * np.kron(i_s, a.conj().T @ a) + p.Omega * np.kron(s["sigma_z"], i_f)
    h = h + dressed_perturbation(p.lam, space).matrix
    # bare sigma_z reads -(sigma~ + sigma~†) in the dressed basis
    h = h - 0.5 * p.delta_omega_bd * np.kron(s["sigma_x"], i_f)
    return _hermitian(space, h)


def build_effective_mollow(n: int, p: MollowParams, space: HilbertSpace,
                           rate_override: Optional[float] = None, frame: str = "rotating") -> Operator:
    """
    Effective n-phonon Mollow Hamiltonian.

    rotating:    Delta_a a†a + Omega sigma~_z + lambda^(n)(a^n sigma~† + a†^n sigma~)
    interaction: (Omega - n Delta_a/2) sigma~_z + lambda^(n)(...), i.e. rotating with
                 Delta_a(a†a + (n/2) sigma~_z), which commutes with the coupling.
    """
    _require_qubit(space, "build_effective_mollow")
    _require_frame(frame)
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    if space.fock_cutoff <= 4 * n:
        raise CutoffError(f"fock_cutoff={space.fock_cutoff} too small for n={n}; need at least {4 * n + 1}",
                          required_cutoff=4 * n + 1)
    p.check_validity()
    rate = mollow_rate(n, p.lam, p.Omega).rate if rate_override is None else rate_override
    s, a, i_s, i_f = _qubit_terms(space)
    an = np.linalg.matrix_power(a, n)
    coupling = rate * np.kron(s["sigma_plus"], an)
    h = coupling + coupling.conj().T
    if frame == "rotating":
        h = h + p.Delta_a * np.kron(i_s, a.conj().T @ a) + p.Omega * np.kron(s["sigma_z"], i_f)
    else:
        h = h + (p.Omega - 0.5 * n * p.Delta_a) * np.kron(s["sigma_z"], i_f)
    return _hermitian(space, h)


def build_ld_rotating(p: LDParams, space: HilbertSpace) -> Operator:
    """(-delta/2) sigma_z + omega_r a†a + lambda(a + a†) sigma_z + Omega(sigma + sigma†)."""
    _require_qubit(space, "build_ld_rotating")
    s, a, i_s, i_f = _qubit_terms(space)
    h = -0.5 * p.delta * np.kron(s["sigma_z"], i_f) + p.omega_r * np.kron(i_s, a.conj().T @ a)
    h = h + p.lam * np.kron(s["sigma_z"], a + a.conj().T)
    h = h + p.Omega * np.kron(s["sigma_x"], i_f)
    return _hermitian(space, h)


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """exp(alpha a† - alpha* a) on the truncated Fock factor."""
    a = fock_matrix("annihilate", cutoff)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def build_ld_polaron(p: LDParams, space: HilbertSpace) -> Operator:
    """
    (-delta/2) sigma_z + omega_r a†a + Omega[e^{eta(a† - a)} sigma† + h.c.] - lambda^2/omega_r.

    The constant is the polaron energy shift of the transformation; with it
    the spectrum equals build_ld_rotating's up to truncation.
    """
    _require_qubit(space, "build_ld_polaron")
    s, a, i_s, i_f = _qubit_terms(space)
    shifted = np.kron(s["sigma_plus"], displacement_matrix(p.eta, space.fock_cutoff))
    h = -0.5 * p.delta * np.kron(s["sigma_z"], i_f) + p.omega_r * np.kron(i_s, a.conj().T @ a)
    h = h + p.Omega * (shifted + shifted.conj().T)
    h = h - (p.lam ** 2 / p.omega_r) * np.eye(space.dim)
    return _hermitian(space, h)


def build_ld_effective(n: int, p: LDParams, space: HilbertSpace, frame: str = "rotating") -> Operator:
    """
    Blue-sideband n-phonon model (delta ≈ n omega_r).

    rotating:    (-delta/2) sigma_z + omega_r a†a + (Omega/n!) eta^n (a†^n sigma† + a^n sigma)
    interaction: -((delta - n omega_r)/2) sigma_z + coupling.

    The red sideband follows by negating delta and swapping sigma <-> sigma†.
    """
    _require_qubit(space, "build_ld_effective")
    _require_frame(frame)
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    p.require_lamb_dicke()
    s, a, i_s, i_f = _qubit_terms(space)
    strength = p.Omega / math.factorial(n) * p.eta ** n
    coupling = strength * np.kron(s["sigma_plus"], np.linalg.matrix_power(a.conj().T, n))
    h = coupling + coupling.conj().T
    if frame == "rotating":
        h = h - 0.5 * p.delta * np.kron(s["sigma_z"], i_f) + p.omega_r * np.kron(i_s, a.conj().T @ a)
    else:
        h = h - 0.5 * (p.delta - n * p.omega_r) * np.kron(s["sigma_z"], i_f)
    return _hermitian(space, h)


def build_cat_interaction(lambda2: float, Omega0: float, space: HilbertSpace) -> Operator:
    """lambda^(2)(a^2 sigma~† + a†^2 sigma~) + Omega0(sigma~† + sigma~)."""
    _require_qubit(space, "build_cat_interaction")
    s, a, i_s, i_f = _qubit_terms(space)
    pair = lambda2 * np.kron(s["sigma_plus"], a @ a)
    h = pair + pair.conj().T + Omega0 * np.kron(s["sigma_x"], i_f)
    return _hermitian(space, h)


def _bright_dark_splitting(Delta: float, Omega_x: float, delta_n: float):
    energies, vectors = np.linalg.eigh(dressed_spin_hamiltonian(Delta, Omega_x, delta_n))
    dark_weights = np.abs(KET_DARK.conj() @ vectors) ** 2
    dark = int(np.argmax(dark_weights))
    bright_weights = np.abs(KET_BRIGHT.conj() @ vectors) ** 2
    bright_weights[dark] = -1.0
    bright = int(np.argmax(bright_weights))
    if dark_weights[dark] < settings.DRIFT_MIN_OVERLAP or bright_weights[bright] < settings.DRIFT_MIN_OVERLAP:
        raise TrackingError(
            f"dark/bright identification ambiguous at delta_n={delta_n}: "
            f"overlaps {dark_weights[dark]:.3f}, {bright_weights[bright]:.3f}")
    return energies[bright] - energies[dark], dark_weights[dark], bright_weights[bright]


def drift_shift(Delta: float, Omega_x: float, delta_n: float) -> DriftParams:
    """Shift of the bright-dark splitting under a static drift delta_n S_z (exact 3x3)."""
    if not Delta > 0:
        raise ParameterError(f"Delta must be positive, got {Delta}")
    omega_bd0, _, _ = _bright_dark_splitting(Delta, Omega_x, 0.0)
    omega_bd, dark_overlap, bright_overlap = _bright_dark_splitting(Delta, Omega_x, delta_n)
    return DriftParams(
        delta_n=delta_n,
        delta_omega_bd=omega_bd - omega_bd0,
        omega_bd=omega_bd,
        omega_bd_unperturbed=omega_bd0,
        dark_overlap=float(dark_overlap),
        bright_overlap=float(bright_overlap),
    )


def with_drift(p: MollowParams, drift: DriftParams) -> MollowParams:
    return replace(p, delta_omega_bd=drift.delta_omega_bd)
