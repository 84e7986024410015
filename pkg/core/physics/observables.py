# core/physics/observables.py
"""
Phonon populations, parity, Wigner maps, cat fidelity, dark-state residual
and n-phonon correlation functions.
"""
import math
import warnings
from typing import Dict, Optional, Sequence, Union

import numpy as np
from scipy.special import eval_genlaguerre, gammaln

from config.settings import settings
from core.models.hilbert import HilbertSpace, Operator, QuantumState
from core.models.results import CorrelationSeries, WignerGrid
from core.physics.dynamics import LindbladModel, _propagate, liouvillian, steady_state
from core.physics.hilbert import cat_amplitudes, fock_op, phonon_density, tensor
from core.services.error_manager import ObservableError, ParameterError, SimulationWarning

StateLike = Union[QuantumState, np.ndarray]

MIN_CORRELATION_NORM = 1e-12


def _fock_density(state: StateLike) -> np.ndarray:
    if isinstance(state, QuantumState):
        return phonon_density(state)
    rho = np.asarray(state, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ParameterError(f"expected a square Fock density matrix, got shape {rho.shape}")
    return rho


def number_populations(state: StateLike) -> np.ndarray:
    """P(n) = <n| Tr_spin rho |n>."""
    return np.real(np.diag(_fock_density(state))).copy()


def population_operators(space: HilbertSpace, levels: Sequence[int]) -> Dict[str, Operator]:
    """Projectors |k><k| on the Fock factor, keyed 'P<k>'."""
    ops = {}
    for k in levels:
        projector = np.zeros((space.fock_cutoff, space.fock_cutoff), dtype=complex)
        projector[k, k] = 1.0
        ops[f"P{k}"] = tensor(np.eye(space.spin_dim), projector, hermitian_flag=True)
    return ops


def phonon_observables(space: HilbertSpace) -> Dict[str, Operator]:
    return {"n": fock_op("number", space), "parity": fock_op("parity", space)}


def parity(state: StateLike) -> float:
    populations = number_populations(state)
    return float(np.sum(populations * (-1.0) ** np.arange(populations.size)))


def _support_level(populations: np.ndarray, tail: float) -> int:
    """Largest k with sum_{j >= k} P(j) above the tail weight."""
    tails = np.cumsum(populations[::-1])[::-1]
    above = np.nonzero(tails > tail)[0]
    return int(above[-1]) if above.size else 0


def _check_grid_support(rho: np.ndarray, xvec: np.ndarray, pvec: np.ndarray):
    level = _support_level(np.real(np.diag(rho)), settings.WIGNER_SUPPORT_TAIL)
    needed = math.sqrt(2.0 * level + 1.0)
    reach = min(float(np.max(np.abs(xvec))), float(np.max(np.abs(pvec))))
    if reach < needed:
        warnings.warn(f"Wigner grid reaches |x|, |p| <= {reach:.3g} but the state extends to {needed:.3g} "
                      f"(Fock support up to n = {level}); lobes outside the grid are cut off",
                      SimulationWarning, stacklevel=3)


def wigner(state: StateLike, xvec: Sequence[float], pvec: Sequence[float]) -> WignerGrid:
    """
    W(alpha) = (2/pi) Tr[rho D(alpha) P D(alpha)†] with alpha = (x + i p)/sqrt(2).

    Uses the closed-form Fock matrix elements of the displaced parity
    operator, so every grid point is exact for the given density matrix.
    """
    xvec = np.asarray(xvec, dtype=float)
    pvec = np.asarray(pvec, dtype=float)
    rho = _fock_density(state)
    _check_grid_support(rho, xvec, pvec)

    xx, pp = np.meshgrid(xvec, pvec)
    alpha = (xx + 1j * pp) / math.sqrt(2.0)
    b = 4.0 * np.abs(alpha) ** 2
    phase = np.exp(1j * np.angle(alpha))
    with np.errstate(divide="ignore"):
        log_two_alpha = np.log(2.0 * np.abs(alpha))
    log_factorial = gammaln(np.arange(rho.shape[0]) + 1.0)

    values = np.zeros(xx.shape)
    for m in range(rho.shape[0]):
        sign = (-1.0) ** m
        if rho[m, m] != 0:
            values += sign * np.real(rho[m, m]) * eval_genlaguerre(m, 0, b) * np.exp(-b / 2.0)
        for n in range(m + 1, rho.shape[0]):
            if rho[m, n] == 0:
                continue
            k = n - m
            scale = np.exp(k * log_two_alpha - b / 2.0 + 0.5 * (log_factorial[m] - log_factorial[n]))
            values += 2.0 * sign * np.real(rho[m, n] * phase ** k) * scale * eval_genlaguerre(m, k, b)
    return WignerGrid(x=xvec, p=pvec, values=2.0 / math.pi * values)


def fringe_contrast(grid: WignerGrid, beta: complex) -> float:
    """|W| at the origin over the lobe maximum (points with |alpha| >= |beta|/2)."""
    xx, pp = np.meshgrid(grid.x, grid.p)
    radius = np.hypot(xx, pp) / math.sqrt(2.0)
    origin = np.unravel_index(np.argmin(radius), radius.shape)
    lobes = grid.values[radius >= abs(beta) / 2.0]
    if lobes.size == 0 or lobes.max() <= 0:
        raise ObservableError("Wigner grid does not reach the coherent lobes")
    return float(abs(grid.values[origin]) / lobes.max())


def cat_fidelity(state: StateLike, beta: complex, parity_label: str) -> float:
    """<cat| rho_phonon |cat> against the normalized cat of the given parity."""
    rho = _fock_density(state)
    cat = cat_amplitudes(beta, parity_label, rho.shape[0])
    return float(np.clip(np.real(np.vdot(cat, rho @ cat)), 0.0, 1.0))


def dark_state_residual(H: Operator, state: QuantumState) -> float:
    """||H psi|| relative to the spectral norm of H."""
    if not state.is_pure:
        raise ObservableError("dark_state_residual needs a pure state")
    scale = np.linalg.norm(H.matrix, 2)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(H.apply(state.vector)) / scale)


def g2_generalized(model: LindbladModel, n: int, tau: Sequence[float],
                   rho_ss: Optional[QuantumState] = None) -> CorrelationSeries:
    """
    g_n(tau) = Tr[a†^n a^n B(tau)] / <a†^n a^n>_ss^2 with B(0) = a^n rho_ss a†^n,
    B evolved under the model's Liouvillian.
    """
    if n < 1:
        raise ParameterError(f"correlation order must be >= 1, got {n}")
    tau = np.asarray(tau, dtype=float)
    if tau.size == 0 or np.any(tau < 0) or np.any(np.diff(tau) < 0):
        raise ParameterError("tau grid must be non-negative and sorted")
    rho_ss = rho_ss if rho_ss is not None else steady_state(model)
    rho = rho_ss.to_density()

    an = fock_op("annihilate", model.space).power(n).matrix
    counter = an.conj().T @ an
    norm = float(np.real(np.trace(counter @ rho)))
    if norm < MIN_CORRELATION_NORM:
        raise ObservableError(f"<a†^{n} a^{n}> = {norm:.3e} in steady state; correlation undefined")

    sample = tau if tau[0] == 0 else np.concatenate([[0.0], tau])
    evolved = _propagate(liouvillian(model), an @ rho @ an.conj().T, sample, enforce_physical=False)
    if tau[0] != 0:
        evolved = evolved[1:]
    g = np.array([np.real(np.trace(counter @ b)) for b in evolved]) / norm ** 2
    g0 = float(np.real(np.trace(counter @ an @ rho @ an.conj().T))) / norm ** 2
    return CorrelationSeries(n=n, tau=tau, g=g, g0=g0)
