# core/physics/perturbation.py
"""
n-phonon coupling rates: closed form, resolvent expansion and Lamb-Dicke sideband.
"""
import math
import warnings
from typing import Dict, Optional

import numpy as np

from core.models.hilbert import HilbertSpace, Operator
from core.models.params import LDParams
from core.models.results import RateResult
from core.physics.hilbert import fock_matrix, spin_matrix
from core.services.error_manager import (DegenerateDenominatorError, DimensionMismatchError,
                                         ParameterError, SimulationWarning)

DEGENERACY_ATOL = 1e-12
PLUS, MINUS = 0, 1


def dressed_perturbation(lam: float, space: HilbertSpace) -> Operator:
    """V = (lambda/2)[a†(sigma~ - sigma~† + sigma~_z) + h.c.] in the |±> basis."""
    if space.spin_dim != 2:
        raise DimensionMismatchError(f"dressed perturbation needs a qubit space, got spin_dim={space.spin_dim}")
    spin = (spin_matrix("sigma_minus", 2) - spin_matrix("sigma_plus", 2) + spin_matrix("sigma_z", 2))
    raising = 0.5 * lam * np.kron(spin, fock_matrix("create", space.fock_cutoff))
    return Operator(space, raising + raising.conj().T, hermitian_flag=True)


def mollow_rate(n: int, lam: float, Omega: float) -> RateResult:
    """
    Closed-form n-phonon rate (-1)^{n-1} lambda^n / (2((n-1)!)^2) (n^2/(4 Omega))^{n-1}.

    Each intermediate dressed state contributes one negative sign.
    """
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    if not Omega > 0:
        raise ParameterError(f"Omega must be positive, got {Omega}")
    rate = (-1) ** (n - 1) * lam ** n / (2.0 * math.factorial(n - 1) ** 2) * (n ** 2 / (4.0 * Omega)) ** (n - 1)
    return RateResult(n=n, rate=rate, method="closed_form")


def _dressed_energies(space: HilbertSpace, Omega: float, Delta_a: float) -> np.ndarray:
    m = np.arange(space.fock_cutoff)
    return np.concatenate([m * Delta_a + Omega, m * Delta_a - Omega])


def _label(space: HilbertSpace, index: int) -> str:
    spin, m = divmod(index, space.fock_cutoff)
    return f"|{'+' if spin == PLUS else '-'},{m}>"


def _resolvent(space: HilbertSpace, energies: np.ndarray, reference: float, excluded) -> np.ndarray:
    """Diagonal of K = sum_q |q><q| / (E_i - E_q) over the states not in `excluded`."""
    diag = np.zeros(space.dim)
    for q in range(space.dim):
        if q in excluded:
            continue
        gap = reference - energies[q]
        if abs(gap) < DEGENERACY_ATOL * max(1.0, abs(reference)):
            raise DegenerateDenominatorError(
                f"intermediate state {_label(space, q)} is degenerate with the initial state", state=_label(space, q))
        diag[q] = 1.0 / gap
    return diag


def _energy_shifts(n: int, lam: float, Omega: float, Delta_a: float) -> Dict[str, float]:
    # one extra Fock level so |-,n> sees its a† neighbour
    space = HilbertSpace(2, n + 2)
    v = dressed_perturbation(lam, space).matrix
    energies = _dressed_energies(space, Omega, Delta_a)
    resonant = (space.index(PLUS, 0), space.index(MINUS, n))
    shifts = {}
    for key, i in zip(("+,0", f"-,{n}"), resonant):
        k = _resolvent(space, energies, energies[i], resonant)
        shifts[key] = float(np.real(np.sum(k * np.abs(v[:, i]) ** 2)))
    return shifts


def resolvent_rate(n: int, lam: float, Omega: float, Delta_a: Optional[float] = None) -> RateResult:
    """
    Leading-order rate <+,0| V (K V)^{n-1} |-,n> / sqrt(n!) on {|±,m> : 0 <= m <= n}.

    Propagator energies are m Delta_a ± Omega evaluated at the resonance
    Delta_a = 2 Omega / n. A Delta_a that misses the resonance only warns.
    """
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    if not Omega > 0:
        raise ParameterError(f"Omega must be positive, got {Omega}")
    resonant_Delta_a = 2.0 * Omega / n
    if Delta_a is not None and not math.isclose(Delta_a, resonant_Delta_a, rel_tol=1e-9):
        warnings.warn(f"Delta_a={Delta_a} replaced by the resonant value 2 Omega / n = {resonant_Delta_a}",
                      SimulationWarning, stacklevel=2)

    space = HilbertSpace(2, n + 1)
    v = dressed_perturbation(lam, space).matrix
    energies = _dressed_energies(space, Omega, resonant_Delta_a)
    initial, final = space.index(PLUS, 0), space.index(MINUS, n)
    k = _resolvent(space, energies, energies[initial], (initial, final))

    amplitude = v[:, final]
    for _ in range(n - 1):
        amplitude = v @ (k * amplitude)
    rate = float(np.real(amplitude[initial])) / math.sqrt(math.factorial(n))

    return RateResult(
        n=n,
        rate=rate,
        method="resolvent",
        subspace_dim=space.dim,
        energy_shifts=_energy_shifts(n, lam, Omega, resonant_Delta_a),
    )


def ld_rate(n: int, lam: float, Omega: float, omega_r: float) -> RateResult:
    """Blue-sideband n-phonon rate (Omega/n!)(2 lambda/omega_r)^n."""
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    params = LDParams(lam=lam, Omega=Omega, delta=n * omega_r, omega_r=omega_r)
    params.require_lamb_dicke()
    return RateResult(n=n, rate=Omega / math.factorial(n) * params.eta ** n, method="closed_form")
