# core/physics/dynamics.py
"""
Lindblad master equations, steady states and quantum-jump trajectories.

Density matrices are vectorized row-major, so vec(A rho B) = (A ⊗ B^T) vec(rho).
"""
import warnings
from dataclasses import dataclass, field
from functools import partial
from multiprocessing import Pool
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.integrate import solve_ivp
from scipy.linalg import eigh, svd
from scipy.optimize import bisect
from scipy.sparse.linalg import spsolve

from config.settings import settings
from core.models.hilbert import HilbertSpace, Operator, QuantumState
from core.models.params import DissipationParams
from core.models.results import EnsembleResult, EvolutionResult, TrajectoryRecord
from core.physics.hilbert import fock_op, spin_op
from core.services.error_manager import (ConvergenceError, DimensionMismatchError, IntegrationError,
                                         ParameterError, SimulationWarning)


VARIANTS = ("cat", "fock", "correlation")
NULL_SPACE_RCOND = 1e-10


@dataclass(frozen=True, eq=False)
class LindbladModel:
    hamiltonian: Operator
    channels: List[Tuple[float, Operator]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.hamiltonian.is_hermitian():
            raise ParameterError("Lindblad Hamiltonian must be Hermitian")
        for rate, op in self.channels:
            if rate < 0:
                raise ParameterError(f"channel rate must be non-negative, got {rate}")
            if op.space != self.hamiltonian.space:
                raise DimensionMismatchError(f"channel acts on {op.space}, Hamiltonian on {self.hamiltonian.space}")
        if self.labels and len(self.labels) != len(self.channels):
            raise ParameterError("one label per channel required")

    @property
    def space(self) -> HilbertSpace:
        return self.hamiltonian.space

    def channel_label(self, k: int) -> str:
        return self.labels[k] if self.labels else f"c{k}"


def make_model(H: Operator, d: DissipationParams, variant: str) -> LindbladModel:
    """
    Assemble the channel set of one of the three master equations.

    cat:          gamma_s D[sigma_z] + (n_th+1) gamma_m D[a]
    fock:         gamma_s D[sigma_z] + (n_th+1) gamma_m D[a] + n_th gamma_m D[a†]
    correlation:  gamma_s D[sigma_z] + (n_th+1) gamma_m D[a] + Gamma_0 D[sigma]
    """
    if variant not in VARIANTS:
        raise ParameterError(f"unknown master-equation variant '{variant}', expected one of {VARIANTS}")
    space = H.space
    a = fock_op("annihilate", space)
    channels = [(d.gamma_s, spin_op("sigma_z", space)), ((d.n_th + 1.0) * d.gamma_m, a)]
    labels = ["dephasing", "phonon_loss"]
    if variant == "fock":
        channels.append((d.n_th * d.gamma_m, a.dag()))
        labels.append("phonon_gain")
    elif variant == "correlation":
        channels.append((d.Gamma_0, spin_op("sigma_minus", space)))
        labels.append("spin_decay")
    return LindbladModel(hamiltonian=H, channels=channels, labels=labels)


def liouvillian(model: LindbladModel) -> sparse.csr_matrix:
    """Sparse superoperator acting on row-major vec(rho)."""
    dim = model.space.dim
    eye = sparse.identity(dim, format="csr", dtype=complex)
    h = model.hamiltonian.as_sparse()
    lv = -1j * (sparse.kron(h, eye) - sparse.kron(eye, h.T))
    for rate, op in model.channels:
        if rate == 0:
            continue
        c = op.as_sparse()
        cdc = (c.conj().T @ c).tocsr()
        lv = lv + rate * (sparse.kron(c, c.conj()) - 0.5 * sparse.kron(cdc, eye) - 0.5 * sparse.kron(eye, cdc.T))
    return sparse.csr_matrix(lv)


def _expectations(observables: Dict[str, Operator], rho: np.ndarray) -> Dict[str, complex]:
    return {name: complex(np.einsum("ij,ji->", op.matrix, rho)) for name, op in observables.items()}


def _propagate(lv: sparse.csr_matrix, rho0: np.ndarray, times: np.ndarray, enforce_physical: bool = True) -> List[np.ndarray]:
    """Piecewise integration between sample times; returns the matrix at every sample."""
    dim = rho0.shape[0]
    generator = lv if lv.shape[0] > settings.SPARSE_DIM_THRESHOLD else lv.toarray()

    def rhs(_t, y):
        return generator @ y

    rho = np.array(rho0, dtype=complex)
    out = [rho.copy()]
    for t0, t1 in zip(times[:-1], times[1:]):
        if t1 > t0:
            sol = solve_ivp(rhs, (t0, t1), rho.reshape(-1), method=settings.ODE_METHOD,
                            rtol=settings.ODE_RTOL, atol=settings.ODE_ATOL)
            if not sol.success:
                raise IntegrationError(f"master-equation integration failed: {sol.message}", time=float(sol.t[-1]))
            rho = sol.y[:, -1].reshape(dim, dim)
        if enforce_physical:
            rho = 0.5 * (rho + rho.conj().T)
            trace = np.trace(rho).real
            if abs(trace - 1.0) > settings.TRACE_ATOL:
                raise IntegrationError(f"trace drifted to {trace:.12f}", time=float(t1))
            min_eig = np.linalg.eigvalsh(rho).min()
            if min_eig < -settings.POSITIVITY_ATOL:
                warnings.warn(f"density matrix eigenvalue {min_eig:.3e} at t={t1:.6g}", SimulationWarning, stacklevel=3)
        out.append(rho.copy())
    return out


def lindblad_evolve(model: LindbladModel, rho0: QuantumState, times: Sequence[float],
                    observables: Optional[Dict[str, Operator]] = None, keep_states: bool = False) -> EvolutionResult:
    """
    Integrate the master equation and sample observables on `times`.

    Hermiticity is restored after each segment; a trace drift beyond
    TRACE_ATOL raises IntegrationError carrying the failing time.
    """
    if rho0.space != model.space:
        raise DimensionMismatchError(f"initial state on {rho0.space}, model on {model.space}")
    times = np.asarray(times, dtype=float)
    if np.any(np.diff(times) < 0):
        raise ParameterError("times must be non-decreasing")
    observables = observables or {}
    states = _propagate(liouvillian(model), rho0.to_density(), times)
    series = {name: np.empty(times.size, dtype=complex) for name in observables}
    for i, rho in enumerate(states):
        for name, value in _expectations(observables, rho).items():
            series[name][i] = value
    return EvolutionResult(times=times, expectations=series, states=states if keep_states else None)


def _as_state(model: LindbladModel, rho: np.ndarray) -> QuantumState:
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    min_eig = np.linalg.eigvalsh(rho).min()
    if min_eig < -settings.POSITIVITY_ATOL:
        warnings.warn(f"steady state has eigenvalue {min_eig:.3e}", SimulationWarning, stacklevel=3)
    return QuantumState.mixed(rho, model.space, validate=False)


def _check_residual(lv: sparse.csr_matrix, rho: np.ndarray) -> float:
    residual = float(np.linalg.norm(lv @ rho.reshape(-1)))
    if not np.isfinite(residual) or residual >= settings.STEADY_STATE_RESIDUAL:
        raise ConvergenceError(f"steady-state residual {residual:.3e} exceeds {settings.STEADY_STATE_RESIDUAL:.0e}",
                               residual=residual)
    return residual


def _relaxation_time(model: LindbladModel) -> float:
    rates = [rate for rate, _ in model.channels if rate > 0]
    if not rates:
        raise ConvergenceError("no dissipative channel; steady state is not unique")
    return 50.0 / min(rates)


def steady_state(model: LindbladModel) -> QuantumState:
    """
    Null vector of the Liouvillian with unit trace.

    Small problems use a dense SVD; a null space of dimension > 1 falls back to
    propagating the maximally mixed state and projecting it onto that null
    space. Large problems solve L vec(rho) = 0 with one trace row replaced.
    """
    lv = liouvillian(model)
    dim = model.space.dim
    if lv.shape[0] <= settings.DIRECT_STEADY_STATE_LIMIT:
        _, s, vh = svd(lv.toarray())
        null = vh[s < NULL_SPACE_RCOND * s[0]].conj().T
        if null.shape[1] == 0:
            null = vh[-1:].conj().T
        if null.shape[1] > 1:
            warnings.warn(f"Liouvillian null space has dimension {null.shape[1]}; using long-time propagation",
                          SimulationWarning, stacklevel=2)
            start = np.eye(dim, dtype=complex) / dim
            late = _propagate(lv, start, np.array([0.0, _relaxation_time(model)]))[-1]
            coeffs, *_ = np.linalg.lstsq(null, late.reshape(-1), rcond=None)
            rho = (null @ coeffs).reshape(dim, dim)
        else:
            rho = null[:, 0].reshape(dim, dim)
    else:
        system = lv.tolil()
        trace_row = np.zeros(lv.shape[0], dtype=complex)
        trace_row[np.arange(dim) * (dim + 1)] = 1.0
        system[0, :] = trace_row
        rhs = np.zeros(lv.shape[0], dtype=complex)
        rhs[0] = 1.0
        rho = spsolve(system.tocsc(), rhs).reshape(dim, dim)

    if abs(np.trace(rho)) < 1e-14:
        raise ConvergenceError("steady-state candidate has zero trace")
    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    _check_residual(lv, rho)
    return _as_state(model, rho)


def schrodinger_evolve(H: Operator, psi0: QuantumState, times: Sequence[float],
                       observables: Optional[Dict[str, Operator]] = None, keep_states: bool = False) -> EvolutionResult:
    """Exact pure-state propagation by eigendecomposition of a time-independent H."""
    if not psi0.is_pure:
        raise ParameterError("schrodinger_evolve needs a pure state")
    if psi0.space != H.space:
        raise DimensionMismatchError(f"state on {psi0.space}, Hamiltonian on {H.space}")
    times = np.asarray(times, dtype=float)
    energies, vectors = eigh(H.matrix)
    coeffs = vectors.conj().T @ psi0.vector
    observables = observables or {}
    series = {name: np.empty(times.size, dtype=complex) for name in observables}
    states = []
    for i, t in enumerate(times):
        psi = vectors @ (np.exp(-1j * energies * (t - times[0])) * coeffs)
        for name, op in observables.items():
            series[name][i] = np.vdot(psi, op.matrix @ psi)
        if keep_states:
            states.append(psi)
    return EvolutionResult(times=times, expectations=series, states=states if keep_states else None)


def mcwf_trajectory(model: LindbladModel, psi0: QuantumState, times: Sequence[float], seed: int,
                    observables: Optional[Dict[str, Operator]] = None,
                    keep_states: bool = False) -> TrajectoryRecord:
    """
    One photon-counting quantum-jump trajectory.

    The unnormalized state evolves under H - (i/2) sum gamma_k C_k† C_k until
    its squared norm falls below a uniform threshold; the crossing time is
    bisected on the dense-output interpolant, the channel is drawn with
    weight gamma_k ||C_k psi||^2 and the state renormalized.
    """
    if not psi0.is_pure:
        raise ParameterError("mcwf_trajectory needs a pure initial state")
    if psi0.space != model.space:
        raise DimensionMismatchError(f"initial state on {psi0.space}, model on {model.space}")
    times = np.asarray(times, dtype=float)
    observables = observables or {}
    rng = np.random.default_rng(seed)

    active = [(k, rate, op.as_linear()) for k, (rate, op) in enumerate(model.channels) if rate > 0]
    h_eff = model.hamiltonian.matrix.astype(complex)
    for k, rate, _ in active:
        c = model.channels[k][1].matrix
        h_eff = h_eff - 0.5j * rate * (c.conj().T @ c)
    if model.space.dim > settings.SPARSE_DIM_THRESHOLD:
        h_eff = sparse.csr_matrix(h_eff)

    def rhs(_t, y):
        return -1j * (h_eff @ y)

    def record(psi):
        norm2 = np.vdot(psi, psi).real
        for name, op in observables.items():
            series[name][step] = np.vdot(psi, op.matrix @ psi) / norm2
        if keep_states:
            states.append(psi / np.sqrt(norm2))

    series = {name: np.empty(times.size, dtype=complex) for name in observables}
    states: List[np.ndarray] = []
    jumps: List[Tuple[float, int]] = []
    psi = np.array(psi0.vector, dtype=complex)
    threshold = rng.random()
    step = 0
    record(psi)

    for step in range(1, times.size):
        t, t_end = times[step - 1], times[step]
        width = t_end - t
        while t < t_end:
            sol = solve_ivp(rhs, (t, t_end), psi, method=settings.ODE_METHOD, rtol=settings.ODE_RTOL,
                            atol=settings.ODE_ATOL, dense_output=True)
            if not sol.success:
                raise IntegrationError(f"trajectory integration failed: {sol.message}", time=float(sol.t[-1]), seed=seed)
            end_state = sol.y[:, -1]
            norm2 = np.vdot(end_state, end_state).real
            if not np.isfinite(norm2):
                raise IntegrationError("state norm is not finite", time=float(t_end), seed=seed)
            if norm2 > threshold:
                psi, t = end_state, t_end
                break

            def excess(tau):
                y = sol.sol(tau)
                return np.vdot(y, y).real - threshold

            tau = bisect(excess, t, t_end, xtol=settings.JUMP_TIME_RTOL * width)
            pre_jump = sol.sol(tau)
            weights = np.array([rate * np.linalg.norm(op @ pre_jump) ** 2 for _, rate, op in active])
            if weights.sum() <= 0:
                if np.vdot(pre_jump, pre_jump).real <= 0:
                    raise IntegrationError("state norm underflow without a jump channel", time=float(tau), seed=seed)
                psi = pre_jump / np.linalg.norm(pre_jump)
            else:
                choice = int(np.searchsorted(np.cumsum(weights) / weights.sum(), rng.random(), side="right"))
                choice = min(choice, len(active) - 1)
                channel, _, op = active[choice]
                psi = op @ pre_jump
                psi = psi / np.linalg.norm(psi)
                jumps.append((float(tau), channel))
            threshold = rng.random()
            t = tau
        record(psi)

    return TrajectoryRecord(seed=seed, times=times, expectations=series, jumps=jumps,
                            states=states if keep_states else None)


def trajectory_ensemble(model: LindbladModel, psi0: QuantumState, times: Sequence[float], n_traj: int,
                        seed0: int, observables: Optional[Dict[str, Operator]] = None, threads: int = 1,
                        keep_records: bool = False) -> EnsembleResult:
    """Average n_traj trajectories seeded seed0 ... seed0 + n_traj - 1."""
    if n_traj < 1:
        raise ParameterError(f"n_traj must be >= 1, got {n_traj}")
    observables = observables or {}
    seeds = list(range(seed0, seed0 + n_traj))
    run = partial(mcwf_trajectory, model, psi0, np.asarray(times, dtype=float), observables=observables)
    if threads > 1 and n_traj > 1:
        with Pool(processes=min(threads, n_traj)) as pool:
            records = pool.map(run, seeds)
    else:
        records = [run(seed) for seed in seeds]

    mean, stderr = {}, {}
    for name in observables:
        stacked = np.real(np.array([r.expectations[name] for r in records]))
        mean[name] = stacked.mean(axis=0)
        stderr[name] = stacked.std(axis=0, ddof=1) / np.sqrt(n_traj) if n_traj > 1 else np.zeros(stacked.shape[1])
    return EnsembleResult(times=np.asarray(times, dtype=float), mean=mean, stderr=stderr, n_traj=n_traj,
                          seed0=seed0, records=records if keep_records else None)
