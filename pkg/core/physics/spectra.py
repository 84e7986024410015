# core/physics/spectra.py
"""
Exact-diagonalization sweeps and avoided-crossing location.
"""
import warnings
from dataclasses import replace
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import minimize_scalar

from config.settings import settings
from core.models.hilbert import HilbertSpace, Operator
from core.models.results import CrossingReport, SpectrumSweep
from core.services.error_manager import ParameterError, SimulationWarning, TrackingError

Builder = Callable[[object, HilbertSpace], Operator]

MIN_RESOLUTION = 3


def _diagonalize(builder: Builder, params, space: HilbertSpace, parameter: str, value: float):
    op = builder(replace(params, **{parameter: float(value)}), space)
    if not op.is_hermitian():
        raise ParameterError(f"{getattr(builder, '__name__', builder)} returned a non-Hermitian operator "
                             f"at {parameter}={value}")
    return eigh(op.matrix)


def sweep(builder: Builder, params, space: HilbertSpace, grid: Sequence[float], parameter: str = "Omega",
          levels: Optional[Tuple[int, int]] = None, keep_vectors: bool = False) -> SpectrumSweep:
    """
    Sorted eigenvalues of builder(params with `parameter` set to each grid value).

    Args:
        levels: optional (start, stop) slice of the sorted levels to keep
        keep_vectors: also store eigenvectors (needed for crossing tracking)
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < MIN_RESOLUTION:
        raise ParameterError(f"sweep needs at least {MIN_RESOLUTION} grid points, got {grid.size}")
    if not hasattr(params, parameter):
        raise ParameterError(f"{type(params).__name__} has no parameter '{parameter}'")

    start, stop = levels if levels is not None else (0, space.dim)
    values, vectors = [], []
    for x in grid:
        energies, vecs = _diagonalize(builder, params, space, parameter, x)
        values.append(energies[start:stop])
        if keep_vectors:
            vectors.append(vecs[:, start:stop])

    fixed = params.to_dict()
    fixed.pop(parameter, None)
    return SpectrumSweep(
        parameter=parameter,
        grid=grid,
        eigenvalues=np.array(values),
        builder=getattr(builder, "__name__", str(builder)),
        fixed_params=fixed,
        eigenvectors=np.array(vectors) if keep_vectors else None,
    )


def _label_pair(vectors: np.ndarray, pair: Tuple[int, int]) -> Tuple[int, int]:
    """Eigenvector columns with maximal overlap with the two bare basis states."""
    weights_a = np.abs(vectors[pair[0], :]) ** 2
    first = int(np.argmax(weights_a))
    weights_b = np.abs(vectors[pair[1], :]) ** 2
    weights_b[first] = -1.0
    second = int(np.argmax(weights_b))
    if min(weights_a[first], weights_b[second]) < settings.TRACKING_MIN_OVERLAP:
        raise TrackingError(f"bare states {pair} not identifiable at the window edge "
                            f"(overlaps {weights_a[first]:.3f}, {weights_b[second]:.3f})")
    return first, second


def _follow(subspace: np.ndarray, vectors: np.ndarray, where: float) -> Tuple[int, int]:
    """Two eigenvectors with the largest weight in the previous tracked two-level subspace."""
    weights = np.sum(np.abs(subspace.conj().T @ vectors) ** 2, axis=0)
    order = np.argsort(weights)[::-1]
    first, second = int(order[0]), int(order[1])
    if weights[second] < settings.TRACKING_MIN_OVERLAP:
        raise TrackingError(f"tracked pair lost at {where:.6g} (overlap {weights[second]:.3f})")
    return first, second


def _predicted(n: int, params, parameter: str) -> float:
    if parameter == "Omega" and hasattr(params, "Delta_a"):
        return n * params.Delta_a / 2.0
    if parameter == "delta" and hasattr(params, "omega_r"):
        return n * params.omega_r
    return float("nan")


def find_crossing(builder: Builder, params, space: HilbertSpace, n: int, parameter: str = "Omega",
                  window: Optional[Tuple[float, float]] = None, resolution: int = 81,
                  pair: Optional[Tuple[int, int]] = None,
                  labels: Tuple[str, str] = ("+,0", "-,n")) -> CrossingReport:
    """
    Locate the avoided crossing between the levels adiabatically connected to
    two bare basis states (default |+,0> and |-,n>).

    Levels are labelled by bare-state overlap at the window start and then
    followed by projection onto the previous point's tracked subspace, so
    eigenvalue ordering never matters. The coarse minimum is refined by
    golden-section search.
    """
    if n < 1:
        raise ParameterError(f"phonon order n must be >= 1, got {n}")
    if pair is None:
        pair = (space.index(0, 0), space.index(1, n))
    predicted = _predicted(n, params, parameter)
    if window is None:
        if parameter != "Omega":
            raise ParameterError(f"a window is required when sweeping '{parameter}'")
        quarter = params.Delta_a / 4.0
        window = (predicted - quarter, predicted + quarter)
    grid = np.linspace(window[0], window[1], max(resolution, MIN_RESOLUTION))

    gaps = np.empty(grid.size)
    subspaces = []
    tracked = None
    for i, x in enumerate(grid):
        energies, vectors = _diagonalize(builder, params, space, parameter, x)
        if tracked is None:
            first, second = _label_pair(vectors, pair)
        else:
            first, second = _follow(tracked, vectors, x)
        tracked = vectors[:, [first, second]]
        subspaces.append(tracked)
        gaps[i] = abs(energies[first] - energies[second])

    j = int(np.argmin(gaps))
    if j == 0 or j == grid.size - 1:
        raise TrackingError(f"gap minimum at the window edge {parameter}={grid[j]:.6g}; widen the window",
                            window=list(window))

    reference = subspaces[j]

    def tracked_gap(x: float) -> float:
        energies, vectors = _diagonalize(builder, params, space, parameter, x)
        first, second = _follow(reference, vectors, x)
        return float(abs(energies[first] - energies[second]))

    x_star, gap = float(grid[j]), float(gaps[j])
    try:
        result = minimize_scalar(tracked_gap, bracket=(grid[j - 1], grid[j], grid[j + 1]), method="golden",
                                 tol=settings.CROSSING_XTOL * 1e-2)
        if result.fun <= gap:
            x_star, gap = float(result.x), float(result.fun)
    except (ValueError, RuntimeError) as exc:
        warnings.warn(f"crossing refinement near {parameter}={x_star:.6g} failed ({exc}); keeping the grid minimum",
                      SimulationWarning, stacklevel=2)

    return CrossingReport(
        n=n,
        Omega_star=x_star,
        gap=gap,
        predicted_Omega=predicted,
        parameter=parameter,
        tracked_pair=labels,
    )


def gap_at(builder: Builder, params, space: HilbertSpace, pair: Tuple[int, int]) -> float:
    """Splitting of the two levels with maximal overlap on a bare pair at one parameter point."""
    op = builder(params, space)
    energies, vectors = eigh(op.matrix)
    first, second = _label_pair(vectors, pair)
    return float(abs(energies[first] - energies[second]))
