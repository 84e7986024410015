# core/models/hilbert.py
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np
from scipy import sparse

from config.settings import settings
from core.services.error_manager import DimensionMismatchError, ParameterError


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class HilbertSpace:
    """Truncated spin ⊗ Fock product space, spin factor first."""
    spin_dim: int
    fock_cutoff: int

    def __post_init__(self):
        if self.spin_dim not in (1, 2, 3):
            raise ParameterError(f"spin_dim must be 1, 2 or 3, got {self.spin_dim}")
        if self.fock_cutoff < 2:
            raise ParameterError(f"fock_cutoff must be >= 2, got {self.fock_cutoff}")

    @property
    def dim(self) -> int:
        return self.spin_dim * self.fock_cutoff

    def index(self, spin: int, n: int) -> int:
        """Flat index of |spin, n⟩."""
        if not (0 <= spin < self.spin_dim and 0 <= n < self.fock_cutoff):
            raise DimensionMismatchError(f"|{spin},{n}⟩ outside space {self}")
        return spin * self.fock_cutoff + n

    def basis_vector(self, spin: int, n: int) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=complex)
        vec[self.index(spin, n)] = 1.0
        return vec

    def with_cutoff(self, fock_cutoff: int) -> "HilbertSpace":
        return replace(self, fock_cutoff=fock_cutoff)


@dataclass(frozen=True, eq=False)
class Operator:
    """Immutable complex matrix acting on a HilbertSpace."""
    space: HilbertSpace
    matrix: np.ndarray
    hermitian_flag: Optional[bool] = None

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        matrix = _frozen(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"operator matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] != self.space.dim:
            raise DimensionMismatchError(
                f"operator of size {matrix.shape[0]} does not act on space of dimension {self.space.dim}")
        object.__setattr__(self, "matrix", matrix)
        if self.hermitian_flag and not self.is_hermitian():
            deviation = np.max(np.abs(matrix - matrix.conj().T))
            raise ParameterError(f"operator flagged Hermitian deviates by {deviation:.3e}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def _check_space(self, other: "Operator"):
        if other.space != self.space:
            raise DimensionMismatchError(f"operator spaces differ: {self.space} vs {other.space}")

    def is_hermitian(self, atol: float = settings.HERMITIAN_ATOL) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0) < atol)

    def dag(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, self.hermitian_flag)

    def __matmul__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        return Operator(self.space, self.matrix @ other.matrix)

    def __add__(self, other: "Operator") -> "Operator":
        self._check_space(other)
        flag = True if (self.hermitian_flag and other.hermitian_flag) else None
        return Operator(self.space, self.matrix + other.matrix, flag)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-1.0) * other

    def __neg__(self) -> "Operator":
        return (-1.0) * self

    def __mul__(self, scalar: Union[int, float, complex]) -> "Operator":
        flag = self.hermitian_flag if np.isreal(scalar) else None
        return Operator(self.space, scalar * self.matrix, flag)

    __rmul__ = __mul__

    def power(self, k: int) -> "Operator":
        return Operator(self.space, np.linalg.matrix_power(self.matrix, k))

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def expect(self, state: "QuantumState") -> complex:
        if state.space != self.space:
            raise DimensionMismatchError(f"state space {state.space} differs from operator space {self.space}")
        if state.is_pure:
            return complex(np.vdot(state.vector, self.matrix @ state.vector))
        return complex(np.trace(self.matrix @ state.density))

    def as_sparse(self) -> sparse.csr_matrix:
        return sparse.csr_matrix(self.matrix)

    def as_linear(self):
        """Dense array or CSR matrix, whichever suits the dimension."""
        if self.dim > settings.SPARSE_DIM_THRESHOLD:
            return self.as_sparse()
        return self.matrix


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Pure state vector or density matrix on a HilbertSpace."""
    space: HilbertSpace
    vector: Optional[np.ndarray] = None
    density: Optional[np.ndarray] = None
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if (self.vector is None) == (self.density is None):
            raise ParameterError("QuantumState needs exactly one of vector or density")
        if self.vector is not None:
            vector = _frozen(self.vector).reshape(-1)
            if vector.shape[0] != self.space.dim:
                raise DimensionMismatchError(
                    f"state vector of length {vector.shape[0]} does not match dimension {self.space.dim}")
            object.__setattr__(self, "vector", vector)
            if self.validate:
                norm = np.linalg.norm(vector)
                if abs(norm - 1.0) > settings.NORM_ATOL:
                    raise ParameterError(f"pure state norm {norm:.12f} differs from 1")
        else:
            density = _frozen(self.density)
            if density.shape != (self.space.dim, self.space.dim):
                raise DimensionMismatchError(
                    f"density matrix of shape {density.shape} does not match dimension {self.space.dim}")
            object.__setattr__(self, "density", density)
            if self.validate:
                self._check_density(density)

    @staticmethod
    def _check_density(density: np.ndarray):
        if np.max(np.abs(density - density.conj().T)) > settings.NORM_ATOL:
            raise ParameterError("density matrix is not Hermitian")
        trace = np.trace(density).real
        if abs(trace - 1.0) > settings.NORM_ATOL:
            raise ParameterError(f"density matrix trace {trace:.12f} differs from 1")
        min_eig = np.linalg.eigvalsh(density).min()
        if min_eig < -settings.NORM_ATOL:
            raise ParameterError(f"density matrix has negative eigenvalue {min_eig:.3e}")

    @classmethod
    def pure(cls, vector: np.ndarray, space: HilbertSpace, normalize: bool = False) -> "QuantumState":
        vector = np.asarray(vector, dtype=complex)
        if normalize:
            vector = vector / np.linalg.norm(vector)
        return cls(space=space, vector=vector)

    @classmethod
    def mixed(cls, density: np.ndarray, space: HilbertSpace, validate: bool = True) -> "QuantumState":
        return cls(space=space, density=density, validate=validate)

    @property
    def is_pure(self) -> bool:
        return self.vector is not None

    def to_density(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.vector, self.vector.conj())
        return np.array(self.density)

    def as_mixed(self) -> "QuantumState":
        if not self.is_pure:
            return self
        return QuantumState(space=self.space, density=self.to_density(), validate=False)

    def purity(self) -> float:
        if self.is_pure:
            return 1.0
        return float(np.real(np.trace(self.density @ self.density)))
