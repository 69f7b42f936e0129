"""Two- and four-level state primitives, Pauli algebra, and Bloch geometry.

Basis ordering is fixed as (|1>, |2>) = (gain level, loss level) everywhere;
the sign conventions of the gain/loss generator depend on it.  States are
compared only through fidelity |<a|b>|^2, never componentwise, since every
observable quantity in scope is insensitive to a global phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DegenerateSpectrumError, NormalizationError, VanishingNormError

# Algebraic identities (unitarity, projector algebra) hold to closed-form
# double precision; normalized-input checks get a looser gate.
ATOL_ALGEBRA = 1e-12
ATOL_NORM = 1e-9

# Renormalization floor: below this norm a state counts as annihilated.
NORM_FLOOR = 1e-14


def _readonly(matrix) -> np.ndarray:
    out = np.array(matrix, dtype=complex)
    out.setflags(write=False)
    return out


IDENTITY2 = _readonly([[1, 0], [0, 1]])
SIGMA_X = _readonly([[0, 1], [1, 0]])
SIGMA_Y = _readonly([[0, -1j], [1j, 0]])
SIGMA_Z = _readonly([[1, 0], [0, -1]])

#: A 2x2 complex matrix acting as gate, observable, or generator.
Operator2 = np.ndarray


class BlochVector(NamedTuple):
    """Real Pauli expectation values (x, y, z) of a qubit state."""

    x: float
    y: float
    z: float

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


@dataclass(frozen=True)
class PureState:
    """A two-level probability-amplitude pair on the basis (|1>, |2>)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(2)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "PureState":
        """Return the unit-norm state along this ray.

        Raises VanishingNormError when the norm sits below the floor, which
        signals an annihilated state rather than a recoverable rounding issue.
        """
        n = self.norm
        if n < NORM_FLOOR:
            raise VanishingNormError(f"cannot normalize state with norm {n:.3e}")
        return PureState(self.amplitudes / n)

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "PureState") -> float:
        """Phase-insensitive overlap |<self|other>|^2."""
        return float(abs(self.overlap(other)) ** 2)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """A 2x2 density operator."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex).reshape(2, 2)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def from_pure(cls, psi: PureState) -> "DensityMatrix":
        return psi.density()

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def basis_state(index: int) -> PureState:
    """|1> for index 0 (gain level), |2> for index 1 (loss level)."""
    amps = np.zeros(2, dtype=complex)
    amps[index] = 1.0
    return PureState(amps)


def plus_y() -> PureState:
    """(|1> + i|2>)/sqrt(2), the +1 eigenstate of sigma_y."""
    return PureState(np.array([1.0, 1.0j]) / np.sqrt(2.0))


def minus_y() -> PureState:
    """(|1> - i|2>)/sqrt(2), the -1 eigenstate of sigma_y."""
    return PureState(np.array([1.0, -1.0j]) / np.sqrt(2.0))


def is_hermitian(op: Operator2, atol: float = ATOL_ALGEBRA) -> bool:
    return bool(np.allclose(op, np.asarray(op).conj().T, rtol=0.0, atol=atol))


def is_unitary(op: Operator2, atol: float = ATOL_ALGEBRA) -> bool:
    op = np.asarray(op)
    return bool(np.allclose(op.conj().T @ op, np.eye(op.shape[0]), rtol=0.0, atol=atol))


def bloch_from(state: Union[PureState, DensityMatrix]) -> BlochVector:
    """Pauli expectation values of a normalized pure state or density matrix.

    Raises NormalizationError when the input norm (or trace) deviates from 1
    by more than 1e-9.
    """
    if isinstance(state, PureState):
        if abs(state.norm - 1.0) > ATOL_NORM:
            raise NormalizationError(f"state norm {state.norm} is not 1 within {ATOL_NORM}")
        rho = state.density().matrix
    else:
        if abs(state.trace - 1.0) > ATOL_NORM:
            raise NormalizationError(f"trace {state.trace} is not 1 within {ATOL_NORM}")
        rho = state.matrix
    return BlochVector(
        x=float(np.trace(rho @ SIGMA_X).real),
        y=float(np.trace(rho @ SIGMA_Y).real),
        z=float(np.trace(rho @ SIGMA_Z).real),
    )


def fubini_study_distance(a: PureState, b: PureState) -> float:
    """Distance s = arccos|<a|b>| in radians, in [0, pi/2].

    Geometrically half the geodesic angle between the two points on the
    Bloch sphere.  Symmetric and invariant under global phases; inputs are
    rescaled by their norms so near-normalized states are handled exactly.
    """
    na, nb = a.norm, b.norm
    if na < NORM_FLOOR or nb < NORM_FLOOR:
        raise VanishingNormError("cannot measure distance from a vanishing state")
    overlap = abs(a.overlap(b)) / (na * nb)
    return float(np.arccos(min(overlap, 1.0)))


def rotation(theta: float, phi: float) -> Operator2:
    """Equatorial rotation exp(-i theta (cos(phi) sigma_x + sin(phi) sigma_y)/2).

    The generator squares to the identity, so the exponential closes as
    cos(theta/2) I - i sin(theta/2) (cos(phi) sigma_x + sin(phi) sigma_y).
    """
    axis = np.cos(phi) * SIGMA_X + np.sin(phi) * SIGMA_Y
    return np.cos(theta / 2.0) * IDENTITY2 - 1j * np.sin(theta / 2.0) * axis


def measure_projectors(observable: Operator2):
    """Spectral projectors of a dichotomic Hermitian observable.

    Returns (projector_plus, projector_minus, eigenvalues) with eigenvalues in
    descending order, so the first projector belongs to the outcome mapped to
    Q = +1.  Raises DegenerateSpectrumError when the two eigenvalues coincide
    within tolerance.
    """
    obs = np.asarray(observable, dtype=complex)
    if not is_hermitian(obs):
        raise DegenerateSpectrumError("observable must be Hermitian")
    evals, evecs = np.linalg.eigh(obs)  # ascending order
    if abs(evals[1] - evals[0]) <= ATOL_ALGEBRA * max(1.0, abs(evals[1]), abs(evals[0])):
        raise DegenerateSpectrumError(
            f"observable spectrum {evals} is degenerate; no dichotomic outcomes"
        )
    plus_vec = evecs[:, 1]
    minus_vec = evecs[:, 0]
    projector_plus = np.outer(plus_vec, plus_vec.conj())
    projector_minus = np.outer(minus_vec, minus_vec.conj())
    return projector_plus, projector_minus, (float(evals[1]), float(evals[0]))
