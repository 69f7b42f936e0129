"""Gain-loss qubit generator and exact propagation in all three regimes.

The generator H = J sigma_x + i Gamma sigma_z squares to (J^2 - Gamma^2) I,
so exp(-iHt) closes in terms of a single scalar pair:

    U(t) = cos(Omega t) I - i sin(Omega t)/Omega * H         (Gamma < J)
    U(t) = I - i t H                                          (Gamma = J)
    U(t) = cosh(w t) I - i sinh(w t)/w * H,  w = sqrt(G^2-J^2) (Gamma > J)

All three are one analytic family in the signed quantity D = (J^2-G^2) t^2;
a short series bridges the neighborhood of D = 0 so the propagator stays
smooth across the symmetry-breaking point.  U is generally non-unitary for
Gamma > 0; normalized-state evolution divides the norm back out.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ParameterError, VanishingNormError
from .qstate import (
    IDENTITY2,
    NORM_FLOOR,
    SIGMA_X,
    SIGMA_Z,
    DensityMatrix,
    Operator2,
    PureState,
    bloch_from,
    fubini_study_distance,
)

#: Width of the |Gamma/J - 1| band classified as the exceptional point.
EP_THRESHOLD = 1e-9

#: Below this |Omega t| the trig/hyperbolic scalars switch to their series.
SERIES_CUTOFF = 1e-6


class Regime(str, enum.Enum):
    """Symmetry regime of the gain-loss qubit."""

    PTS = "PTS"  # unbroken: Gamma < J, real spectrum
    EP = "EP"  # exceptional point: Gamma = J, coalesced spectrum
    PTB = "PTB"  # broken: Gamma > J, complex-conjugate spectrum


@dataclass(frozen=True)
class PtParams:
    """Physical configuration: coupling rate j and balanced gain/loss rate gamma.

    All rates are naturally expressed relative to j (default 1); regime and
    characteristic frequency are derived, with an EP band of half-width
    EP_THRESHOLD on the ratio gamma/j.
    """

    j: float = 1.0
    gamma: float = 0.0

    def __post_init__(self):
        if not (self.j > 0.0):
            raise ParameterError(f"coupling rate j must be positive, got {self.j}")
        if self.gamma < 0.0:
            raise ParameterError(f"gain/loss rate gamma must be >= 0, got {self.gamma}")

    @property
    def ratio(self) -> float:
        return self.gamma / self.j

    @property
    def regime(self) -> Regime:
        r = self.ratio
        if abs(r - 1.0) <= EP_THRESHOLD:
            return Regime.EP
        return Regime.PTS if r < 1.0 else Regime.PTB

    @property
    def omega(self) -> float:
        """|sqrt(j^2 - gamma^2)|: oscillation rate (PTS) or growth rate (PTB)."""
        return math.sqrt(abs(self.j**2 - self.gamma**2))

    def time_from_scaled(self, tau: float) -> float:
        """Raw time for a scaled time: tau = Omega t (PTS), j t (EP), w t (PTB)."""
        if self.regime is Regime.EP:
            return tau / self.j
        return tau / self.omega

    def scaled_from_time(self, t: float) -> float:
        if self.regime is Regime.EP:
            return t * self.j
        return t * self.omega


@dataclass(frozen=True)
class Trajectory:
    """States, Bloch vectors, and distance-from-start along a scaled-time grid.

    times holds the scaled variable: tau for PTS/EP, w*t for PTB.
    """

    times: np.ndarray
    states: list = field(repr=False)
    bloch: list = field(repr=False)
    distance: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.times)


def hamiltonian(params: PtParams) -> Operator2:
    """The non-Hermitian generator j*sigma_x + i*gamma*sigma_z."""
    return params.j * SIGMA_X + 1j * params.gamma * SIGMA_Z


def _cos_like_and_sinc_like(d: float) -> tuple[float, float]:
    # cos(sqrt(d)) and sin(sqrt(d))/sqrt(d), continued through d <= 0 where
    # they become cosh/sinh of sqrt(-d); series near zero avoids 0/0.
    if abs(d) < SERIES_CUTOFF**2:
        return 1.0 - d / 2.0 + d * d / 24.0, 1.0 - d / 6.0 + d * d / 120.0
    if d > 0.0:
        x = math.sqrt(d)
        return math.cos(x), math.sin(x) / x
    x = math.sqrt(-d)
    return math.cosh(x), math.sinh(x) / x


def propagator(params: PtParams, t: float) -> Operator2:
    """Closed-form exp(-iHt) at raw time t >= 0; non-unitary when gamma > 0."""
    if t < 0.0:
        raise ParameterError(f"time must be >= 0, got {t}")
    d = (params.j**2 - params.gamma**2) * t * t
    c, s = _cos_like_and_sinc_like(d)
    return c * IDENTITY2 - 1j * t * s * hamiltonian(params)


def propagator_scaled(params: PtParams, tau: float) -> Operator2:
    """Propagator at scaled time (tau in PTS/EP, w*t in PTB)."""
    return propagator(params, params.time_from_scaled(tau))


def evolve_state(psi0: PureState, params: PtParams, t: float) -> PureState:
    """Propagate and renormalize a pure state over raw time t."""
    raw = propagator(params, t) @ psi0.amplitudes
    norm = float(np.linalg.norm(raw))
    if norm < NORM_FLOOR:
        raise VanishingNormError(f"propagated state annihilated (norm {norm:.3e})")
    return PureState(raw / norm)


def evolve_state_scaled(psi0: PureState, params: PtParams, tau: float) -> PureState:
    """Propagate and renormalize over scaled time (tau in PTS/EP, w*t in PTB)."""
    return evolve_state(psi0, params, params.time_from_scaled(tau))


def _normalized_flow_rhs(rho: np.ndarray, j: float, gamma: float) -> np.ndarray:
    # d(rho)/dt = -i j [sx, rho] + gamma {sz, rho} - 2 gamma rho Tr(sz rho)
    commutator = SIGMA_X @ rho - rho @ SIGMA_X
    anticommutator = SIGMA_Z @ rho + rho @ SIGMA_Z
    bias = np.trace(SIGMA_Z @ rho).real
    return -1j * j * commutator + gamma * anticommutator - 2.0 * gamma * bias * rho


def evolve_density_nonlinear(
    rho0: DensityMatrix, params: PtParams, t: float, dt: float | None = None
) -> DensityMatrix:
    """Integrate the trace-preserving nonlinear flow of the density operator.

    The cubic collective term -2 gamma rho Tr(sigma_z rho) keeps Tr(rho) = 1
    along exact solutions; a classical fourth-order fixed-step integrator is
    used, with the step shrunk (never grown) so the horizon t is hit exactly.
    Both t and dt are raw time; dt defaults to 1e-3 scaled-time units.  No
    per-step renormalization is applied, so trace drift is a direct measure
    of integration error.
    """
    if dt is None:
        dt = params.time_from_scaled(1e-3)
    if dt <= 0.0:
        raise ParameterError(f"step dt must be positive, got {dt}")
    if t < 0.0:
        raise ParameterError(f"horizon t must be >= 0, got {t}")
    rho = np.array(rho0.matrix, dtype=complex)
    if t == 0.0:
        return DensityMatrix(rho)
    steps = max(1, math.ceil(t / dt))
    h = t / steps
    j, gamma = params.j, params.gamma
    for _ in range(steps):
        k1 = _normalized_flow_rhs(rho, j, gamma)
        k2 = _normalized_flow_rhs(rho + 0.5 * h * k1, j, gamma)
        k3 = _normalized_flow_rhs(rho + 0.5 * h * k2, j, gamma)
        k4 = _normalized_flow_rhs(rho + h * k3, j, gamma)
        rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return DensityMatrix(rho)


def trajectory(psi0: PureState, params: PtParams, t_grid: Sequence[float]) -> Trajectory:
    """Evolve psi0 along a scaled-time grid, recording Bloch vectors and distance.

    The grid must be strictly increasing and start at 0, so distance[0] = 0.
    """
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ParameterError("time grid must be a non-empty 1-d sequence")
    if grid[0] != 0.0:
        raise ParameterError(f"time grid must start at 0, got {grid[0]}")
    if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
        raise ParameterError("time grid must be strictly increasing")
    start = psi0.normalized()
    states = [evolve_state_scaled(start, params, tau) for tau in grid]
    bloch = [bloch_from(psi) for psi in states]
    distance = np.array([fubini_study_distance(start, psi) for psi in states])
    return Trajectory(times=grid, states=states, bloch=bloch, distance=distance)


def speed_profile(traj: Trajectory) -> np.ndarray:
    """Evolution speed ds/dtau by central differences, one-sided at the ends."""
    if len(traj) < 2:
        raise ParameterError("speed profile needs at least 2 trajectory points")
    return np.gradient(traj.distance, traj.times, edge_order=1)
