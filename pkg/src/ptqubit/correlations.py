"""Prepare-and-measure conditional probabilities, two-time correlators, and
the temporal-correlation figures of merit K3 and W.

All correlators are assembled from conditional probabilities p_tau(Q'|Q): the
chance of reading outcome Q' after evolving for a scaled time tau from the
eigenstate |Q> of the chosen dichotomic observable.  Measurements at the
three instants (0, T, 2T) then give

    C12 = -p_T(+|-) + p_T(-|-)
    C13 = -p_2T(+|-) + p_2T(-|-)
    C23 = p_T(+|-) p_T(+|+) - p_T(+|-) p_T(-|+)
        - p_T(-|-) p_T(+|-) + p_T(-|-) p_T(-|-)

and K3 = C12 + C23 - C13.  C13 deliberately uses a single uninterrupted
evolution of duration 2T, while C23 factorizes through the collapse at T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, RegimeError
from .pt_dynamics import PtParams, Regime, evolve_state_scaled
from .qstate import SIGMA_Y, Operator2, PureState, measure_projectors, minus_y, plus_y


@dataclass(frozen=True)
class MeasurementScenario:
    """Initial state, dichotomic observable, and the (0, T, 2T) instants.

    Defaults to the equatorial-flip configuration: start in the -1 eigenstate
    of sigma_y and measure sigma_y.  The observable must be Hermitian with
    two distinct eigenvalues; the larger one is mapped to Q = +1.
    """

    initial_state: PureState = field(default_factory=minus_y)
    observable: Operator2 = field(default_factory=lambda: np.array(SIGMA_Y))

    def __post_init__(self):
        obs = np.array(self.observable, dtype=complex).reshape(2, 2)
        obs.setflags(write=False)
        object.__setattr__(self, "observable", obs)
        p_plus, p_minus, _ = measure_projectors(obs)  # validates dichotomy
        # any nonzero column of a rank-1 projector spans its range
        plus = PureState(p_plus[:, int(np.argmax(np.abs(np.diag(p_plus))))]).normalized()
        minus = PureState(p_minus[:, int(np.argmax(np.abs(np.diag(p_minus))))]).normalized()
        object.__setattr__(self, "_eigenstates", {+1: plus, -1: minus})
        object.__setattr__(self, "initial_state", self.initial_state.normalized())

    def eigenstate(self, q: int) -> PureState:
        """Eigenstate for outcome q in {+1, -1}."""
        try:
            return self._eigenstates[q]
        except KeyError:
            raise ParameterError(f"outcome must be +1 or -1, got {q}") from None

    @staticmethod
    def times(t_interval: float) -> tuple[float, float, float]:
        return (0.0, t_interval, 2.0 * t_interval)


DEFAULT_SCENARIO = MeasurementScenario()


@dataclass(frozen=True)
class CorrelatorSet:
    """Two-time correlators and K3 = C12 + C23 - C13 at one interval T."""

    t: float
    c12: float
    c23: float
    c13: float
    k3: float


@dataclass(frozen=True)
class WitnessResult:
    """Outcome probabilities with/without the earlier measurement, and their gap."""

    p_with: float
    p_without: float
    w: float


def conditional_prob(
    q_out: int,
    q_in: int,
    tau: float,
    params: PtParams,
    scenario: MeasurementScenario | None = None,
) -> float:
    """p_tau(q_out | q_in): Born probability after evolving an eigenstate.

    tau is scaled time (tau in PTS/EP, w*t in PTB).  For each q_in the two
    outcomes are complementary to machine precision because the evolved
    state is renormalized before projection.
    """
    scenario = scenario or DEFAULT_SCENARIO
    if tau < 0.0:
        raise ParameterError(f"scaled time must be >= 0, got {tau}")
    evolved = evolve_state_scaled(scenario.eigenstate(q_in), params, tau)
    return scenario.eigenstate(q_out).fidelity(evolved)


def correlators(
    t_interval: float,
    params: PtParams,
    scenario: MeasurementScenario | None = None,
) -> CorrelatorSet:
    """Correlator set at measurement interval T (scaled units).

    The protocol window is T in [0, pi/2] below the break (one flip period;
    everything is periodic beyond it) and any T >= 0 on the hyperbolic side.
    """
    scenario = scenario or DEFAULT_SCENARIO
    if t_interval < 0.0:
        raise ParameterError(f"interval T must be >= 0, got {t_interval}")
    p_plus_from_minus = conditional_prob(+1, -1, t_interval, params, scenario)
    p_plus_from_plus = conditional_prob(+1, +1, t_interval, params, scenario)
    p_plus_double = conditional_prob(+1, -1, 2.0 * t_interval, params, scenario)

    a, b, c = p_plus_from_minus, p_plus_from_plus, p_plus_double
    c12 = -a + (1.0 - a)
    c13 = -c + (1.0 - c)
    c23 = a * b - a * (1.0 - b) - (1.0 - a) * a + (1.0 - a) * (1.0 - a)
    return CorrelatorSet(t=t_interval, c12=c12, c23=c23, c13=c13, k3=c12 + c23 - c13)


def k3_curve(
    t_grid,
    params: PtParams,
    scenario: MeasurementScenario | None = None,
) -> list[CorrelatorSet]:
    """Correlator sets along a grid of intervals."""
    return [correlators(float(t), params, scenario) for t in np.asarray(t_grid, dtype=float)]


def witness_initial_state(params: PtParams) -> PureState:
    """The witness preparation (-sqrt(j-gamma)|+>_y + sqrt(j+gamma)|->_y)/sqrt(2j).

    Chosen so that one quarter-period flips it exactly onto |+>_y for every
    gamma < j.  Requires gamma <= j; clamped at the EP where the |+>_y weight
    vanishes.
    """
    if params.regime is Regime.PTB:
        raise RegimeError(
            f"witness preparation needs gamma <= j, got gamma/j = {params.ratio}"
        )
    w_plus = -math.sqrt(max(params.j - params.gamma, 0.0))
    w_minus = math.sqrt(params.j + params.gamma)
    amps = (w_plus * plus_y().amplitudes + w_minus * minus_y().amplitudes) / math.sqrt(
        2.0 * params.j
    )
    return PureState(amps).normalized()  # defensive: analytically normalized already


def quantum_witness(params: PtParams, tau: float = math.pi / 4.0) -> WitnessResult:
    """Disturbance |p'(+) - p(+)| inflicted by a measurement at time zero.

    p_without is the probability of reading +1 after evolving the witness
    preparation for the scaled time tau; p_with averages the same readout
    over the collapse outcomes of a sigma_y measurement performed at time 0.
    """
    if tau < 0.0:
        raise ParameterError(f"scaled time must be >= 0, got {tau}")
    psi0 = witness_initial_state(params)
    evolved = evolve_state_scaled(psi0, params, tau)
    p_without = plus_y().fidelity(evolved)

    p_plus_at_zero = plus_y().fidelity(psi0)
    p_with = p_plus_at_zero * conditional_prob(+1, +1, tau, params) + (
        1.0 - p_plus_at_zero
    ) * conditional_prob(+1, -1, tau, params)
    return WitnessResult(p_with=p_with, p_without=p_without, w=abs(p_with - p_without))
