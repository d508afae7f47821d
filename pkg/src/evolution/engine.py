"""
Module: Time evolution under a register and a phase schedule

Public Classes:
    Integrator    : Integrator identifier
    TrajectoryMeta: Provenance of a trajectory
    Trajectory    : States sampled on a time grid

Public Functions:
    evolve_piecewise: Exact evolution for commuting (piecewise-constant) schedules
    evolve_stepped  : Midpoint propagator product for any schedule
    evolve          : Exact path when possible, stepped otherwise
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .. import config
from ..model.ring import RingSpec
from ..model.schedule import (
    PhaseSchedule,
    ScheduleKind,
    is_commuting,
    jump_times,
    phase_at,
)
from ..model.state import Basis, QuantumState
from ..utils.error import (
    BasisMismatchError,
    DimensionMismatchError,
    NonCommutingScheduleError,
    StepSizeError,
)
from .propagator import Spectrum, diagonalize, hamiltonian_for, hamiltonian_spectrum


class Integrator(str, Enum):
    """
    Integrator identifier
    """

    EXACT = "exact"
    MIDPOINT = "midpoint"


@dataclass(frozen=True)
class TrajectoryMeta:
    """
    Provenance of a trajectory

    Args:
        spec       (RingSpec)     : Register
        schedule   (PhaseSchedule): Phase law
        integrator (Integrator)   : Integrator used
        dt         (float | None) : Step size of the stepped integrator
        max_snap   (float)        : Largest distance between a requested sample
            time and the step grid point it was snapped to
    """

    spec: RingSpec
    schedule: PhaseSchedule
    integrator: Integrator
    dt: Optional[float] = None
    max_snap: float = 0.0


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    States sampled on a time grid

    Args:
        times  (NDArray[np.float64])   : Strictly increasing, starting at 0
        states (tuple[QuantumState,...]): One state per time, same basis
        meta   (TrajectoryMeta)        : Provenance

    Public Attributes:
        times  (NDArray[np.float64])    : Sample times
        states (tuple[QuantumState,...]): Sampled states
        meta   (TrajectoryMeta)         : Provenance
        basis  (readonly Basis)         : Basis shared by every state
        final  (readonly QuantumState)  : Last state
    """

    times: NDArray[np.float64]
    states: tuple[QuantumState, ...]
    meta: TrajectoryMeta

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=np.float64)
        if times.ndim != 1 or len(times) != len(self.states) or len(times) == 0:
            raise DimensionMismatchError(
                f"{len(times)} times for {len(self.states)} states"
            )
        if times[0] != 0 or np.any(np.diff(times) <= 0):
            raise StepSizeError("Trajectory times must start at 0 and increase")
        if any(state.basis != self.states[0].basis for state in self.states):
            raise BasisMismatchError("Trajectory states live in different bases")
        times.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def basis(self) -> Basis:
        return self.states[0].basis

    @property
    def final(self) -> QuantumState:
        return self.states[-1]


def _sample_grid(sample_times: Sequence[float]) -> NDArray[np.float64]:
    """
    Validate sample times, prepending t = 0 when absent
    """
    times = np.asarray(sample_times, dtype=np.float64).ravel()
    if times.size == 0:
        return np.zeros(1)
    if not np.all(np.isfinite(times)) or times[0] < 0 or np.any(np.diff(times) <= 0):
        raise StepSizeError("Sample times must be finite, nonnegative and increasing")
    if times[0] > 0:
        times = np.concatenate(([0.0], times))
    return times


def _check_register(initial: QuantumState, spec: RingSpec) -> None:
    if initial.basis.n_sites != spec.n_sites:
        raise DimensionMismatchError(
            f"State of N={initial.basis.n_sites} for a register of N={spec.n_sites}"
        )


def evolve_piecewise(
    initial: QuantumState,
    spec: RingSpec,
    schedule: PhaseSchedule,
    sample_times: Sequence[float],
) -> Trajectory:
    """
    Exact evolution, splitting time at the schedule's jumps and applying one
        spectral propagator per constant-phase interval

    Args:
        initial      (QuantumState)   : State at t = 0
        spec         (RingSpec)       : Register
        schedule     (PhaseSchedule)  : Constant or step phase law
        sample_times (Sequence[float]): Increasing, nonnegative times

    Returns:
        (Trajectory): States at the sample times

    Raises:
        NonCommutingScheduleError: The schedule is not piecewise constant
    """
    if not is_commuting(schedule):
        raise NonCommutingScheduleError(
            f"Exact evolution needs a commuting schedule, got {schedule.kind.value}"
        )
    _check_register(initial, spec)
    times = _sample_grid(sample_times)
    basis = initial.basis

    boundaries = sorted(set(jump_times(schedule, float(times[-1]))) | set(times.tolist()))
    amplitudes = initial.amplitudes
    states = [initial]
    sample_index = 1
    t_prev = boundaries[0]

    for t_next in boundaries[1:]:
        # Boundaries never sit inside an interval, so the midpoint phase holds
        # throughout
        theta = phase_at(schedule, 0.5 * (t_prev + t_next))
        spectrum = hamiltonian_spectrum(spec, basis, theta)
        amplitudes = spectrum.apply(amplitudes, t_next - t_prev)
        if sample_index < len(times) and t_next == times[sample_index]:
            states.append(QuantumState(basis, amplitudes))
            sample_index += 1
        t_prev = t_next

    return Trajectory(times, tuple(states), TrajectoryMeta(spec, schedule, Integrator.EXACT))


def _steps_per_period(schedule: PhaseSchedule, dt: float) -> Optional[int]:
    """
    Number of steps in one period, if the step grid tiles the period
    """
    if schedule.period is None:
        return None
    ratio = schedule.period / dt
    steps = round(ratio)
    if abs(ratio - steps) > 1e-9 * ratio:
        return None
    return steps


class _MidpointStepper:
    """
    Applies exp(−iĤ(θ(t + dt/2))dt) step after step

    When the grid tiles the period, the phase at step k only depends on
    k mod (T/dt); whole periods are then applied as one precomputed unitary.
    """

    def __init__(
        self, spec: RingSpec, basis: Basis, schedule: PhaseSchedule, dt: float
    ) -> None:
        self._spec = spec
        self._basis = basis
        self._schedule = schedule
        self._dt = dt
        self._steps_per_period = _steps_per_period(schedule, dt)
        self._period_unitary: Optional[NDArray[np.complex128]] = None

    def _step_spectrum(self, step: int) -> Spectrum:
        if self._steps_per_period is not None:
            step %= self._steps_per_period
        theta = phase_at(self._schedule, (step + 0.5) * self._dt)
        if self._schedule.kind is ScheduleKind.FOURIER:
            # Every step has its own phase; keep them out of the shared cache
            return diagonalize(hamiltonian_for(self._spec, self._basis, theta))
        return hamiltonian_spectrum(self._spec, self._basis, theta)

    def _one_period(self) -> NDArray[np.complex128]:
        if self._period_unitary is None:
            assert self._steps_per_period is not None
            unitary = np.eye(self._basis.dim, dtype=np.complex128)
            for step in range(self._steps_per_period):
                unitary = self._step_spectrum(step).unitary(self._dt) @ unitary
            self._period_unitary = unitary
        return self._period_unitary

    def advance(
        self, amplitudes: NDArray[np.complex128], current: int, target: int
    ) -> NDArray[np.complex128]:
        """
        Propagate from step index `current` to step index `target`
        """
        per_period = self._steps_per_period
        while current < target:
            if per_period is not None and current % per_period == 0:
                periods = (target - current) // per_period
                if periods:
                    unitary = self._one_period()
                    for _ in range(periods):
                        amplitudes = unitary @ amplitudes
                    current += periods * per_period
                    continue
            amplitudes = self._step_spectrum(current).apply(amplitudes, self._dt)
            current += 1
        return amplitudes


def evolve_stepped(
    initial: QuantumState,
    spec: RingSpec,
    schedule: PhaseSchedule,
    dt: float,
    sample_times: Sequence[float],
) -> Trajectory:
    """
    Time-ordered evolution by the exponential midpoint rule; second order in dt

    Sample times are snapped to the nearest multiple of dt; the trajectory
    records the snapped times and `meta.max_snap` the largest snap distance.

    Args:
        initial      (QuantumState)   : State at t = 0
        spec         (RingSpec)       : Register
        schedule     (PhaseSchedule)  : Any phase law
        dt           (float)          : Step size, at most T/64
        sample_times (Sequence[float]): Increasing, nonnegative times

    Returns:
        (Trajectory): States at the snapped sample times

    Raises:
        StepSizeError: dt not positive, too coarse for the period, or two
            sample times snapped onto the same step
    """
    if not dt > 0 or not np.isfinite(dt):
        raise StepSizeError(f"Step size must be positive, got dt={dt}")
    if schedule.period is not None:
        limit = schedule.period / config.MIN_STEPS_PER_PERIOD
        if dt > limit:
            raise StepSizeError(
                f"dt={dt} exceeds T/{config.MIN_STEPS_PER_PERIOD}={limit}"
            )
    _check_register(initial, spec)
    times = _sample_grid(sample_times)
    steps = np.rint(times / dt).astype(np.int64)
    if np.any(np.diff(steps) <= 0):
        raise StepSizeError(f"Sample times closer than dt={dt} snap onto one step")
    snapped = steps * dt
    max_snap = float(np.max(np.abs(snapped - times)))

    basis = initial.basis
    stepper = _MidpointStepper(spec, basis, schedule, dt)
    amplitudes = initial.amplitudes
    states = [initial]
    current = 0

    for target in steps[1:]:
        amplitudes = stepper.advance(amplitudes, current, int(target))
        current = int(target)
        states.append(QuantumState(basis, amplitudes))

    meta = TrajectoryMeta(spec, schedule, Integrator.MIDPOINT, dt, max_snap)
    return Trajectory(snapped, tuple(states), meta)


def evolve(
    initial: QuantumState,
    spec: RingSpec,
    schedule: PhaseSchedule,
    sample_times: Sequence[float],
    steps_per_period: int = config.STEPS_PER_PERIOD,
) -> Trajectory:
    """
    Exact path for commuting schedules, midpoint rule with dt = T/steps otherwise

    Args:
        initial          (QuantumState)   : State at t = 0
        spec             (RingSpec)       : Register
        schedule         (PhaseSchedule)  : Phase law
        sample_times     (Sequence[float]): Increasing, nonnegative times
        steps_per_period (int)            : Stepped-integrator resolution

    Returns:
        (Trajectory): States at the sample times
    """
    if is_commuting(schedule):
        return evolve_piecewise(initial, spec, schedule, sample_times)
    assert schedule.period is not None
    return evolve_stepped(
        initial, spec, schedule, schedule.period / steps_per_period, sample_times
    )
