"""
Module: Time-dependent hopping phase θ(t)

Public Classes:
    ScheduleKind : Kind of phase law
    PhaseSchedule: Phase law θ(t)

Public Functions:
    phase_at             : Evaluate θ(t)
    is_commuting         : Whether Ĥ(θ(t)) commutes at all times
    jump_times           : Discontinuities of θ(t) in (0, t_end)
    reconstruction_period: Period T with BT = 2lπ
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import floor, pi
from typing import Optional

import numpy as np

from ..utils.error import InvalidScheduleError


class ScheduleKind(str, Enum):
    """
    Kind of phase law
    """

    CONSTANT = "constant"
    STEP = "step"
    FOURIER = "fourier"


@dataclass(frozen=True)
class PhaseSchedule:
    """
    Phase law θ(t)

    Angles are kept unreduced so that θ₀ + π is exact.

    Args:
        kind      (ScheduleKind): Phase law
        theta0    (float)       : Base phase θ₀
        period    (float | None): Modulation period T (step and fourier)
        harmonics (int | None)  : Number of odd harmonics M (fourier only)

    Public Attributes:
        kind      (ScheduleKind): Phase law
        theta0    (float)       : Base phase θ₀
        period    (float | None): Modulation period T
        harmonics (int | None)  : Number of odd harmonics M

    Public Methods:
        constant (classmethod): Constant phase
        step     (classmethod): Step-periodic phase
        fourier  (classmethod): Truncated square-wave series
    """

    kind: ScheduleKind
    theta0: float = 0.0
    period: Optional[float] = None
    harmonics: Optional[int] = None

    def __post_init__(self) -> None:
        try:
            kind = ScheduleKind(self.kind)
        except ValueError as err:
            raise InvalidScheduleError(f"Unknown schedule kind: {self.kind}") from err
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "theta0", float(self.theta0))

        if kind is ScheduleKind.CONSTANT:
            return

        if self.period is None or not self.period > 0 or not np.isfinite(self.period):
            raise InvalidScheduleError(
                f"A {kind.value} schedule needs a positive period, got {self.period}"
            )
        object.__setattr__(self, "period", float(self.period))

        if kind is ScheduleKind.FOURIER:
            if self.harmonics is None or int(self.harmonics) < 1:
                raise InvalidScheduleError(
                    f"A fourier schedule needs harmonics >= 1, got {self.harmonics}"
                )
            object.__setattr__(self, "harmonics", int(self.harmonics))

    @classmethod
    def constant(cls, theta0: float = 0.0) -> PhaseSchedule:
        return cls(ScheduleKind.CONSTANT, theta0)

    @classmethod
    def step(cls, theta0: float, period: float) -> PhaseSchedule:
        return cls(ScheduleKind.STEP, theta0, period)

    @classmethod
    def fourier(cls, theta0: float, period: float, harmonics: int) -> PhaseSchedule:
        return cls(ScheduleKind.FOURIER, theta0, period, harmonics)


def phase_at(schedule: PhaseSchedule, t: float) -> float:
    """
    Evaluate θ(t)

    Step: θ₀ on [0, T/2), θ₀+π on [T/2, T), repeated; a jump instant takes the
    value on its right. Fourier: θ₀ + π/2 − 2 Σ_{j=1..M} sin(2π(2j−1)t/T)/(2j−1),
    the first M odd terms of the step's series.

    Args:
        schedule (PhaseSchedule): Phase law
        t        (float)        : Time, t >= 0

    Returns:
        (float): Phase angle, unreduced
    """
    if not t >= 0:
        raise InvalidScheduleError(f"Phase requested at negative time t={t}")

    if schedule.kind is ScheduleKind.CONSTANT:
        return schedule.theta0

    period = schedule.period
    assert period is not None

    if schedule.kind is ScheduleKind.STEP:
        # Odd half periods carry the flipped phase
        if floor(2 * t / period) % 2:
            return schedule.theta0 + pi
        return schedule.theta0

    offset = t - floor(t / period) * period

    assert schedule.harmonics is not None
    odd = 2 * np.arange(1, schedule.harmonics + 1) - 1
    series = np.sum(np.sin(2 * pi * odd * offset / period) / odd)
    return schedule.theta0 + pi / 2 - 2 * float(series)


def is_commuting(schedule: PhaseSchedule) -> bool:
    """
    Whether the phase only takes values θ₀ + kπ, so that [Ĥ(t), Ĥ(t′)] = 0

    Args:
        schedule (PhaseSchedule): Phase law

    Returns:
        (bool): True for constant and step schedules
    """
    return schedule.kind is not ScheduleKind.FOURIER


def jump_times(schedule: PhaseSchedule, t_end: float) -> list[float]:
    """
    Discontinuities of θ(t) in (0, t_end)

    Args:
        schedule (PhaseSchedule): Phase law
        t_end    (float)        : End of the time window, > 0

    Returns:
        (list[float]): Ordered jump instants; multiples of T/2 for step
            schedules, empty otherwise
    """
    if schedule.kind is not ScheduleKind.STEP:
        return []

    assert schedule.period is not None
    half = schedule.period / 2
    times: list[float] = []
    k = 1
    while (time := k * half) < t_end:
        times.append(time)
        k += 1
    return times


def reconstruction_period(field: float, l: int = 1) -> float:
    """
    Period T with BT = 2lπ, under which every state is reconstructed at t = mT

    Args:
        field (float): Half-energy gap B, nonzero
        l     (int)  : Number of 2π windings of the local phase per period

    Returns:
        (float): Period T
    """
    if field == 0 or l < 1:
        raise InvalidScheduleError(f"No period satisfies BT = 2lπ for B={field}, l={l}")
    return 2 * pi * l / abs(field)
