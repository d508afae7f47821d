from math import pi

import numpy as np
import pytest

from src.model.schedule import (
    PhaseSchedule,
    is_commuting,
    jump_times,
    phase_at,
    reconstruction_period,
)
from src.utils.error import InvalidScheduleError

THETA0 = pi / 2
PERIOD = pi


@pytest.mark.parametrize(
    "t,expected",
    [
        (0.0, THETA0),
        (0.25 * PERIOD, THETA0),
        (0.5 * PERIOD, THETA0 + pi),
        (0.75 * PERIOD, THETA0 + pi),
        (PERIOD, THETA0),
        (7.6 * PERIOD, THETA0 + pi),
    ],
)
def test_step_phase(t, expected):
    assert phase_at(PhaseSchedule.step(THETA0, PERIOD), t) == pytest.approx(expected)


def test_constant_phase():
    schedule = PhaseSchedule.constant(0.3)
    assert phase_at(schedule, 0.0) == phase_at(schedule, 123.4) == 0.3


@pytest.mark.parametrize("fraction,offset", [(0.25, 0.0), (0.75, pi), (0.1, 0.0), (0.6, pi)])
def test_fourier_approaches_step_away_from_jumps(fraction, offset):
    schedule = PhaseSchedule.fourier(THETA0, PERIOD, 1000)
    assert phase_at(schedule, fraction * PERIOD) == pytest.approx(THETA0 + offset, abs=1e-2)


def test_fourier_takes_midpoint_at_jumps():
    schedule = PhaseSchedule.fourier(THETA0, PERIOD, 5)
    assert phase_at(schedule, 0.0) == pytest.approx(THETA0 + pi / 2)
    assert phase_at(schedule, PERIOD / 2) == pytest.approx(THETA0 + pi / 2)


def test_negative_time_rejected():
    with pytest.raises(InvalidScheduleError):
        phase_at(PhaseSchedule.step(THETA0, PERIOD), -1e-3)


def test_commuting_kinds():
    assert is_commuting(PhaseSchedule.constant())
    assert is_commuting(PhaseSchedule.step(THETA0, PERIOD))
    assert not is_commuting(PhaseSchedule.fourier(THETA0, PERIOD, 3))


def test_jump_times():
    assert jump_times(PhaseSchedule.step(0.0, 2.0), 4.0) == [1.0, 2.0, 3.0]
    assert jump_times(PhaseSchedule.step(0.0, 2.0), 4.5) == [1.0, 2.0, 3.0, 4.0]
    assert jump_times(PhaseSchedule.constant(), 10.0) == []


@pytest.mark.parametrize(
    "kind,period,harmonics",
    [
        ("step", None, None),
        ("step", 0.0, None),
        ("step", -1.0, None),
        ("fourier", 1.0, 0),
        ("fourier", 1.0, None),
        ("sawtooth", 1.0, None),
    ],
)
def test_invalid_schedules(kind, period, harmonics):
    with pytest.raises(InvalidScheduleError):
        PhaseSchedule(kind, 0.0, period, harmonics)


PHASE_LAWS = [PhaseSchedule.step(THETA0, PERIOD), PhaseSchedule.fourier(THETA0, PERIOD, 13)]


@pytest.mark.parametrize("schedule", PHASE_LAWS)
def test_phase_mean_over_a_period(schedule):
    n = 4096
    times = (np.arange(n) + 0.5) / n * PERIOD
    mean = np.mean([phase_at(schedule, t) for t in times])
    assert mean == pytest.approx(THETA0 + pi / 2, abs=1e-12)


def test_step_phase_repeats_exactly():
    schedule = PhaseSchedule.step(THETA0, PERIOD)
    times = np.random.default_rng(3).uniform(0, 4 * PERIOD, 2000)
    fraction = (2 * times / PERIOD) % 1
    times = times[(fraction > 1e-6) & (fraction < 1 - 1e-6)]
    for t in times:
        for k in (1, 2, 5):
            assert phase_at(schedule, t + k * PERIOD) == phase_at(schedule, t)


def test_fourier_phase_repeats():
    schedule = PhaseSchedule.fourier(THETA0, PERIOD, 25)
    for t in np.random.default_rng(4).uniform(0, 3 * PERIOD, 500):
        for k in (1, 7):
            assert phase_at(schedule, t + k * PERIOD) == pytest.approx(
                phase_at(schedule, t), abs=1e-9
            )


def test_reconstruction_period():
    assert reconstruction_period(100.0) * 100.0 == pytest.approx(2 * pi)
    assert reconstruction_period(-4.0, 3) == pytest.approx(1.5 * pi)
    with pytest.raises(InvalidScheduleError):
        reconstruction_period(0.0)
