from math import pi

import numpy as np
import pytest

from src.evolution.engine import (
    Integrator,
    Trajectory,
    TrajectoryMeta,
    evolve,
    evolve_piecewise,
    evolve_stepped,
)
from src.metrics.fidelity import fidelity, fidelity_series, spatial_spread
from src.model.ring import RingSpec
from src.model.schedule import PhaseSchedule, reconstruction_period
from src.model.state import (
    Basis,
    QuantumState,
    basis_state,
    magnetization_decompose,
    magnon_state,
    random_state,
)
from src.utils.error import (
    BasisMismatchError,
    DimensionMismatchError,
    NonCommutingScheduleError,
    StepSizeError,
)

CHI = [0.1, -0.05, 0.2, 0.0, -0.1, 0.05]
STEP = PhaseSchedule.step(pi / 2, pi)


def test_step_schedule_revives_every_period():
    spec = RingSpec(40, 1.0, 100.0)
    initial = magnon_state(40, 0)
    times = pi * np.arange(1, 51)
    trajectory = evolve_piecewise(initial, spec, STEP, times)
    assert trajectory.meta.integrator is Integrator.EXACT
    assert np.allclose(fidelity_series(trajectory, initial)[1:], 1, atol=1e-9)


def test_step_schedule_stays_localized():
    spec = RingSpec(40, 1.0, 100.0)
    trajectory = evolve_piecewise(
        magnon_state(40, 0), spec, STEP, np.linspace(0, 10 * pi, 400)
    )
    assert max(spatial_spread(state) for state in trajectory.states) < 40 / 4


def test_unmodulated_register_never_revives():
    spec = RingSpec(40, 1.0, 100.0)
    initial = magnon_state(40, 0)
    times = np.linspace(0, 10, 400)
    trajectory = evolve_piecewise(initial, spec, PhaseSchedule.constant(0.0), times)
    values = fidelity_series(trajectory, initial)
    assert values[0] == pytest.approx(1)
    assert np.max(values[times >= 1]) < 0.99


def test_revivals_survive_bond_disorder():
    spec = RingSpec(6, 1.0, 100.0, chi=CHI)
    initial = magnon_state(6, 2)
    trajectory = evolve_piecewise(initial, spec, STEP, pi * np.arange(1, 11))
    assert np.allclose(fidelity_series(trajectory, initial)[1:], 1, atol=1e-9)


def disordered_ring(n_sites, field, seed):
    chi = 0.1 * np.random.default_rng(seed).standard_normal(n_sites)
    return RingSpec(n_sites, 1.0, field, chi=chi)


@pytest.mark.parametrize("seed", range(20))
def test_any_state_is_reconstructed_when_field_winds_fully(seed):
    field = 2.0
    period = reconstruction_period(field)
    spec = disordered_ring(10, field, seed)
    initial = random_state(Basis.full(10), np.random.default_rng(100 + seed))
    trajectory = evolve_piecewise(
        initial, spec, PhaseSchedule.step(pi / 2, period), [period, 5 * period]
    )
    for state in trajectory.states[1:]:
        assert fidelity(initial, state) == pytest.approx(1, abs=1e-8)


@pytest.mark.parametrize("n_up", [0, 1, 2, 3, 4, 6, 8])
def test_single_sector_state_is_reconstructed_at_any_period(n_up):
    period = 1.2345
    spec = disordered_ring(8, 2.0, n_up)
    initial = random_state(Basis.full(8), np.random.default_rng(n_up), n_up=n_up)
    trajectory = evolve_piecewise(
        initial, spec, PhaseSchedule.step(pi / 2, period), [period, 5 * period]
    )
    for state in trajectory.states[1:]:
        assert fidelity(initial, state) == pytest.approx(1, abs=1e-8)


def test_two_magnon_full_space_revival():
    spec = RingSpec(6, 1.0, 100.0)
    initial = basis_state(6, [0, 3])
    trajectory = evolve_piecewise(initial, spec, STEP, pi * np.arange(1, 6))
    assert np.allclose(fidelity_series(trajectory, initial)[1:], 1, atol=1e-8)


def test_vacuum_is_stationary():
    spec = RingSpec(5, 1.0, 100.0, chi=CHI[:5])
    initial = basis_state(5, [])
    for schedule in (STEP, PhaseSchedule.constant(0.3)):
        trajectory = evolve_piecewise(initial, spec, schedule, np.linspace(0, 7, 30))
        assert np.allclose(fidelity_series(trajectory, initial), 1, atol=1e-12)


def test_mismatched_sectors_break_reconstruction():
    # BT = π/2: sectors one spin apart pick up a relative phase of −1
    field = 100.0
    period = pi / (2 * field)
    spec = RingSpec(4, 1.0, field)
    amplitudes = np.zeros(16, dtype=complex)
    amplitudes[0] = 1
    amplitudes[1] = 1
    initial = QuantumState.from_amplitudes(Basis.full(4), amplitudes)
    schedule = PhaseSchedule.step(pi / 2, period)
    trajectory = evolve_piecewise(initial, spec, schedule, [period])
    assert fidelity(initial, trajectory.final) < 1 - 1e-3
    weights = magnetization_decompose(trajectory.final)
    assert weights[-4] == pytest.approx(0.5, abs=1e-12)
    assert weights[-2] == pytest.approx(0.5, abs=1e-12)


def test_stepped_matches_exact_for_step_schedule():
    spec = RingSpec(6, 1.0, 3.0, chi=CHI)
    initial = magnon_state(6, 0)
    times = pi * np.array([0.25, 0.5, 1.0, 2.0, 3.5])
    exact = evolve_piecewise(initial, spec, STEP, times)
    stepped = evolve_stepped(initial, spec, STEP, pi / 128, times)
    assert stepped.meta.integrator is Integrator.MIDPOINT
    for a, b in zip(exact.states, stepped.states):
        assert fidelity(a, b) == pytest.approx(1, abs=1e-9)


def test_stepped_matches_exact_over_ten_periods():
    spec = disordered_ring(8, 100.0, 11)
    initial = magnon_state(8, 0)
    times = pi * np.array([0.5, 1.0, 5.0, 7.25, 10.0])
    exact = evolve_piecewise(initial, spec, STEP, times)
    stepped = evolve_stepped(initial, spec, STEP, pi / 2048, times)
    assert np.allclose(stepped.times, exact.times, rtol=0, atol=1e-12)
    for a, b in zip(exact.states, stepped.states):
        assert fidelity(a, b) >= 1 - 1e-8


def test_midpoint_rule_is_second_order():
    schedule = PhaseSchedule.fourier(pi / 2, pi, 2)
    spec = RingSpec(6, 1.0, 1.0, chi=CHI)
    initial = magnon_state(6, 0)
    t_end = pi / 4

    def final(steps):
        trajectory = evolve_stepped(initial, spec, schedule, pi / steps, [t_end])
        return trajectory.final.amplitudes

    coarse, medium, fine = final(512), final(1024), final(2048)
    ratio = np.linalg.norm(coarse - medium) / np.linalg.norm(medium - fine)
    assert 3.5 <= ratio <= 4.5


def test_stepped_run_conserves_magnetization():
    spec = RingSpec(5, 1.0, 2.0, chi=CHI[:5], eta=[0.1, 0, -0.1, 0.05, 0])
    initial = random_state(Basis.full(5), np.random.default_rng(5), n_up=2)
    schedule = PhaseSchedule.fourier(0.0, 2.0, 5)
    trajectory = evolve_stepped(initial, spec, schedule, 2.0 / 256, [1.0, 2.0, 4.0])
    for state in trajectory.states:
        assert magnetization_decompose(state).get(-1, 0.0) == pytest.approx(1, abs=1e-10)
        assert state.norm == pytest.approx(1, abs=1e-10)


def test_sample_times_are_snapped():
    schedule = PhaseSchedule.fourier(0.0, 1.0, 3)
    dt = 1 / 64
    trajectory = evolve_stepped(magnon_state(4, 0), RingSpec(4, 1.0, 1.0), schedule, dt, [1.4 * dt])
    assert trajectory.times.tolist() == [0.0, dt]
    assert trajectory.meta.max_snap == pytest.approx(0.4 * dt)


def test_evolve_picks_integrator():
    spec = RingSpec(5, 1.0, 1.0)
    initial = magnon_state(5, 0)
    assert evolve(initial, spec, STEP, [1.0]).meta.integrator is Integrator.EXACT
    fourier = PhaseSchedule.fourier(0.0, 1.0, 2)
    assert evolve(initial, spec, fourier, [1.0], 128).meta.dt == pytest.approx(1 / 128)


def test_exact_path_rejects_fourier():
    with pytest.raises(NonCommutingScheduleError):
        evolve_piecewise(
            magnon_state(4, 0), RingSpec(4, 1.0, 1.0), PhaseSchedule.fourier(0, 1, 3), [1.0]
        )


@pytest.mark.parametrize(
    "dt,times",
    [
        (0.0, [1.0]),
        (-0.01, [1.0]),
        (1 / 32, [1.0]),
        (1 / 128, [0.5, 0.501]),
    ],
)
def test_step_size_errors(dt, times):
    schedule = PhaseSchedule.fourier(0.0, 1.0, 2)
    with pytest.raises(StepSizeError):
        evolve_stepped(magnon_state(4, 0), RingSpec(4, 1.0, 1.0), schedule, dt, times)


def test_sample_times_must_increase():
    with pytest.raises(StepSizeError):
        evolve_piecewise(magnon_state(4, 0), RingSpec(4, 1.0, 1.0), STEP, [1.0, 0.5])


def test_register_size_must_match_state():
    with pytest.raises(DimensionMismatchError):
        evolve_piecewise(magnon_state(4, 0), RingSpec(5, 1.0, 1.0), STEP, [1.0])


def test_trajectory_invariants():
    meta = TrajectoryMeta(RingSpec(4, 1.0, 1.0), STEP, Integrator.EXACT)
    state = magnon_state(4, 0)
    with pytest.raises(StepSizeError):
        Trajectory(np.array([0.5, 1.0]), (state, state), meta)
    with pytest.raises(DimensionMismatchError):
        Trajectory(np.array([0.0]), (state, state), meta)
    with pytest.raises(BasisMismatchError):
        Trajectory(np.array([0.0, 1.0]), (state, magnon_state(5, 0)), meta)
    trajectory = Trajectory(np.array([0.0, 1.0]), (state, state), meta)
    assert len(trajectory) == 2 and trajectory.final is state
