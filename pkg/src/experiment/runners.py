"""
Module: Experiment runners writing result CSVs

Every runner takes a resolved `ExperimentConfig`, computes its table, writes it
once through `storage.csv_.Csv` and returns the written path(s).

Public Functions:
    run_fig1         : F_d(t) of the unmodulated one-magnon register
    run_fig2         : F_d(t) under the step phase schedule
    run_fig3         : F₀(mT) under truncated Fourier schedules, one run per M
    run_noise_sweep  : Attenuation factors A, A′ over a σ_η grid
    run_revival_sweep: Disorder-averaged F₀(mT) over a σ_η grid
    run_custom       : Arbitrary register, schedule and initial state
    run_experiment   : Dispatch on the experiment kind
    sample_times     : Time grid of a run

Public Constants:
    OVERLAP_COLUMNS     (tuple[str, ...]): fig1, fig2 and custom overlap columns
    FIG3_COLUMNS        (tuple[str, ...]): fig3 columns
    NOISE_SWEEP_COLUMNS (tuple[str, ...]): noise-sweep columns
    REVIVAL_COLUMNS     (tuple[str, ...]): revival-sweep columns
"""

from __future__ import annotations

from functools import partial
from pathlib import Path
from typing import Any, Callable, Iterator

import numpy as np
from numpy.typing import NDArray
from progbar import clear_print, clear_print_clearable

from ..evolution.engine import Trajectory, evolve, evolve_piecewise, evolve_stepped
from ..metrics.fidelity import (
    fidelity,
    fidelity_series,
    occupation_series,
    overlap_series,
    spatial_spread,
)
from ..metrics.noise import (
    DisorderModel,
    attenuation_sweep,
    estimate_revival_fidelity,
    with_sigma_eta,
)
from ..model.ring import RingSpec
from ..model.schedule import PhaseSchedule, ScheduleKind
from ..model.state import Basis, BasisKind, QuantumState, basis_state, magnon_state
from ..storage.csv_ import Csv
from ..utils.error import ConfigError
from ..utils.parallel import ordered_map
from ..utils.progress import Progress
from .config import ExperimentConfig

OVERLAP_COLUMNS = ("t", "d", "overlap")
FIG3_COLUMNS = ("harmonics", "period_index", "fidelity")
NOISE_SWEEP_COLUMNS = (
    "sigma_eta",
    "gamma_index",
    "a_modulated",
    "a_unmodulated",
    "std_error_mod",
    "std_error_unmod",
    "sigma_1",
    "n_realizations",
    "master_seed",
)
REVIVAL_COLUMNS = (
    "sigma_eta",
    "period",
    "mean_fidelity",
    "std_error",
    "n_realizations",
    "master_seed",
)


def sample_times(config: ExperimentConfig) -> NDArray[np.float64]:
    """
    `n_time_samples` evenly spaced times on [0, t_max], plus every revival
        instant mT ≤ t_max added exactly

    Args:
        config (ExperimentConfig): Resolved configuration

    Returns:
        (NDArray[np.float64]): Increasing sample times starting at 0
    """
    grid = config.grid
    times = np.linspace(0.0, grid.t_max, grid.n_time_samples)
    if (period := config.schedule.period) is not None and grid.n_periods:
        revivals = period * np.arange(1, grid.n_periods + 1)
        times = np.union1d(times, revivals[revivals <= grid.t_max])
    return times


def _metadata(config: ExperimentConfig) -> dict[str, Any]:
    return {
        "experiment": config.experiment,
        "master_seed": config.master_seed,
        "config": config.to_dict(),
    }


def _reporter(label: str) -> Callable[[Progress], None]:
    def report(progress: Progress) -> None:
        clear_print_clearable(progress.line(label))

    return report


def _overlap_rows(trajectory: Trajectory) -> Iterator[tuple[float, int, float]]:
    if trajectory.basis.kind is BasisKind.ONE_MAGNON:
        yield from overlap_series(trajectory).rows()
    else:
        yield from occupation_series(trajectory).rows()


def _run_overlap(config: ExperimentConfig, schedule: PhaseSchedule) -> Path:
    spec = config.ring.to_spec()
    initial = magnon_state(spec.n_sites, 0)
    clear_print(
        f"Evolving |Ψ_0⟩ on a ring of {spec.n_sites} sites "
        f"({schedule.kind.value} phase)..."
    )
    trajectory = evolve_piecewise(initial, spec, schedule, sample_times(config))
    spread = max(spatial_spread(state) for state in trajectory.states)
    clear_print(f"Largest spatial spread: {spread:.3f} sites")

    metadata = {**_metadata(config), "max_spatial_spread": spread}
    Csv(config.output).write(
        OVERLAP_COLUMNS, _overlap_rows(trajectory), metadata, config.experiment
    )
    return config.output


def run_fig1(config: ExperimentConfig) -> Path:
    """
    Long-format F_d(t) for |Ψ_0⟩ under the unmodulated Hamiltonian, exact
        one-magnon evolution

    Args:
        config (ExperimentConfig): Resolved fig1 configuration

    Returns:
        (pathlib.Path): Written CSV
    """
    return _run_overlap(config, PhaseSchedule.constant(config.schedule.theta0))


def run_fig2(config: ExperimentConfig) -> Path:
    """
    Long-format F_d(t) for |Ψ_0⟩ under the step schedule, exact one-magnon
        evolution

    Args:
        config (ExperimentConfig): Resolved fig2 configuration

    Returns:
        (pathlib.Path): Written CSV
    """
    if config.schedule.kind is not ScheduleKind.STEP:
        raise ConfigError(f"fig2 needs a step schedule, got {config.schedule.kind.value}")
    return _run_overlap(config, config.schedule.to_schedule())


def _fig3_run(
    harmonics: int,
    spec: RingSpec,
    theta0: float,
    period: float,
    n_periods: int,
    steps_per_period: int,
) -> NDArray[np.float64]:
    """
    F₀(mT), m = 0..n_periods, for one harmonic count
    """
    schedule = PhaseSchedule.fourier(theta0, period, harmonics)
    initial = magnon_state(spec.n_sites, 0)
    times = period * np.arange(n_periods + 1)
    trajectory = evolve_stepped(
        initial, spec, schedule, period / steps_per_period, times
    )
    return fidelity_series(trajectory, initial)


def run_fig3(config: ExperimentConfig) -> Path:
    """
    F₀(mT) of the one-magnon register under truncated Fourier schedules, one
        stepped run per harmonic count, runs spread over the worker pool

    Args:
        config (ExperimentConfig): Resolved fig3 configuration

    Returns:
        (pathlib.Path): Written CSV
    """
    schedule = config.schedule
    if schedule.kind is not ScheduleKind.FOURIER or not schedule.harmonics:
        raise ConfigError("fig3 needs a fourier schedule with a harmonics list")
    if (n_periods := config.grid.n_periods) is None:
        raise ConfigError("fig3 needs grid.n_periods")
    assert schedule.period is not None

    spec = config.ring.to_spec()
    clear_print(
        f"Running {len(schedule.harmonics)} harmonic counts over {n_periods} periods..."
    )
    task = partial(
        _fig3_run,
        spec=spec,
        theta0=schedule.theta0,
        period=schedule.period,
        n_periods=n_periods,
        steps_per_period=config.grid.steps_per_period,
    )
    series = ordered_map(
        task, schedule.harmonics, config.workers, _reporter("fourier runs")
    )

    rows = (
        (harmonics, period_index, float(value))
        for harmonics, values in zip(schedule.harmonics, series)
        for period_index, value in enumerate(values)
    )
    Csv(config.output).write(FIG3_COLUMNS, rows, _metadata(config), config.experiment)
    return config.output


def _step_parameters(config: ExperimentConfig) -> tuple[float, float]:
    schedule = config.schedule
    if schedule.kind is not ScheduleKind.STEP or schedule.period is None:
        raise ConfigError(
            f"{config.experiment} needs a step schedule, got {schedule.kind.value}"
        )
    return schedule.theta0, schedule.period


def run_noise_sweep(config: ExperimentConfig) -> Path:
    """
    A and A′ for every eigenstate of the chosen sector of H₁, at every σ_η of
        the sweep grid, with χ disorder from the config

    Args:
        config (ExperimentConfig): Resolved noise-sweep configuration

    Returns:
        (pathlib.Path): Written CSV
    """
    theta0, period = _step_parameters(config)
    spec = config.ring.to_spec()
    n_realizations = config.disorder.n_realizations

    base_model = DisorderModel(config.disorder.sigma_chi, 0.0, config.master_seed)

    rows: list[tuple[Any, ...]] = []
    for sigma_eta in config.sweep.sigma_eta:
        clear_print(f"σ_η = {sigma_eta}: {n_realizations} realizations...")
        model = with_sigma_eta(base_model, sigma_eta)
        estimates = attenuation_sweep(
            spec,
            model,
            theta0,
            period,
            n_realizations,
            config.sweep.n_up,
            config.workers,
            _reporter(f"σ_η = {sigma_eta}"),
        )
        rows.extend(
            (
                sigma_eta,
                estimate.gamma_index,
                estimate.a_modulated,
                estimate.a_unmodulated,
                estimate.modulated.std_error,
                estimate.unmodulated.std_error,
                estimate.sigma_1,
                n_realizations,
                config.master_seed,
            )
            for estimate in estimates
        )

    Csv(config.output).write(
        NOISE_SWEEP_COLUMNS, rows, _metadata(config), config.experiment
    )
    return config.output


def run_revival_sweep(config: ExperimentConfig) -> Path:
    """
    Disorder-averaged F₀(mT) of the step-modulated one-magnon register at
        every σ_η of the sweep grid

    Args:
        config (ExperimentConfig): Resolved revival-sweep configuration

    Returns:
        (pathlib.Path): Written CSV
    """
    _step_parameters(config)
    if (n_periods := config.grid.n_periods) is None:
        raise ConfigError("revival-sweep needs grid.n_periods")
    spec = config.ring.to_spec()
    schedule = config.schedule.to_schedule()
    n_realizations = config.disorder.n_realizations

    base_model = DisorderModel(config.disorder.sigma_chi, 0.0, config.master_seed)

    rows: list[tuple[Any, ...]] = []
    for sigma_eta in config.sweep.sigma_eta:
        clear_print(f"σ_η = {sigma_eta}: {n_realizations} realizations...")
        model = with_sigma_eta(base_model, sigma_eta)
        results = estimate_revival_fidelity(
            spec,
            model,
            schedule,
            n_periods,
            n_realizations,
            config.workers,
            _reporter(f"σ_η = {sigma_eta}"),
        )
        rows.extend(
            (
                sigma_eta,
                period_index,
                result.mean_fidelity,
                result.std_error,
                result.n_realizations,
                result.master_seed,
            )
            for period_index, result in enumerate(results, start=1)
        )

    Csv(config.output).write(REVIVAL_COLUMNS, rows, _metadata(config), config.experiment)
    return config.output


def _initial_state(config: ExperimentConfig) -> QuantumState:
    """
    Initial state described by the `initial` section
    """
    initial = config.initial
    n_sites = config.ring.n_sites
    if initial.amplitudes is not None:
        basis = Basis.full(n_sites) if initial.basis == "full" else Basis.one_magnon(n_sites)
        values = [
            complex(*value) if isinstance(value, (list, tuple)) else complex(value)
            for value in initial.amplitudes
        ]
        return QuantumState.from_amplitudes(basis, values)
    if initial.basis == "full":
        return basis_state(n_sites, initial.flipped_sites or [])
    if initial.site is None:
        raise ConfigError("initial.site is required for a one_magnon initial state")
    return magnon_state(n_sites, initial.site)


def trajectory_path(output: Path) -> Path:
    """
    Companion path of a custom run's amplitude dump

    Args:
        output (pathlib.Path): Overlap CSV path

    Returns:
        (pathlib.Path): "<stem>.trajectory<suffix>" next to it
    """
    return output.with_name(f"{output.stem}.trajectory{output.suffix}")


def _trajectory_rows(
    trajectory: Trajectory, initial: QuantumState
) -> Iterator[list[float]]:
    for time, state in zip(trajectory.times, trajectory.states):
        row = [float(time), fidelity(initial, state)]
        for amplitude in state.amplitudes:
            row.extend((float(amplitude.real), float(amplitude.imag)))
        yield row


def run_custom(config: ExperimentConfig) -> tuple[Path, Path]:
    """
    Evolve any initial state under any register and schedule; writes the
        overlap (or site occupation) CSV and a trajectory CSV holding the
        fidelity with the initial state and interleaved amplitudes

    Args:
        config (ExperimentConfig): Resolved custom configuration

    Returns:
        (pathlib.Path): Overlap CSV
        (pathlib.Path): Trajectory CSV
    """
    spec = config.ring.to_spec()
    schedule = config.schedule.to_schedule()
    initial = _initial_state(config)
    times = sample_times(config)

    if schedule.kind is ScheduleKind.FOURIER:
        assert schedule.period is not None
        dt = schedule.period / config.grid.steps_per_period
        times = np.unique(np.rint(times / dt)) * dt

    clear_print(
        f"Evolving a {initial.basis.kind.value} state of {spec.n_sites} sites "
        f"over {len(times)} samples..."
    )
    trajectory = evolve(initial, spec, schedule, times, config.grid.steps_per_period)
    if trajectory.meta.max_snap:
        clear_print(f"Sample times snapped by up to {trajectory.meta.max_snap:.3e}")

    metadata = _metadata(config)
    Csv(config.output).write(
        OVERLAP_COLUMNS, _overlap_rows(trajectory), metadata, "overlap"
    )

    dump = trajectory_path(config.output)
    columns = ["t", "fidelity"]
    for index in range(initial.basis.dim):
        columns.extend((f"re_{index}", f"im_{index}"))
    Csv(dump).write(columns, _trajectory_rows(trajectory, initial), metadata, "trajectory")
    return config.output, dump


_RUNNERS: dict[str, Callable[[ExperimentConfig], Any]] = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "fig3": run_fig3,
    "noise-sweep": run_noise_sweep,
    "revival-sweep": run_revival_sweep,
    "custom": run_custom,
}


def run_experiment(config: ExperimentConfig) -> Any:
    """
    Dispatch on the experiment kind

    Args:
        config (ExperimentConfig): Resolved configuration

    Returns:
        (Any): What the runner returns
    """
    return _RUNNERS[config.experiment](config)
