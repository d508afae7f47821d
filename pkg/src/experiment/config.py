"""
Module: Resolved experiment configuration

Values are layered: built-in defaults, then the experiment's figure defaults,
then the JSON config file, then command-line overrides. Unknown keys are
rejected.

Public Classes:
    RingConfig      : Register parameters
    ScheduleConfig  : Phase law parameters, harmonics as a list
    GridConfig      : Time grid
    DisorderConfig  : Bond disorder width and realization count
    SweepConfig     : σ_η grid and magnetization sector
    InitialConfig   : Initial state of a custom run
    ExperimentConfig: Full resolved configuration

Public Functions:
    resolve_config: Merge every configuration layer

Public Constants:
    EXPERIMENTS (tuple[str, ...]): Known experiment kinds
"""

from __future__ import annotations

from copy import deepcopy
from dataclasses import asdict, dataclass
from math import floor
from pathlib import Path
from typing import Any, Optional

from .. import config
from ..model.ring import RingSpec
from ..model.schedule import PhaseSchedule, ScheduleKind
from ..utils.error import ConfigError

EXPERIMENTS = ("fig1", "fig2", "fig3", "noise-sweep", "revival-sweep", "custom")

_BASE_DEFAULTS: dict[str, Any] = {
    "ring": {"n_sites": 40, "coupling": 1.0, "field": 100.0, "chi": None, "eta": None},
    "schedule": {"kind": "constant", "theta0": 0.0, "period": None, "harmonics": None},
    "grid": {
        "t_max": None,
        "n_periods": None,
        "n_time_samples": 400,
        "steps_per_period": config.STEPS_PER_PERIOD,
    },
    "disorder": {"sigma_chi": 0.0, "n_realizations": 100},
    "sweep": {"sigma_eta": [0.0], "n_up": 1},
    "initial": {"basis": "one_magnon", "site": 0},
    "output": None,
    "master_seed": config.DEFAULT_MASTER_SEED,
    "workers": 1,
}

_SECTION_KEYS: dict[str, set[str]] = {
    "ring": {"n_sites", "coupling", "field", "chi", "eta"},
    "schedule": {"kind", "theta0", "period", "harmonics"},
    "grid": {"t_max", "n_periods", "n_time_samples", "steps_per_period"},
    "disorder": {"sigma_chi", "n_realizations"},
    "sweep": {"sigma_eta", "n_up"},
    "initial": {"basis", "site", "flipped_sites", "amplitudes"},
}
_TOP_KEYS = set(_SECTION_KEYS) | {"experiment", "output", "master_seed", "workers"}

# Sections replaced wholesale by a later layer instead of merged key by key
_REPLACED_SECTIONS = {"initial"}


@dataclass(frozen=True)
class RingConfig:
    n_sites: int
    coupling: float
    field: float
    chi: Optional[list[float]] = None
    eta: Optional[list[float]] = None

    def to_spec(self) -> RingSpec:
        return RingSpec(self.n_sites, self.coupling, self.field, self.chi, self.eta)


@dataclass(frozen=True)
class ScheduleConfig:
    """
    Phase law parameters; `harmonics` lists every M of a fig3 run

    Public Methods:
        to_schedule: Phase law for one harmonic count
    """

    kind: ScheduleKind
    theta0: float
    period: Optional[float]
    harmonics: Optional[list[int]]

    def to_schedule(self, harmonics: Optional[int] = None) -> PhaseSchedule:
        """
        Phase law for one harmonic count

        Args:
            harmonics (int | None): M of a fourier law; the first listed if None

        Returns:
            (PhaseSchedule): Validated schedule
        """
        if self.kind is ScheduleKind.FOURIER and harmonics is None:
            harmonics = self.harmonics[0] if self.harmonics else None
        return PhaseSchedule(self.kind, self.theta0, self.period, harmonics)


@dataclass(frozen=True)
class GridConfig:
    t_max: float
    n_periods: Optional[int]
    n_time_samples: int
    steps_per_period: int


@dataclass(frozen=True)
class DisorderConfig:
    sigma_chi: float
    n_realizations: int


@dataclass(frozen=True)
class SweepConfig:
    sigma_eta: list[float]
    n_up: int


@dataclass(frozen=True)
class InitialConfig:
    """
    Initial state of a custom run: a one-magnon site, flipped sites of a
        full-space product state, or explicit amplitudes given as numbers or
        [real, imag] pairs
    """

    basis: str
    site: Optional[int] = None
    flipped_sites: Optional[list[int]] = None
    amplitudes: Optional[list[Any]] = None


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Full resolved configuration

    Public Attributes:
        experiment  (str)           : Experiment kind
        ring        (RingConfig)    : Register parameters
        schedule    (ScheduleConfig): Phase law parameters
        grid        (GridConfig)    : Time grid
        disorder    (DisorderConfig): Bond disorder width and realization count
        sweep       (SweepConfig)   : σ_η grid and sector
        initial     (InitialConfig) : Initial state of a custom run
        output      (pathlib.Path)  : Output CSV path
        master_seed (int)           : Seed of every random stream
        workers     (int)           : Process count

    Public Methods:
        to_dict: JSON-ready form recorded in output headers; `workers` is left
            out so outputs do not depend on the process count
    """

    experiment: str
    ring: RingConfig
    schedule: ScheduleConfig
    grid: GridConfig
    disorder: DisorderConfig
    sweep: SweepConfig
    initial: InitialConfig
    output: Path
    master_seed: int
    workers: int

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["schedule"]["kind"] = self.schedule.kind.value
        data["output"] = str(self.output)
        del data["workers"]
        return data


def resolve_config(
    experiment: str,
    file_data: Optional[dict[str, Any]] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Merge defaults, figure defaults, config file and command-line overrides

    Args:
        experiment (str)                   : Experiment kind
        file_data  (dict[str, Any] | None) : Parsed JSON config
        overrides  (dict[str, Any] | None) : Nested command-line values; None
            entries are ignored

    Returns:
        (ExperimentConfig): Validated configuration

    Raises:
        ConfigError: Unknown experiment or key, missing or invalid value
    """
    if experiment not in EXPERIMENTS:
        raise ConfigError(f"Unknown experiment: {experiment}")

    file_data = deepcopy(file_data or {})
    if (file_experiment := file_data.pop("experiment", experiment)) != experiment:
        raise ConfigError(
            f"Config file is for experiment {file_experiment!r}, not {experiment!r}"
        )
    _check_keys(file_data, "config file")
    overrides = _drop_none(overrides or {})
    _check_keys(overrides, "overrides")

    merged = deepcopy(_BASE_DEFAULTS)
    for layer in (config.FIGURE_DEFAULTS[experiment], file_data, overrides):
        _merge(merged, layer)

    try:
        return _build(experiment, merged)
    except (TypeError, ValueError) as err:
        if isinstance(err, ConfigError):
            raise
        raise ConfigError(f"Invalid {experiment} config: {err}") from err


def _check_keys(data: dict[str, Any], source: str) -> None:
    for key, value in data.items():
        if key not in _TOP_KEYS:
            raise ConfigError(f"Unknown key in {source}: {key}")
        if key in _SECTION_KEYS:
            if not isinstance(value, dict):
                raise ConfigError(f"Section {key} in {source} must be an object")
            if unknown := sorted(set(value) - _SECTION_KEYS[key]):
                names = ", ".join(f"{key}.{name}" for name in unknown)
                raise ConfigError(f"Unknown key in {source}: {names}")


def _drop_none(data: dict[str, Any]) -> dict[str, Any]:
    cleaned: dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            if section := _drop_none(value):
                cleaned[key] = section
        elif value is not None:
            cleaned[key] = value
    return cleaned


def _merge(base: dict[str, Any], layer: dict[str, Any]) -> None:
    for key, value in layer.items():
        if key in _SECTION_KEYS and key not in _REPLACED_SECTIONS:
            base[key].update(deepcopy(value))
        else:
            base[key] = deepcopy(value)


def _build(experiment: str, merged: dict[str, Any]) -> ExperimentConfig:
    ring = RingConfig(**merged["ring"])
    ring.to_spec()

    raw_schedule = merged["schedule"]
    harmonics = raw_schedule["harmonics"]
    if isinstance(harmonics, int):
        harmonics = [harmonics]
    schedule = ScheduleConfig(
        ScheduleKind(raw_schedule["kind"]),
        float(raw_schedule["theta0"]),
        raw_schedule["period"],
        None if harmonics is None else [int(m) for m in harmonics],
    )
    for m in schedule.harmonics or [None]:
        schedule.to_schedule(m)

    grid = _build_grid(merged["grid"], schedule.period)
    disorder = DisorderConfig(**merged["disorder"])
    if disorder.n_realizations < 1:
        raise ConfigError(
            f"disorder.n_realizations must be >= 1, got {disorder.n_realizations}"
        )
    raw_sweep = merged["sweep"]
    sweep = SweepConfig([float(s) for s in raw_sweep["sigma_eta"]], int(raw_sweep["n_up"]))
    if not sweep.sigma_eta or any(not s >= 0 for s in sweep.sigma_eta):
        raise ConfigError(f"sweep.sigma_eta must be nonnegative values: {sweep.sigma_eta}")

    initial = InitialConfig(**merged["initial"])
    if initial.basis not in ("full", "one_magnon"):
        raise ConfigError(f"initial.basis must be full or one_magnon: {initial.basis}")

    if (workers := int(merged["workers"])) < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    if not 0 <= (master_seed := int(merged["master_seed"])) < 1 << 64:
        raise ConfigError(f"master_seed must fit in 64 bits: {master_seed}")

    output = merged["output"]
    output = Path(output if output is not None else f"{experiment}.csv")

    return ExperimentConfig(
        experiment,
        ring,
        schedule,
        grid,
        disorder,
        sweep,
        initial,
        output,
        master_seed,
        workers,
    )


def _build_grid(raw: dict[str, Any], period: Optional[float]) -> GridConfig:
    n_periods = raw["n_periods"]
    t_max = raw["t_max"]
    if t_max is None:
        if n_periods is None or period is None:
            raise ConfigError("grid.t_max is required without grid.n_periods and a period")
        t_max = n_periods * period
    elif n_periods is None and period is not None:
        n_periods = floor(t_max / period + 1e-9)

    if not t_max > 0:
        raise ConfigError(f"grid.t_max must be positive, got {t_max}")
    if (n_time_samples := int(raw["n_time_samples"])) < 2:
        raise ConfigError(f"grid.n_time_samples must be >= 2, got {n_time_samples}")
    if (steps := int(raw["steps_per_period"])) < config.MIN_STEPS_PER_PERIOD:
        raise ConfigError(
            f"grid.steps_per_period must be >= {config.MIN_STEPS_PER_PERIOD}, got {steps}"
        )
    return GridConfig(float(t_max), n_periods, n_time_samples, steps)
