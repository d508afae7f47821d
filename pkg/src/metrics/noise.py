"""
Module: Static disorder, Monte-Carlo aggregates and noise attenuation

The attenuation factors compare, for eigenstates |γ⟩ of H₁ = −Ĥ_i + Ĥ_err in
one magnetization sector, the per-period overlap |⟨γ|γ(T)⟩| under the step
schedule (A) and under the constant phase θ₀ (A′).

Public Classes:
    DisorderModel      : Gaussian laws of χᵢ and ηᵢ plus the master seed
    SweepResult        : Monte-Carlo aggregate of one configuration
    AttenuationEstimate: A, A′ and σ₁ for one eigenstate index

Public Functions:
    sample_disorder          : Disorder vectors of one realization
    estimate_attenuation     : A, A′ and σ₁ for one eigenstate index
    attenuation_sweep        : A, A′ and σ₁ for every eigenstate of a sector
    estimate_revival_fidelity: Disorder-averaged F₀(mT) of the modulated register
    with_sigma_eta           : Same disorder model with another σ_η
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import partial
from math import comb, fsum, sqrt
from typing import Callable, Hashable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from ..evolution.engine import evolve_piecewise
from ..evolution.propagator import diagonalize
from ..model.ring import (
    RingSpec,
    check_full_space,
    interaction_hamiltonian,
    noise_hamiltonian,
)
from ..model.schedule import PhaseSchedule
from ..model.state import (
    Basis,
    QuantumState,
    magnon_state,
    sector_block,
    sector_indices,
)
from ..utils.error import InvalidStateError
from ..utils.parallel import ordered_map
from ..utils.progress import Progress
from .fidelity import fidelity

_SEED_LIMIT = 1 << 64


@dataclass(frozen=True)
class DisorderModel:
    """
    Gaussian laws of χᵢ and ηᵢ plus the master seed

    Args:
        sigma_chi   (float): Standard deviation of χᵢ
        sigma_eta   (float): Standard deviation of ηᵢ
        master_seed (int)  : 64-bit seed of every realization stream
    """

    sigma_chi: float = 0.0
    sigma_eta: float = 0.0
    master_seed: int = 0

    def __post_init__(self) -> None:
        if not (self.sigma_chi >= 0 and self.sigma_eta >= 0):
            raise ValueError(
                f"Disorder widths must be >= 0: σ_χ={self.sigma_chi}, σ_η={self.sigma_eta}"
            )
        if not 0 <= self.master_seed < _SEED_LIMIT:
            raise ValueError(f"Master seed must fit in 64 bits: {self.master_seed}")


@dataclass(frozen=True)
class SweepResult:
    """
    Monte-Carlo aggregate of one configuration

    Args:
        configuration  (Hashable): Configuration id
        mean_fidelity  (float)   : Sample mean
        std_error      (float)   : Standard error of the mean
        n_realizations (int)     : Number of realizations
        master_seed    (int)     : Seed the realizations were drawn from

    Public Methods:
        from_samples (classmethod): Aggregate per-realization values
    """

    configuration: Hashable
    mean_fidelity: float
    std_error: float
    n_realizations: int
    master_seed: int

    @classmethod
    def from_samples(
        cls, configuration: Hashable, samples: Sequence[float], master_seed: int
    ) -> SweepResult:
        """
        Aggregate per-realization values with compensated summation

        Args:
            configuration (Hashable)       : Configuration id
            samples       (Sequence[float]): One value per realization
            master_seed   (int)            : Seed of the realizations

        Returns:
            (SweepResult): Mean, standard error and count
        """
        values = [float(value) for value in samples]
        count = len(values)
        if count == 0:
            raise ValueError("Cannot aggregate zero realizations")
        mean = fsum(values) / count
        if count > 1:
            variance = fsum((value - mean) ** 2 for value in values) / (count - 1)
            std_error = sqrt(variance / count)
        else:
            std_error = 0.0
        mean = min(1.0, max(0.0, mean))
        return cls(configuration, mean, std_error, count, master_seed)


@dataclass(frozen=True)
class AttenuationEstimate:
    """
    A, A′ and σ₁ for one eigenstate index

    Args:
        gamma_index (int)        : Index of |γ⟩ by ascending H₁ eigenvalue
        modulated   (SweepResult): |⟨γ|γ(T)⟩| under the step schedule
        unmodulated (SweepResult): |⟨γ|γ(T)⟩| under the constant phase θ₀
        sigma_1     (float)      : Mean eigenvalue spread of H₁ in the sector

    Public Attributes:
        a_modulated         (readonly float): Estimate of |A|
        a_unmodulated       (readonly float): Estimate of |A′|
        combined_std_error  (readonly float): sqrt(se_A² + se_A′²)
    """

    gamma_index: int
    modulated: SweepResult
    unmodulated: SweepResult
    sigma_1: float

    @property
    def a_modulated(self) -> float:
        return self.modulated.mean_fidelity

    @property
    def a_unmodulated(self) -> float:
        return self.unmodulated.mean_fidelity

    @property
    def combined_std_error(self) -> float:
        return sqrt(self.modulated.std_error**2 + self.unmodulated.std_error**2)


def sample_disorder(
    model: DisorderModel, n_sites: int, realization_index: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Disorder vectors of one realization

    Draws come from a Philox counter-based stream keyed by the master seed with
    the realization index in the top counter word, so every realization is
    reproducible on its own and independent of evaluation order.

    Args:
        model             (DisorderModel): Disorder laws and master seed
        n_sites           (int)          : Number of sites
        realization_index (int)          : Realization number, >= 0

    Returns:
        (NDArray[np.float64]): χ, Gaussian(0, σ_χ), bond i → i+1
        (NDArray[np.float64]): η, Gaussian(0, σ_η), site i
    """
    if not 0 <= realization_index < _SEED_LIMIT:
        raise ValueError(f"Realization index out of range: {realization_index}")
    bit_generator = np.random.Philox(
        key=model.master_seed, counter=[0, 0, 0, realization_index]
    )
    rng = np.random.Generator(bit_generator)
    chi = model.sigma_chi * rng.standard_normal(n_sites)
    eta = model.sigma_eta * rng.standard_normal(n_sites)
    return chi, eta


def _realization_spec(
    spec_base: RingSpec, model: DisorderModel, realization_index: int
) -> RingSpec:
    chi, eta = sample_disorder(model, spec_base.n_sites, realization_index)
    return spec_base.with_disorder(chi, eta)


def _attenuation_realization(
    realization_index: int,
    spec_base: RingSpec,
    model: DisorderModel,
    theta0: float,
    period: float,
    n_up: int,
) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """
    |⟨γ|γ(T)⟩| with and without modulation for every |γ⟩ of one realization
    """
    spec = _realization_spec(spec_base, model, realization_index)
    n_sites = spec.n_sites
    indices = sector_indices(n_sites, n_up)

    h_1 = noise_hamiltonian(spec) - interaction_hamiltonian(spec, theta0)
    spectrum = diagonalize(sector_block(h_1, n_up))

    basis = Basis.full(n_sites)
    step = PhaseSchedule.step(theta0, period)
    constant = PhaseSchedule.constant(theta0)
    modulated = np.empty(len(indices))
    unmodulated = np.empty(len(indices))

    for gamma_index in range(len(indices)):
        amplitudes = np.zeros(basis.dim, dtype=np.complex128)
        amplitudes[indices] = spectrum.vectors[:, gamma_index]
        gamma = QuantumState.from_amplitudes(basis, amplitudes)

        for schedule, out in ((step, modulated), (constant, unmodulated)):
            final = evolve_piecewise(gamma, spec, schedule, [period]).final
            out[gamma_index] = sqrt(fidelity(gamma, final))

    return modulated, unmodulated, float(np.std(spectrum.energies))


def attenuation_sweep(
    spec_base: RingSpec,
    model: DisorderModel,
    theta0: float,
    period: float,
    n_realizations: int,
    n_up: int = 1,
    workers: int = 1,
    report: Optional[Callable[[Progress], None]] = None,
) -> list[AttenuationEstimate]:
    """
    A, A′ and σ₁ for every eigenstate of one magnetization sector

    Args:
        spec_base      (RingSpec)     : Register; its disorder is replaced
        model          (DisorderModel): Disorder laws and master seed
        theta0         (float)        : Base phase θ₀
        period         (float)        : Modulation period T
        n_realizations (int)          : Number of disorder realizations
        n_up           (int)          : Sector with this many up spins
        workers        (int)          : Process count
        report         (Callable | None): Progress callback

    Returns:
        (list[AttenuationEstimate]): One estimate per eigenstate index
    """
    check_full_space(spec_base.n_sites)
    if n_realizations < 1:
        raise ValueError(f"Need at least one realization, got {n_realizations}")
    task = partial(
        _attenuation_realization,
        spec_base=spec_base,
        model=model,
        theta0=theta0,
        period=period,
        n_up=n_up,
    )
    samples = ordered_map(task, range(n_realizations), workers, report)

    modulated = np.stack([sample[0] for sample in samples])
    unmodulated = np.stack([sample[1] for sample in samples])
    sigma_1 = fsum(sample[2] for sample in samples) / n_realizations

    seed = model.master_seed
    return [
        AttenuationEstimate(
            gamma_index,
            SweepResult.from_samples(
                ("modulated", model.sigma_eta, gamma_index), modulated[:, gamma_index], seed
            ),
            SweepResult.from_samples(
                ("unmodulated", model.sigma_eta, gamma_index),
                unmodulated[:, gamma_index],
                seed,
            ),
            sigma_1,
        )
        for gamma_index in range(modulated.shape[1])
    ]


def estimate_attenuation(
    spec_base: RingSpec,
    model: DisorderModel,
    theta0: float,
    period: float,
    gamma_index: int,
    n_realizations: int,
    n_up: int = 1,
    workers: int = 1,
) -> AttenuationEstimate:
    """
    A, A′ and σ₁ for the `gamma_index`-th eigenstate (ascending) of H₁ in the
        sector with `n_up` up spins

    Args:
        spec_base      (RingSpec)     : Register; its disorder is replaced
        model          (DisorderModel): Disorder laws and master seed
        theta0         (float)        : Base phase θ₀
        period         (float)        : Modulation period T
        gamma_index    (int)          : Eigenstate index within the sector
        n_realizations (int)          : Number of disorder realizations
        n_up           (int)          : Sector with this many up spins
        workers        (int)          : Process count

    Returns:
        (AttenuationEstimate): Estimates for the requested eigenstate
    """
    check_full_space(spec_base.n_sites)
    sector_dim = comb(spec_base.n_sites, n_up) if 0 <= n_up <= spec_base.n_sites else 0
    if not 0 <= gamma_index < sector_dim:
        raise InvalidStateError(
            f"Eigenstate index {gamma_index} outside a sector of dimension {sector_dim}"
        )
    estimates = attenuation_sweep(
        spec_base, model, theta0, period, n_realizations, n_up, workers
    )
    return estimates[gamma_index]


def _revival_realization(
    realization_index: int,
    spec_base: RingSpec,
    model: DisorderModel,
    schedule: PhaseSchedule,
    n_periods: int,
) -> NDArray[np.float64]:
    """
    F₀(mT), m = 1..n_periods, for one realization of the one-magnon register
    """
    spec = _realization_spec(spec_base, model, realization_index)
    initial = magnon_state(spec.n_sites, 0)
    assert schedule.period is not None
    times = schedule.period * np.arange(1, n_periods + 1)
    trajectory = evolve_piecewise(initial, spec, schedule, times)
    return np.array([fidelity(initial, state) for state in trajectory.states[1:]])


def estimate_revival_fidelity(
    spec_base: RingSpec,
    model: DisorderModel,
    schedule: PhaseSchedule,
    n_periods: int,
    n_realizations: int,
    workers: int = 1,
    report: Optional[Callable[[Progress], None]] = None,
) -> list[SweepResult]:
    """
    Disorder-averaged F₀(mT) = |⟨Ψ₀|ψ(mT)⟩|² of the one-magnon register

    Args:
        spec_base      (RingSpec)       : Register; its disorder is replaced
        model          (DisorderModel)  : Disorder laws and master seed
        schedule       (PhaseSchedule)  : Constant or step phase law
        n_periods      (int)            : Largest revival index m
        n_realizations (int)            : Number of disorder realizations
        workers        (int)            : Process count
        report         (Callable | None): Progress callback

    Returns:
        (list[SweepResult]): One aggregate per m = 1..n_periods, configuration
            (σ_η, m)
    """
    if schedule.period is None:
        raise ValueError("Revivals need a periodic schedule")
    task = partial(
        _revival_realization,
        spec_base=spec_base,
        model=model,
        schedule=schedule,
        n_periods=n_periods,
    )
    samples = np.stack(ordered_map(task, range(n_realizations), workers, report))
    return [
        SweepResult.from_samples(
            (model.sigma_eta, period_index + 1), samples[:, period_index], model.master_seed
        )
        for period_index in range(n_periods)
    ]


def with_sigma_eta(model: DisorderModel, sigma_eta: float) -> DisorderModel:
    """
    Same model with a different σ_η

    Args:
        model     (DisorderModel): Base model
        sigma_eta (float)        : New field disorder width

    Returns:
        (DisorderModel): Copy with `sigma_eta` replaced
    """
    return replace(model, sigma_eta=sigma_eta)
