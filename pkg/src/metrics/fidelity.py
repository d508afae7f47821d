"""
Module: Overlaps and spatial spread of register states

Public Classes:
    OverlapSeries: F_d(t) = |⟨Ψ_d|ψ(t)⟩|² on a time × site grid

Public Functions:
    fidelity        : |⟨a|b⟩|²
    fidelity_series : Fidelity of every trajectory state with a reference
    overlap_series  : F_d(t) for a one-magnon trajectory
    occupation_series: Up-spin probability per site of a full-space trajectory
    spatial_spread  : Ring-distance root mean square around an origin
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from ..evolution.engine import Trajectory
from ..model.state import BasisKind, QuantumState
from ..utils.error import BasisMismatchError, InvalidStateError


@dataclass(frozen=True, eq=False)
class OverlapSeries:
    """
    F_d(t) = |⟨Ψ_d|ψ(t)⟩|² on a time × site grid

    Args:
        times  (NDArray[np.float64]): Sample times
        sites  (NDArray[np.int64])  : Site indices d
        values (NDArray[np.float64]): Overlaps, shape (times, sites)

    Public Methods:
        rows: Iterate (t, d, F_d(t)) in long format
    """

    times: NDArray[np.float64]
    sites: NDArray[np.int64]
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.values.shape != (len(self.times), len(self.sites)):
            raise InvalidStateError(
                f"Overlap grid of shape {self.values.shape} for "
                f"{len(self.times)} times and {len(self.sites)} sites"
            )
        if np.any(self.values < 0) or np.any(self.values > 1 + 1e-12):
            raise InvalidStateError("Overlaps must lie in [0, 1]")

    def rows(self):
        for time, row in zip(self.times, self.values):
            for site, value in zip(self.sites, row):
                yield float(time), int(site), float(value)


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """
    |⟨a|b⟩|², insensitive to global phase

    Args:
        a (QuantumState): First state
        b (QuantumState): Second state, same basis

    Returns:
        (float): Fidelity in [0, 1]
    """
    if a.basis != b.basis:
        raise BasisMismatchError(f"Cannot compare {a.basis} with {b.basis}")
    # Averaging both orders makes fidelity(a, b) == fidelity(b, a) bit for bit
    forward = np.vdot(a.amplitudes, b.amplitudes)
    backward = np.vdot(b.amplitudes, a.amplitudes)
    value = 0.5 * (abs(forward) ** 2 + abs(backward) ** 2)
    return min(1.0, float(value))


def fidelity_series(trajectory: Trajectory, reference: QuantumState) -> NDArray[np.float64]:
    """
    Fidelity of every trajectory state with a reference state

    Args:
        trajectory (Trajectory)  : Evolved states
        reference  (QuantumState): Reference, usually the initial state

    Returns:
        (NDArray[np.float64]): One fidelity per sample time
    """
    return np.array([fidelity(reference, state) for state in trajectory.states])


def overlap_series(trajectory: Trajectory) -> OverlapSeries:
    """
    F_d(t) = |amplitude_d(t)|² for a one-magnon trajectory

    Args:
        trajectory (Trajectory): One-magnon trajectory

    Returns:
        (OverlapSeries): Overlap with every |Ψ_d⟩ at every sample time
    """
    if trajectory.basis.kind is not BasisKind.ONE_MAGNON:
        raise BasisMismatchError(
            f"Overlaps need a one-magnon trajectory, got {trajectory.basis}"
        )
    values = np.abs(np.stack([state.amplitudes for state in trajectory.states])) ** 2
    sites = np.arange(trajectory.basis.n_sites)
    return OverlapSeries(trajectory.times, sites, values)


def occupation_series(trajectory: Trajectory) -> OverlapSeries:
    """
    Probability that site d is up, for a full-space trajectory; reduces to
        F_d(t) for one-magnon states

    Args:
        trajectory (Trajectory): Full-space trajectory

    Returns:
        (OverlapSeries): ⟨n_d⟩(t) on the time × site grid
    """
    if trajectory.basis.kind is not BasisKind.FULL:
        raise BasisMismatchError(
            f"Occupations need a full-space trajectory, got {trajectory.basis}"
        )
    n_sites = trajectory.basis.n_sites
    indices = np.arange(trajectory.basis.dim)
    bits = ((indices[:, None] >> np.arange(n_sites)[None, :]) & 1).astype(np.float64)
    probabilities = np.abs(np.stack([state.amplitudes for state in trajectory.states])) ** 2
    values = np.clip(probabilities @ bits, 0.0, 1.0)
    return OverlapSeries(trajectory.times, np.arange(n_sites), values)


def spatial_spread(state: QuantumState, origin: int = 0) -> float:
    """
    sqrt(Σ_d p_d · dist(d, origin)²), dist being the wrap-around ring distance

    Args:
        state  (QuantumState): One-magnon state
        origin (int)         : Reference site

    Returns:
        (float): Root-mean-square distance from `origin`
    """
    if state.basis.kind is not BasisKind.ONE_MAGNON:
        raise BasisMismatchError(f"Spread needs a one-magnon state, got {state.basis}")
    n_sites = state.basis.n_sites
    offset = np.abs(np.arange(n_sites) - origin) % n_sites
    distance = np.minimum(offset, n_sites - offset)
    probabilities = np.abs(state.amplitudes) ** 2
    return float(np.sqrt(np.sum(probabilities * distance**2)))
