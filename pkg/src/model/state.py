"""
Module: Register states in the full space and in the one-magnon sector

Public Classes:
    BasisKind   : Full 2^N space or one-magnon sector
    Basis       : Basis tag (kind and ring size)
    QuantumState: Normalized amplitude vector tagged with its basis

Public Functions:
    magnon_state           : |Ψ_d⟩ in the one-magnon basis
    basis_state            : Product state with the given sites flipped up
    random_state           : Random normalized state
    embed_one_magnon       : One-magnon state as a full-space state
    project_one_magnon     : One-magnon component of a full-space state
    magnetization_decompose: Weight of each magnetization sector
    up_counts              : Number of up spins of every full-space index
    sector_indices         : Full-space indices of a magnetization sector
    sector_block           : Hamiltonian block of a magnetization sector
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .. import config
from ..utils.error import BasisMismatchError, EmptySectorError, InvalidStateError
from .ring import HermitianMatrix, check_full_space


class BasisKind(str, Enum):
    """
    Full 2^N space or one-magnon sector
    """

    FULL = "full"
    ONE_MAGNON = "one_magnon"


@dataclass(frozen=True)
class Basis:
    """
    Basis tag

    Args:
        kind    (BasisKind): Full space or one-magnon sector
        n_sites (int)      : Number of qubits

    Public Attributes:
        kind    (BasisKind)    : Full space or one-magnon sector
        n_sites (int)          : Number of qubits
        dim     (readonly int) : Vector length, 2^N or N
    """

    kind: BasisKind
    n_sites: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", BasisKind(self.kind))
        if self.kind is BasisKind.FULL:
            check_full_space(self.n_sites)

    @property
    def dim(self) -> int:
        if self.kind is BasisKind.FULL:
            return 1 << self.n_sites
        return self.n_sites

    @classmethod
    def full(cls, n_sites: int) -> Basis:
        return cls(BasisKind.FULL, n_sites)

    @classmethod
    def one_magnon(cls, n_sites: int) -> Basis:
        return cls(BasisKind.ONE_MAGNON, n_sites)


@dataclass(frozen=True, eq=False)
class QuantumState:
    """
    Normalized amplitude vector tagged with its basis

    Global phases are never canonicalized; compare states through
    `metrics.fidelity.fidelity`.

    Args:
        basis      (Basis)                  : Basis tag
        amplitudes (NDArray[np.complex128]) : Amplitudes, unit norm

    Public Attributes:
        basis      (Basis)                  : Basis tag
        amplitudes (NDArray[np.complex128]) : Amplitudes, read-only
        norm       (readonly float)         : Euclidean norm

    Public Methods:
        from_amplitudes (classmethod): Normalizing constructor
    """

    basis: Basis
    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.shape != (self.basis.dim,):
            raise InvalidStateError(
                f"{self.basis.kind.value} basis with N={self.basis.n_sites} needs "
                f"{self.basis.dim} amplitudes, got shape {amplitudes.shape}"
            )
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > config.NORM_TOL:
            raise InvalidStateError(f"State norm is {norm!r}, expected 1")
        amplitudes.flags.writeable = False
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @classmethod
    def from_amplitudes(cls, basis: Basis, amplitudes: ArrayLike) -> QuantumState:
        """
        Normalizing constructor

        Args:
            basis      (Basis)    : Basis tag
            amplitudes (ArrayLike): Unnormalized, nonzero amplitudes

        Returns:
            (QuantumState): Normalized state
        """
        vector = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(vector)
        if not norm > 0 or not np.isfinite(norm):
            raise InvalidStateError(f"Cannot normalize amplitudes of norm {norm}")
        return cls(basis, vector / norm)


def magnon_state(n_sites: int, d: int) -> QuantumState:
    """
    |Ψ_d⟩ = |↑_d⟩∏_{i≠d}|↓_i⟩ in the one-magnon basis

    Args:
        n_sites (int): Number of qubits
        d       (int): Site of the up spin

    Returns:
        (QuantumState): Unit vector at position d
    """
    if not 0 <= d < n_sites:
        raise InvalidStateError(f"Site index {d} out of range for N={n_sites}")
    amplitudes = np.zeros(n_sites, dtype=np.complex128)
    amplitudes[d] = 1
    return QuantumState(Basis.one_magnon(n_sites), amplitudes)


def basis_state(n_sites: int, flipped_sites: Iterable[int]) -> QuantumState:
    """
    Full-space product state with the given sites up and all others down

    Args:
        n_sites       (int)          : Number of qubits
        flipped_sites (Iterable[int]): Sites of the up spins; empty is |↓…↓⟩

    Returns:
        (QuantumState): Computational basis state
    """
    basis = Basis.full(n_sites)
    index = 0
    for site in flipped_sites:
        if not 0 <= site < n_sites:
            raise InvalidStateError(f"Site index {site} out of range for N={n_sites}")
        index |= 1 << site
    amplitudes = np.zeros(basis.dim, dtype=np.complex128)
    amplitudes[index] = 1
    return QuantumState(basis, amplitudes)


def random_state(
    basis: Basis, rng: np.random.Generator, n_up: Optional[int] = None
) -> QuantumState:
    """
    Random state with independent complex Gaussian amplitudes

    Args:
        basis (Basis)              : Basis tag
        rng   (np.random.Generator): Random source
        n_up  (int | None)         : Restrict a full-space state to the sector
            with this many up spins

    Returns:
        (QuantumState): Normalized random state
    """
    amplitudes = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    if n_up is not None:
        if basis.kind is not BasisKind.FULL:
            raise BasisMismatchError("Sector restriction needs a full-space basis")
        mask = np.zeros(basis.dim, dtype=bool)
        mask[sector_indices(basis.n_sites, n_up)] = True
        amplitudes[~mask] = 0
    return QuantumState.from_amplitudes(basis, amplitudes)


def up_counts(n_sites: int) -> NDArray[np.int64]:
    """
    Number of up spins of every full-space basis index

    Args:
        n_sites (int): Number of qubits

    Returns:
        (NDArray[np.int64]): Popcounts, length 2^N
    """
    check_full_space(n_sites)
    indices = np.arange(1 << n_sites)
    counts = np.zeros(1 << n_sites, dtype=np.int64)
    for site in range(n_sites):
        counts += (indices >> site) & 1
    return counts


def sector_indices(n_sites: int, n_up: int) -> NDArray[np.int64]:
    """
    Full-space indices of the sector with `n_up` up spins, i.e. M = 2·n_up − N

    Args:
        n_sites (int): Number of qubits
        n_up    (int): Number of up spins

    Returns:
        (NDArray[np.int64]): Increasing basis indices
    """
    if not 0 <= n_up <= n_sites:
        raise InvalidStateError(f"No sector with {n_up} up spins for N={n_sites}")
    return np.flatnonzero(up_counts(n_sites) == n_up)


def _one_magnon_indices(n_sites: int) -> NDArray[np.int64]:
    return 1 << np.arange(n_sites)


def embed_one_magnon(state: QuantumState, n_sites: int) -> QuantumState:
    """
    One-magnon state as a full-space state

    Args:
        state   (QuantumState): One-magnon state
        n_sites (int)         : Number of qubits

    Returns:
        (QuantumState): Full-space state, amplitude α_d on index 2^d
    """
    if state.basis != Basis.one_magnon(n_sites):
        raise BasisMismatchError(
            f"Expected a one-magnon state of N={n_sites}, got {state.basis}"
        )
    basis = Basis.full(n_sites)
    amplitudes = np.zeros(basis.dim, dtype=np.complex128)
    amplitudes[_one_magnon_indices(n_sites)] = state.amplitudes
    return QuantumState(basis, amplitudes)


def project_one_magnon(state: QuantumState) -> tuple[QuantumState, float]:
    """
    Renormalized one-magnon component of a full-space state

    Args:
        state (QuantumState): Full-space state

    Returns:
        (QuantumState): One-magnon component, renormalized
        (float)       : Probability weight outside the sector

    Raises:
        EmptySectorError: In-sector weight below `EMPTY_SECTOR_TOL`
    """
    if state.basis.kind is not BasisKind.FULL:
        raise BasisMismatchError(f"Expected a full-space state, got {state.basis}")
    n_sites = state.basis.n_sites
    indices = _one_magnon_indices(n_sites)

    inside = state.amplitudes[indices]
    weight = float(np.vdot(inside, inside).real)
    if weight < config.EMPTY_SECTOR_TOL:
        raise EmptySectorError(
            f"One-magnon weight {weight:.3e} is too small to renormalize"
        )

    outside = state.amplitudes.copy()
    outside[indices] = 0
    leaked = float(np.vdot(outside, outside).real)
    return QuantumState(Basis.one_magnon(n_sites), inside / np.sqrt(weight)), leaked


def magnetization_decompose(state: QuantumState) -> dict[int, float]:
    """
    Weight of each eigenvalue of M = Σσᶻ

    Args:
        state (QuantumState): Full-space or one-magnon state

    Returns:
        (dict[int, float]): Magnetization value to probability weight, only
            sectors with nonzero weight
    """
    n_sites = state.basis.n_sites
    if state.basis.kind is BasisKind.ONE_MAGNON:
        return {2 - n_sites: 1.0}

    probabilities = np.abs(state.amplitudes) ** 2
    weights = np.bincount(up_counts(n_sites), weights=probabilities, minlength=n_sites + 1)
    return {
        2 * n_up - n_sites: float(weight)
        for n_up, weight in enumerate(weights)
        if weight > 0
    }


def sector_block(h: HermitianMatrix, n_up: int) -> HermitianMatrix:
    """
    Block of a full-space Hamiltonian on the sector with `n_up` up spins

    Args:
        h    (HermitianMatrix): Full-space matrix, dimension 2^N
        n_up (int)            : Number of up spins

    Returns:
        (HermitianMatrix): Block in the order of `sector_indices`
    """
    n_sites = h.dim.bit_length() - 1
    if h.dim != 1 << n_sites:
        raise BasisMismatchError(f"Dimension {h.dim} is not a full-space dimension")
    indices = sector_indices(n_sites, n_up)
    return HermitianMatrix(h.entries[np.ix_(indices, indices)])
