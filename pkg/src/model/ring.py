"""
Module: Closed-ring register and its Hamiltonians

Basis conventions, used everywhere:
 - Site 0 is the least-significant bit of a computational-basis index and
   spin-up is bit 1
 - The phase e^{iθ} multiplies σᵢ⁺σᵢ₊₁⁻, indices increasing around the ring,
   and χᵢ belongs to bond (i, i+1 mod N)
 - ħ = 1

Public Classes:
    RingSpec       : Static register description
    HermitianMatrix: Hermitian matrix carrier

Public Functions:
    build_full_hamiltonian      : Ĥ(θ) on the full 2^N space
    build_one_magnon_hamiltonian: Ĥ(θ) restricted to the one-magnon sector
    interaction_hamiltonian     : XY part of Ĥ(θ) on the full space
    local_hamiltonian           : B Σσᶻ on the full space
    noise_hamiltonian           : Σηᵢσᵢᶻ on the full space
    magnetization_operator      : M = Σσᶻ on the full space
    commutator_norm             : Max-norm of AB − BA
    check_full_space            : Guard against rings too large for 2^N
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from .. import config
from ..utils.error import (
    DimensionMismatchError,
    FullSpaceTooLargeError,
    InvalidRingSpecError,
    NotHermitianError,
)


@dataclass(frozen=True, eq=False)
class RingSpec:
    """
    Static register description

    Args:
        n_sites  (int)              : Number of qubits N, at least 3
        coupling (float)            : Average XY coupling λ
        field    (float)            : Half-energy gap B
        chi      (Sequence[float])  : Bond coupling disorder χᵢ (default zeros)
        eta      (Sequence[float])  : Site field disorder ηᵢ (default zeros)

    Public Attributes:
        n_sites  (int)                 : Number of qubits N
        coupling (float)               : Average XY coupling λ
        field    (float)               : Half-energy gap B
        chi      (NDArray[np.float64]) : Bond coupling disorder, read-only
        eta      (NDArray[np.float64]) : Site field disorder, read-only
        key      (readonly tuple)      : Hashable identity used by caches

    Public Methods:
        with_disorder: Copy with new disorder vectors
    """

    n_sites: int
    coupling: float
    field: float
    chi: Optional[NDArray[np.float64]] = None
    eta: Optional[NDArray[np.float64]] = None

    def __post_init__(self) -> None:
        if int(self.n_sites) != self.n_sites or self.n_sites < 3:
            raise InvalidRingSpecError(
                f"A closed ring needs at least 3 sites: n_sites={self.n_sites}"
            )
        object.__setattr__(self, "n_sites", int(self.n_sites))
        object.__setattr__(self, "coupling", float(self.coupling))
        object.__setattr__(self, "field", float(self.field))
        object.__setattr__(self, "chi", self._disorder_vector("chi", self.chi))
        object.__setattr__(self, "eta", self._disorder_vector("eta", self.eta))

        if not (np.isfinite(self.coupling) and np.isfinite(self.field)):
            raise InvalidRingSpecError(
                f"Non-finite coupling or field: λ={self.coupling}, B={self.field}"
            )

    def _disorder_vector(
        self, name: str, values: Optional[Sequence[float]]
    ) -> NDArray[np.float64]:
        if values is None:
            vector = np.zeros(self.n_sites)
        else:
            vector = np.array(values, dtype=np.float64)
        if vector.shape != (self.n_sites,):
            raise InvalidRingSpecError(
                f"`{name}` must have exactly {self.n_sites} entries, "
                f"got shape {vector.shape}"
            )
        if not np.all(np.isfinite(vector)):
            raise InvalidRingSpecError(f"`{name}` has non-finite entries")
        vector.flags.writeable = False
        return vector

    @property
    def key(self) -> tuple:
        return (
            self.n_sites,
            self.coupling,
            self.field,
            self.chi.tobytes(),
            self.eta.tobytes(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingSpec):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def with_disorder(
        self,
        chi: Optional[Sequence[float]] = None,
        eta: Optional[Sequence[float]] = None,
    ) -> RingSpec:
        """
        Copy with new disorder vectors; `None` keeps the current vector

        Args:
            chi (Sequence[float] | None): Bond coupling disorder
            eta (Sequence[float] | None): Site field disorder

        Returns:
            (RingSpec): New register description
        """
        return RingSpec(
            self.n_sites,
            self.coupling,
            self.field,
            self.chi if chi is None else chi,
            self.eta if eta is None else eta,
        )


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """
    Hermitian matrix carrier, checked at construction

    Args:
        entries (NDArray[np.complex128]): Square matrix

    Public Attributes:
        entries (NDArray[np.complex128]): Square matrix, read-only
        dim     (readonly int)          : Matrix dimension
    """

    entries: NDArray[np.complex128]

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(
                f"Hermitian matrix must be square, got shape {entries.shape}"
            )
        deviation = np.max(np.abs(entries - entries.conj().T), initial=0.0)
        if deviation > config.HERMITIAN_TOL:
            raise NotHermitianError(
                f"Matrix differs from its conjugate transpose by {deviation:.3e}"
            )
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: HermitianMatrix) -> HermitianMatrix:
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries + other.entries)

    def __sub__(self, other: HermitianMatrix) -> HermitianMatrix:
        _check_same_dim(self, other)
        return HermitianMatrix(self.entries - other.entries)


def check_full_space(n_sites: int) -> None:
    """
    Guard against rings too large for the full 2^N space

    Args:
        n_sites (int): Number of qubits

    Raises:
        FullSpaceTooLargeError: `n_sites` exceeds `FULL_SPACE_MAX_SITES`
    """
    if n_sites > config.FULL_SPACE_MAX_SITES:
        raise FullSpaceTooLargeError(n_sites)


def _site_bits(n_sites: int) -> NDArray[np.int64]:
    """
    Occupation bits of every basis index, shape (2^N, N)
    """
    indices = np.arange(1 << n_sites)
    return (indices[:, None] >> np.arange(n_sites)[None, :]) & 1


def _sigma_z_diagonal(n_sites: int, weights: NDArray[np.float64]) -> NDArray[np.float64]:
    """
    Diagonal of Σᵢ wᵢσᵢᶻ in the computational basis
    """
    return (2 * _site_bits(n_sites) - 1) @ weights


def local_hamiltonian(spec: RingSpec) -> HermitianMatrix:
    """
    B Σσᶻ on the full space

    Args:
        spec (RingSpec): Register description

    Returns:
        (HermitianMatrix): Diagonal 2^N×2^N matrix
    """
    check_full_space(spec.n_sites)
    weights = np.full(spec.n_sites, spec.field)
    return HermitianMatrix(np.diag(_sigma_z_diagonal(spec.n_sites, weights)))


def noise_hamiltonian(spec: RingSpec) -> HermitianMatrix:
    """
    Σηᵢσᵢᶻ on the full space

    Args:
        spec (RingSpec): Register description

    Returns:
        (HermitianMatrix): Diagonal 2^N×2^N matrix
    """
    check_full_space(spec.n_sites)
    return HermitianMatrix(np.diag(_sigma_z_diagonal(spec.n_sites, spec.eta)))


def interaction_hamiltonian(spec: RingSpec, theta: float) -> HermitianMatrix:
    """
    XY part −Σᵢ(λ+χᵢ)(e^{iθ}σᵢ⁺σᵢ₊₁⁻ + h.c.) on the full space

    Args:
        spec  (RingSpec): Register description
        theta (float)   : Hopping phase θ

    Returns:
        (HermitianMatrix): 2^N×2^N matrix
    """
    check_full_space(spec.n_sites)
    n_sites = spec.n_sites
    dim = 1 << n_sites
    entries = np.zeros((dim, dim), dtype=np.complex128)
    indices = np.arange(dim)
    phase = np.exp(1j * theta)

    for site in range(n_sites):
        nxt = (site + 1) % n_sites
        # σ_site⁺σ_nxt⁻ moves the up spin from `nxt` to `site`
        movable = ((indices >> nxt) & 1 == 1) & ((indices >> site) & 1 == 0)
        sources = indices[movable]
        targets = sources ^ (1 << site) ^ (1 << nxt)
        amplitude = -(spec.coupling + spec.chi[site]) * phase
        entries[targets, sources] += amplitude
        entries[sources, targets] += np.conj(amplitude)

    return HermitianMatrix(entries)


def build_full_hamiltonian(spec: RingSpec, theta: float) -> HermitianMatrix:
    """
    Ĥ(θ) = −Σᵢ(λ+χᵢ)(e^{iθ}σᵢ⁺σᵢ₊₁⁻ + h.c.) + Σᵢ(B+ηᵢ)σᵢᶻ on the full space

    Args:
        spec  (RingSpec): Register description
        theta (float)   : Hopping phase θ

    Returns:
        (HermitianMatrix): 2^N×2^N matrix

    Raises:
        FullSpaceTooLargeError: More than `FULL_SPACE_MAX_SITES` sites
    """
    check_full_space(spec.n_sites)
    weights = spec.field + spec.eta
    diagonal = _sigma_z_diagonal(spec.n_sites, weights)
    entries = interaction_hamiltonian(spec, theta).entries + np.diag(diagonal)
    return HermitianMatrix(entries)


def build_one_magnon_hamiltonian(spec: RingSpec, theta: float) -> HermitianMatrix:
    """
    Ĥ(θ) restricted to span{|Ψ_d⟩}, |Ψ_d⟩ having its only up spin at site d

    Args:
        spec  (RingSpec): Register description
        theta (float)   : Hopping phase θ

    Returns:
        (HermitianMatrix): N×N matrix
    """
    n_sites = spec.n_sites
    sites = np.arange(n_sites)
    entries = np.zeros((n_sites, n_sites), dtype=np.complex128)

    hopping = -(spec.coupling + spec.chi) * np.exp(1j * theta)
    entries[sites, (sites + 1) % n_sites] = hopping
    entries[(sites + 1) % n_sites, sites] = np.conj(hopping)

    diagonal = (2 - n_sites) * spec.field + 2 * spec.eta - np.sum(spec.eta)
    entries[sites, sites] = diagonal
    return HermitianMatrix(entries)


def magnetization_operator(n_sites: int) -> HermitianMatrix:
    """
    M = Σσᶻ on the full space

    Args:
        n_sites (int): Number of qubits

    Returns:
        (HermitianMatrix): Diagonal 2^N×2^N matrix
    """
    check_full_space(n_sites)
    return HermitianMatrix(np.diag(_sigma_z_diagonal(n_sites, np.ones(n_sites))))


def commutator_norm(a: HermitianMatrix, b: HermitianMatrix) -> float:
    """
    Largest absolute entry of AB − BA

    Args:
        a (HermitianMatrix): First operand
        b (HermitianMatrix): Second operand

    Returns:
        (float): Entrywise max-norm of the commutator
    """
    _check_same_dim(a, b)
    product = a.entries @ b.entries
    commutator = product - b.entries @ a.entries
    return float(np.max(np.abs(commutator), initial=0.0))


def _check_same_dim(a: HermitianMatrix, b: HermitianMatrix) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"Dimensions differ: {a.dim} vs {b.dim}")
