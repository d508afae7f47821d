"""
Module: Spectral propagators exp(−iĤΔt)

Public Classes:
    Spectrum     : Eigendecomposition Ĥ = V ε V†
    Propagator   : Unitary matrix carrier
    SpectrumCache: Thread-safe LRU of spectra keyed by (register, basis, θ)

Public Functions:
    diagonalize          : Eigendecomposition of a Hermitian matrix
    interval_propagator  : U = exp(−iĤΔt) for a constant Ĥ
    spectral_coefficients: Coefficients c_α = ⟨α|ψ⟩ in the eigenbasis of Ĥ
    hamiltonian_for      : Ĥ(θ) in a full-space or one-magnon basis
    hamiltonian_spectrum : Cached spectrum of Ĥ(θ) for a register and basis

Public Constants:
    SPECTRUM_CACHE (SpectrumCache): Process-wide cache
"""

from __future__ import annotations

import threading
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Hashable

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from .. import config
from ..model.ring import (
    HermitianMatrix,
    RingSpec,
    build_full_hamiltonian,
    build_one_magnon_hamiltonian,
)
from ..model.state import Basis, BasisKind, QuantumState
from ..utils.error import DimensionMismatchError, SpectrumError


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigendecomposition Ĥ = V ε V†, eigenvalues ascending

    Public Attributes:
        energies (NDArray[np.float64])   : Eigenvalues ε
        vectors  (NDArray[np.complex128]): Eigenvectors as columns of V

    Public Methods:
        phases   : Diagonal exp(−iεΔt)
        apply    : Propagate an amplitude vector by Δt
        unitary  : Dense exp(−iĤΔt)
    """

    energies: NDArray[np.float64]
    vectors: NDArray[np.complex128]

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    def phases(self, dt: float) -> NDArray[np.complex128]:
        return np.exp(-1j * self.energies * dt)

    def apply(self, amplitudes: NDArray[np.complex128], dt: float) -> NDArray[np.complex128]:
        """
        Propagate an amplitude vector by Δt without forming the dense unitary

        Args:
            amplitudes (NDArray[np.complex128]): State amplitudes
            dt         (float)                 : Duration

        Returns:
            (NDArray[np.complex128]): V diag(e^{−iεΔt}) V† ψ
        """
        coefficients = self.vectors.conj().T @ amplitudes
        return self.vectors @ (self.phases(dt) * coefficients)

    def unitary(self, dt: float) -> NDArray[np.complex128]:
        return (self.vectors * self.phases(dt)) @ self.vectors.conj().T


@dataclass(frozen=True, eq=False)
class Propagator:
    """
    Unitary matrix carrier, checked at construction

    Args:
        entries (NDArray[np.complex128]): Square unitary matrix

    Public Attributes:
        entries (NDArray[np.complex128]): Square unitary matrix, read-only
        dim     (readonly int)          : Matrix dimension
    """

    entries: NDArray[np.complex128]

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(
                f"Propagator must be square, got shape {entries.shape}"
            )
        deviation = np.max(
            np.abs(entries.conj().T @ entries - np.eye(entries.shape[0])), initial=0.0
        )
        if deviation > config.UNITARY_TOL:
            raise SpectrumError(f"Propagator deviates from unitarity by {deviation:.3e}")
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def diagonalize(h: HermitianMatrix) -> Spectrum:
    """
    Eigendecomposition of a Hermitian matrix

    Args:
        h (HermitianMatrix): Matrix to diagonalize

    Returns:
        (Spectrum): Ascending eigenvalues and orthonormal eigenvectors

    Raises:
        SpectrumError: Non-finite entries or solver failure
    """
    if not np.all(np.isfinite(h.entries)):
        raise SpectrumError("Cannot diagonalize a matrix with non-finite entries")
    try:
        energies, vectors = scipy.linalg.eigh(h.entries)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise SpectrumError(f"Eigendecomposition failed: {err}") from err
    return Spectrum(energies, vectors)


def interval_propagator(h: HermitianMatrix, dt: float) -> Propagator:
    """
    U = V diag(e^{−iε_k Δt}) V† for a Hamiltonian constant over Δt

    Args:
        h  (HermitianMatrix): Generator Ĥ
        dt (float)          : Duration, finite

    Returns:
        (Propagator): exp(−iĤΔt)
    """
    if not np.isfinite(dt):
        raise SpectrumError(f"Non-finite duration dt={dt}")
    return Propagator(diagonalize(h).unitary(dt))


def spectral_coefficients(initial: QuantumState, h: HermitianMatrix) -> NDArray[np.complex128]:
    """
    Coefficients c_α = ⟨α|ψ⟩ of a state in the eigenbasis of Ĥ

    Args:
        initial (QuantumState)   : State ψ
        h       (HermitianMatrix): Hamiltonian Ĥ

    Returns:
        (NDArray[np.complex128]): Coefficients, ordered by ascending eigenvalue
    """
    if initial.basis.dim != h.dim:
        raise DimensionMismatchError(
            f"State of length {initial.basis.dim} vs Hamiltonian of dimension {h.dim}"
        )
    return diagonalize(h).vectors.conj().T @ initial.amplitudes


class SpectrumCache:
    """
    Thread-safe LRU of spectra

    Concurrent misses on the same key may both diagonalize; the first stored
    result wins, so every caller sees the same spectrum.

    Args:
        maxsize (int): Number of spectra kept

    Public Methods:
        get_or_compute: Look a spectrum up, computing it on a miss
        clear         : Drop every entry
    """

    def __init__(self, maxsize: int) -> None:
        self._maxsize = maxsize
        self._entries: OrderedDict[Hashable, Spectrum] = OrderedDict()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def get_or_compute(self, key: Hashable, compute: Callable[[], Spectrum]) -> Spectrum:
        with self._lock:
            if key in self._entries:
                self._entries.move_to_end(key)
                return self._entries[key]

        spectrum = compute()

        with self._lock:
            stored = self._entries.setdefault(key, spectrum)
            self._entries.move_to_end(key)
            while len(self._entries) > self._maxsize:
                self._entries.popitem(last=False)
            return stored

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()


SPECTRUM_CACHE = SpectrumCache(config.SPECTRUM_CACHE_SIZE)


def hamiltonian_for(spec: RingSpec, basis: Basis, theta: float) -> HermitianMatrix:
    """
    Ĥ(θ) in the requested basis

    Args:
        spec  (RingSpec): Register description
        basis (Basis)   : Full space or one-magnon sector
        theta (float)   : Hopping phase

    Returns:
        (HermitianMatrix): Hamiltonian matrix
    """
    if basis.n_sites != spec.n_sites:
        raise DimensionMismatchError(
            f"Basis of N={basis.n_sites} for a register of N={spec.n_sites}"
        )
    if basis.kind is BasisKind.FULL:
        return build_full_hamiltonian(spec, theta)
    return build_one_magnon_hamiltonian(spec, theta)


def hamiltonian_spectrum(spec: RingSpec, basis: Basis, theta: float) -> Spectrum:
    """
    Spectrum of Ĥ(θ), cached by (register, basis, θ quantized)

    Args:
        spec  (RingSpec): Register description
        basis (Basis)   : Full space or one-magnon sector
        theta (float)   : Hopping phase

    Returns:
        (Spectrum): Eigendecomposition of Ĥ(θ)
    """
    key = (spec.key, basis.kind, round(theta / config.THETA_QUANTUM))
    return SPECTRUM_CACHE.get_or_compute(
        key, lambda: diagonalize(hamiltonian_for(spec, basis, theta))
    )
