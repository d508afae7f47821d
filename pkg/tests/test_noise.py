from math import pi

import numpy as np
import pytest

from src.evolution.propagator import diagonalize
from src.metrics.noise import (
    DisorderModel,
    SweepResult,
    attenuation_sweep,
    estimate_attenuation,
    estimate_revival_fidelity,
    sample_disorder,
    with_sigma_eta,
)
from src.model.ring import (
    RingSpec,
    build_full_hamiltonian,
    interaction_hamiltonian,
    noise_hamiltonian,
)
from src.model.schedule import PhaseSchedule
from src.model.state import sector_block, sector_indices
from src.utils.error import InvalidStateError

SEED = 1234
THETA0 = pi / 2


def test_disorder_streams_are_reproducible():
    model = DisorderModel(0.1, 0.2, SEED)
    chi, eta = sample_disorder(model, 6, 3)
    again_chi, again_eta = sample_disorder(model, 6, 3)
    assert np.array_equal(chi, again_chi) and np.array_equal(eta, again_eta)
    other_chi, _ = sample_disorder(model, 6, 4)
    assert not np.array_equal(chi, other_chi)
    seeded_chi, _ = sample_disorder(DisorderModel(0.1, 0.2, SEED + 1), 6, 3)
    assert not np.array_equal(chi, seeded_chi)


def test_bond_disorder_does_not_depend_on_site_noise():
    quiet_chi, quiet_eta = sample_disorder(DisorderModel(0.1, 0.0, SEED), 5, 0)
    noisy_chi, noisy_eta = sample_disorder(DisorderModel(0.1, 0.3, SEED), 5, 0)
    assert np.array_equal(quiet_chi, noisy_chi)
    assert np.all(quiet_eta == 0)
    assert np.allclose(noisy_eta / 0.3, sample_disorder(DisorderModel(0.1, 1.0, SEED), 5, 0)[1])


def test_disorder_model_validation():
    with pytest.raises(ValueError):
        DisorderModel(-0.1, 0.0)
    with pytest.raises(ValueError):
        DisorderModel(0.0, 0.0, -1)
    assert with_sigma_eta(DisorderModel(0.1, 0.0, 5), 0.2) == DisorderModel(0.1, 0.2, 5)


def test_sweep_result_aggregation():
    result = SweepResult.from_samples("x", [0.9, 1.0, 0.8], 7)
    assert result.mean_fidelity == pytest.approx(0.9)
    assert result.std_error == pytest.approx(0.1 / np.sqrt(3))
    assert result.n_realizations == 3 and result.master_seed == 7
    assert SweepResult.from_samples("y", [0.5], 7).std_error == 0
    with pytest.raises(ValueError):
        SweepResult.from_samples("z", [], 7)


@pytest.mark.parametrize("n_up", [1, 2, 3])
def test_eigenstates_of_the_reference_hamiltonian(n_up):
    # H(θ₀)|γ⟩ = (ε_l − ε₁)|γ⟩ + 2H_err|γ⟩ and H(θ₀+π)|γ⟩ = (ε_l + ε₁)|γ⟩
    rng = np.random.default_rng(n_up)
    n_sites = 6
    spec = RingSpec(
        n_sites,
        1.0,
        100.0,
        chi=0.1 * rng.standard_normal(n_sites),
        eta=0.1 * rng.standard_normal(n_sites),
    )
    h_1 = noise_hamiltonian(spec) - interaction_hamiltonian(spec, THETA0)
    spectrum = diagonalize(sector_block(h_1, n_up))
    indices = sector_indices(n_sites, n_up)
    local_energy = spec.field * (2 * n_up - n_sites)
    h_err = noise_hamiltonian(spec).entries
    h_ref = build_full_hamiltonian(spec, THETA0).entries
    h_flip = build_full_hamiltonian(spec, THETA0 + pi).entries

    for energy, vector in zip(spectrum.energies, spectrum.vectors.T):
        gamma = np.zeros(1 << n_sites, dtype=complex)
        gamma[indices] = vector
        expected_ref = (local_energy - energy) * gamma + 2 * h_err @ gamma
        assert np.allclose(h_ref @ gamma, expected_ref, atol=1e-9)
        assert np.allclose(h_flip @ gamma, (local_energy + energy) * gamma, atol=1e-9)


def test_no_site_noise_means_no_attenuation():
    spec = RingSpec(6, 1.0, 100.0)
    estimates = attenuation_sweep(spec, DisorderModel(0.1, 0.0, SEED), THETA0, pi, 5)
    assert len(estimates) == 6
    for estimate in estimates:
        assert estimate.a_modulated == pytest.approx(1, abs=1e-9)
        assert estimate.a_unmodulated == pytest.approx(1, abs=1e-9)


@pytest.mark.parametrize("sigma_eta", [0.05, 0.1])
def test_modulation_attenuates_less(sigma_eta):
    # One period shorter than the inverse bandwidth of H₁
    period = 0.25
    spec = RingSpec(6, 1.0, 100.0)
    model = DisorderModel(0.1, sigma_eta, SEED)
    estimates = attenuation_sweep(spec, model, THETA0, period, 20)
    for estimate in estimates:
        slack = 2 * estimate.combined_std_error + 1e-12
        assert estimate.a_modulated >= estimate.a_unmodulated - slack
        assert estimate.a_unmodulated < 1
    mean_mod = np.mean([estimate.a_modulated for estimate in estimates])
    mean_unmod = np.mean([estimate.a_unmodulated for estimate in estimates])
    assert mean_mod > mean_unmod
    assert estimates[0].sigma_1 > 0


@pytest.mark.slow
@pytest.mark.parametrize("sigma_eta", [0.0, 0.01, 0.02, 0.05, 0.1])
def test_attenuation_ordering_on_the_default_grid(sigma_eta):
    # λT = 1/4 keeps every gap of H(θ₀) times T below π
    spec = RingSpec(8, 1.0, 100.0)
    model = DisorderModel(0.1, sigma_eta, SEED)
    estimates = attenuation_sweep(spec, model, THETA0, 0.25, 200)
    assert len(estimates) == 8
    for estimate in estimates:
        assert estimate.modulated.n_realizations == 200
        if sigma_eta == 0:
            assert estimate.a_modulated == pytest.approx(1, abs=1e-9)
            assert estimate.a_unmodulated == pytest.approx(1, abs=1e-9)
        else:
            slack = 2 * estimate.combined_std_error
            assert estimate.a_modulated >= estimate.a_unmodulated - slack
            assert estimate.a_unmodulated < 1


def test_attenuation_in_a_two_magnon_sector():
    spec = RingSpec(5, 1.0, 100.0)
    estimates = attenuation_sweep(spec, DisorderModel(0.1, 0.1, SEED), THETA0, 0.25, 4, n_up=2)
    assert [estimate.gamma_index for estimate in estimates] == list(range(10))


def test_attenuation_is_independent_of_worker_count():
    spec = RingSpec(5, 1.0, 100.0)
    model = DisorderModel(0.1, 0.1, SEED)
    serial = attenuation_sweep(spec, model, THETA0, pi, 6, workers=1)
    pooled = attenuation_sweep(spec, model, THETA0, pi, 6, workers=3)
    assert serial == pooled


def test_single_eigenstate_estimate():
    spec = RingSpec(5, 1.0, 100.0)
    model = DisorderModel(0.1, 0.1, SEED)
    single = estimate_attenuation(spec, model, THETA0, pi, 2, 4)
    assert single == attenuation_sweep(spec, model, THETA0, pi, 4)[2]
    with pytest.raises(InvalidStateError):
        estimate_attenuation(spec, model, THETA0, pi, 5, 4)


def test_revival_fidelity_without_site_noise():
    spec = RingSpec(8, 1.0, 100.0)
    results = estimate_revival_fidelity(
        spec, DisorderModel(0.1, 0.0, SEED), PhaseSchedule.step(THETA0, pi), 5, 6
    )
    assert len(results) == 5
    for result in results:
        assert result.mean_fidelity == pytest.approx(1, abs=1e-9)
        assert result.n_realizations == 6


def test_site_noise_degrades_revivals():
    spec = RingSpec(8, 1.0, 100.0)
    results = estimate_revival_fidelity(
        spec, DisorderModel(0.0, 0.2, SEED), PhaseSchedule.step(THETA0, pi), 5, 6, workers=2
    )
    assert results[-1].mean_fidelity < 1 - 1e-4
    assert results[-1].configuration == (0.2, 5)
    with pytest.raises(ValueError):
        estimate_revival_fidelity(spec, DisorderModel(), PhaseSchedule.constant(), 5, 6)


def test_revival_fidelity_falls_with_site_noise():
    spec = RingSpec(8, 1.0, 100.0)
    schedule = PhaseSchedule.step(THETA0, pi)
    sweep = [
        estimate_revival_fidelity(spec, DisorderModel(0.0, sigma_eta, SEED), schedule, 5, 30)
        for sigma_eta in (0.0, 0.005, 0.01, 0.02)
    ]
    for quieter, noisier in zip(sweep, sweep[1:]):
        for before, after in zip(quieter, noisier):
            slack = 2 * np.hypot(before.std_error, after.std_error) + 1e-12
            assert after.mean_fidelity <= before.mean_fidelity + slack
    assert sweep[-1][-1].mean_fidelity < sweep[1][-1].mean_fidelity
