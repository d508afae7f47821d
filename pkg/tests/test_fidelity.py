import numpy as np
import pytest

from src.evolution.engine import evolve_piecewise
from src.metrics.fidelity import (
    OverlapSeries,
    fidelity,
    occupation_series,
    overlap_series,
    spatial_spread,
)
from src.model.ring import RingSpec
from src.model.schedule import PhaseSchedule
from src.model.state import (
    Basis,
    QuantumState,
    embed_one_magnon,
    magnon_state,
    random_state,
)
from src.utils.error import BasisMismatchError, InvalidStateError

# Settings
seed = 2
nruns = 10

rng = np.random.default_rng(seed)
pairs = [
    (random_state(Basis.one_magnon(n), rng), random_state(Basis.one_magnon(n), rng))
    for n in rng.integers(3, 20, nruns)
]


@pytest.mark.parametrize("a,b", pairs)
def test_fidelity_is_symmetric_and_bounded(a, b):
    value = fidelity(a, b)
    assert value == fidelity(b, a)
    assert 0 <= value <= 1
    assert fidelity(a, a) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("a,b", pairs)
def test_fidelity_ignores_global_phase(a, b):
    rotated = QuantumState(a.basis, np.exp(0.7j) * a.amplitudes)
    assert fidelity(rotated, b) == pytest.approx(fidelity(a, b), abs=1e-12)


def test_fidelity_of_orthogonal_states():
    assert fidelity(magnon_state(4, 0), magnon_state(4, 1)) == 0


def test_fidelity_needs_one_basis():
    with pytest.raises(BasisMismatchError):
        fidelity(magnon_state(4, 0), embed_one_magnon(magnon_state(4, 0), 4))


def test_overlaps_sum_to_one():
    spec = RingSpec(8, 1.0, 100.0)
    trajectory = evolve_piecewise(
        magnon_state(8, 0), spec, PhaseSchedule.constant(0.0), np.linspace(0, 3, 25)
    )
    series = overlap_series(trajectory)
    assert series.values.shape == (25, 8)
    assert np.allclose(series.values.sum(axis=1), 1, atol=1e-9)
    assert series.values[0, 0] == pytest.approx(1)
    rows = list(series.rows())
    assert len(rows) == 25 * 8
    assert rows[0] == (0.0, 0, pytest.approx(1.0))


def test_occupations_match_overlaps_for_one_magnon():
    spec = RingSpec(5, 1.0, 2.0, chi=[0.1, 0, 0.2, 0, 0])
    times = np.linspace(0, 2, 9)
    schedule = PhaseSchedule.step(0.3, 1.0)
    reduced = evolve_piecewise(magnon_state(5, 1), spec, schedule, times)
    full = evolve_piecewise(embed_one_magnon(magnon_state(5, 1), 5), spec, schedule, times)
    assert np.allclose(
        occupation_series(full).values, overlap_series(reduced).values, atol=1e-10
    )
    with pytest.raises(BasisMismatchError):
        overlap_series(full)
    with pytest.raises(BasisMismatchError):
        occupation_series(reduced)


def test_overlap_series_checks_values():
    with pytest.raises(InvalidStateError):
        OverlapSeries(np.array([0.0]), np.array([0, 1]), np.array([[0.5, 1.5]]))
    with pytest.raises(InvalidStateError):
        OverlapSeries(np.array([0.0, 1.0]), np.array([0, 1]), np.array([[0.5, 0.5]]))


@pytest.mark.parametrize("site,origin,expected", [(0, 0, 0.0), (3, 0, 3.0), (8, 0, 2.0), (1, 9, 2.0)])
def test_spatial_spread_uses_ring_distance(site, origin, expected):
    assert spatial_spread(magnon_state(10, site), origin) == pytest.approx(expected)


def test_spatial_spread_needs_one_magnon_state():
    with pytest.raises(BasisMismatchError):
        spatial_spread(embed_one_magnon(magnon_state(4, 0), 4))
