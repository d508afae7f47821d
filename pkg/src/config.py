"""
Module: Configurations

Public Constants:
    FULL_SPACE_MAX_SITES   (int)  : Largest ring handled in the full 2^N space
    HERMITIAN_TOL          (float): Entrywise conjugate-transpose tolerance
    NORM_TOL               (float): Allowed deviation of a state norm from 1
    UNITARY_TOL            (float): Allowed deviation of U†U from identity
    EMPTY_SECTOR_TOL       (float): In-sector weight below which projection fails
    THETA_QUANTUM          (float): Phase quantization of the spectrum cache key
    SPECTRUM_CACHE_SIZE    (int)  : Number of eigendecompositions kept in memory
    MIN_STEPS_PER_PERIOD   (int)  : Coarsest stepped-integrator grid allowed
    STEPS_PER_PERIOD       (int)  : Default stepped-integrator grid
    DEFAULT_MASTER_SEED    (int)  : Master seed used when none is given
    FIGURE_DEFAULTS        (dict) : Per-experiment default parameters
"""

from math import pi
from typing import Any

# Config to be edited
FULL_SPACE_MAX_SITES = 14

HERMITIAN_TOL = 1e-12
NORM_TOL = 1e-9
UNITARY_TOL = 1e-10
EMPTY_SECTOR_TOL = 1e-14

THETA_QUANTUM = 1e-15
SPECTRUM_CACHE_SIZE = 16

MIN_STEPS_PER_PERIOD = 64
STEPS_PER_PERIOD = 2048

DEFAULT_MASTER_SEED = 20_070_402

# Not taken from the figures: N, sample counts and sweep grids are our choices
FIGURE_DEFAULTS: dict[str, dict[str, Any]] = {
    "fig1": {
        "ring": {"n_sites": 40, "coupling": 1.0, "field": 100.0},
        "schedule": {"kind": "constant", "theta0": 0.0},
        "grid": {"t_max": 10.0, "n_time_samples": 400},
    },
    "fig2": {
        "ring": {"n_sites": 40, "coupling": 1.0, "field": 100.0},
        "schedule": {"kind": "step", "theta0": pi / 2, "period": pi},
        "grid": {"n_periods": 50, "n_time_samples": 400},
    },
    "fig3": {
        "ring": {"n_sites": 20, "coupling": 1.0, "field": 100.0},
        "schedule": {
            "kind": "fourier",
            "theta0": pi / 2,
            "period": pi,
            "harmonics": [5, 13, 25, 50, 100],
        },
        "grid": {"n_periods": 50, "steps_per_period": STEPS_PER_PERIOD},
    },
    "noise-sweep": {
        "ring": {"n_sites": 8, "coupling": 1.0, "field": 100.0},
        "schedule": {"kind": "step", "theta0": pi / 2, "period": pi},
        "grid": {"n_periods": 1},
        "disorder": {"sigma_chi": 0.1, "n_realizations": 200},
        "sweep": {"sigma_eta": [0.0, 0.01, 0.02, 0.05, 0.1], "n_up": 1},
    },
    "revival-sweep": {
        "ring": {"n_sites": 20, "coupling": 1.0, "field": 100.0},
        "schedule": {"kind": "step", "theta0": pi / 2, "period": pi},
        "grid": {"n_periods": 20},
        "disorder": {"sigma_chi": 0.0, "n_realizations": 100},
        "sweep": {"sigma_eta": [0.0, 0.01, 0.02, 0.05, 0.1]},
    },
    "custom": {
        "ring": {"n_sites": 6, "coupling": 1.0, "field": 100.0},
        "schedule": {"kind": "step", "theta0": pi / 2, "period": pi},
        "grid": {"n_periods": 5, "n_time_samples": 100},
        "initial": {"basis": "full", "flipped_sites": [0]},
    },
}
