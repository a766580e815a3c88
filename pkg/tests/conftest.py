"""
Shared fixtures for the test suite.
"""

from pathlib import Path

import numpy as np
import pytest

from hyperpol.models import MolecularModel
from hyperpol.molecule import random_model

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / 'data'
CONFIG_PATH = ROOT / 'config.yaml'


def make_model(energies, dipole_entries, widths=None, label="test"):
    """Standard-representation model from {(r, s): vector} entries (mirrored)."""
    n_levels = len(energies)
    dipoles = np.zeros((n_levels, n_levels, 3))
    for (r, s), vector in dipole_entries.items():
        dipoles[r, s] = vector
        dipoles[s, r] = vector
    return MolecularModel(
        label=label,
        energies=energies,
        widths=widths if widths is not None else np.zeros(n_levels),
        dipoles=dipoles,
    )


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def config_path() -> Path:
    return CONFIG_PATH


@pytest.fixture
def two_level() -> MolecularModel:
    """E = 0.3, mu_ge = x, mu_gg = 5x, mu_ee = 7x (dipole shift 2x)."""
    return make_model(
        [0.0, 0.3],
        {(0, 0): [5.0, 0.0, 0.0], (0, 1): [1.0, 0.0, 0.0], (1, 1): [7.0, 0.0, 0.0]},
        label="two-level",
    )


@pytest.fixture
def polar_two_level() -> MolecularModel:
    """mu_gg = z, mu_ge = 0.5 z, mu_ee = 3 z (dipole shift 2z)."""
    return make_model(
        [0.0, 0.3],
        {(0, 0): [0.0, 0.0, 1.0], (0, 1): [0.0, 0.0, 0.5], (1, 1): [0.0, 0.0, 3.0]},
        label="polar",
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def random_models(rng):
    """Twenty seeded models cycling through 2..5 levels."""
    return [random_model((2, 3, 4, 5)[i % 4], rng, label=f"random-{i}") for i in range(20)]
