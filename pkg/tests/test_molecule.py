"""
Tests for molecule loading, unit conversion and representation transforms.
"""

import json

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from hyperpol.errors import InputValidationError
from hyperpol.models import MolecularModel, Representation
from hyperpol.molecule import (
    AU_PER_DEBYE,
    HARTREE_PER_EV,
    from_atomic,
    load_model,
    load_model_file,
    model_to_document,
    random_model,
    rotate_model,
    to_atomic,
    to_fluctuation,
)


def _document(**overrides):
    document = {
        'name': 'doc',
        'units': {'energy': 'hartree', 'dipole': 'au'},
        'levels': [{'energy': 0.0}, {'energy': 0.3, 'width': 0.01}],
        'dipoles': {'0,0': [5.0, 0.0, 0.0], '0,1': [1.0, 0.0, 0.0], '1,1': [7.0, 0.0, 0.0]},
    }
    document.update(overrides)
    return document


class TestLoadModel:

    def test_loads_example_file(self, data_dir):
        model = load_model_file(data_dir / 'twolevel.json')

        assert model.n_levels == 2
        assert model.representation == Representation.STANDARD
        np.testing.assert_array_equal(model.energies, [0.0, 0.3])
        np.testing.assert_array_equal(model.dipoles[1, 0], [1.0, 0.0, 0.0])
        np.testing.assert_array_equal(model.ground_dipole, [5.0, 0.0, 0.0])

    def test_accepts_json_text(self):
        model = load_model(json.dumps(_document()))
        assert model.label == 'doc'
        assert model.widths[1] == pytest.approx(0.01)

    def test_reversed_key_fills_both_entries(self):
        model = load_model(_document(dipoles={'1,0': [0.0, 2.0, 0.0]}))
        np.testing.assert_array_equal(model.dipoles[0, 1], [0.0, 2.0, 0.0])
        np.testing.assert_array_equal(model.dipoles[1, 0], [0.0, 2.0, 0.0])

    def test_conflicting_orders_rejected(self):
        with pytest.raises(InputValidationError, match="asymmetric dipole matrix"):
            load_model(_document(dipoles={'0,1': [1.0, 0.0, 0.0], '1,0': [1.5, 0.0, 0.0]}))

    def test_agreeing_orders_accepted(self):
        model = load_model(_document(dipoles={'0,1': [1.0, 0.0, 0.0], '1,0': [1.0, 0.0, 0.0]}))
        np.testing.assert_array_equal(model.dipoles[0, 1], [1.0, 0.0, 0.0])

    def test_missing_ground_level(self):
        with pytest.raises(InputValidationError, match="missing ground level"):
            load_model(_document(levels=[{'energy': 0.1}, {'energy': 0.3}]))
        with pytest.raises(InputValidationError, match="missing ground level"):
            load_model(_document(levels=[]))

    def test_negative_excitation_energy(self):
        with pytest.raises(InputValidationError, match="negative excitation energy"):
            load_model(_document(levels=[{'energy': 0.0}, {'energy': -0.2}]))

    def test_non_monotone_energies(self):
        levels = [{'energy': 0.0}, {'energy': 0.5}, {'energy': 0.3}]
        with pytest.raises(InputValidationError, match="non-monotone"):
            load_model(_document(levels=levels, dipoles={}))

    def test_negative_width(self):
        with pytest.raises(InputValidationError, match="negative width"):
            load_model(_document(levels=[{'energy': 0.0}, {'energy': 0.3, 'width': -1e-3}]))

    def test_unknown_unit(self):
        with pytest.raises(InputValidationError, match="unknown energy unit"):
            load_model(_document(units={'energy': 'kcal'}))

    def test_bad_key_and_out_of_range_level(self):
        with pytest.raises(InputValidationError):
            load_model(_document(dipoles={'0-1': [1.0, 0.0, 0.0]}))
        with pytest.raises(InputValidationError, match="beyond"):
            load_model(_document(dipoles={'0,2': [1.0, 0.0, 0.0]}))

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputValidationError, match="not found"):
            load_model_file(tmp_path / 'absent.json')

    def test_ev_and_debye_round_trip(self):
        document = _document(
            units={'energy': 'eV', 'dipole': 'debye'},
            levels=[{'energy': 0.0}, {'energy': 3.1, 'width': 0.05}],
            dipoles={'0,1': [2.5, -1.0, 0.5]},
        )
        model = load_model(document)

        assert model.energies[1] == pytest.approx(3.1 * HARTREE_PER_EV, rel=1e-15)
        np.testing.assert_allclose(from_atomic(model.energies, 'eV'), [0.0, 3.1], rtol=1e-12)
        np.testing.assert_allclose(from_atomic(model.widths, 'eV'), [0.0, 0.05], rtol=1e-12)
        np.testing.assert_allclose(from_atomic(model.dipoles[0, 1], 'debye'), [2.5, -1.0, 0.5], rtol=1e-12)

    def test_document_round_trip(self, two_level):
        reloaded = load_model(model_to_document(two_level))

        np.testing.assert_array_equal(reloaded.energies, two_level.energies)
        np.testing.assert_array_equal(reloaded.dipoles, two_level.dipoles)


class TestUnits:

    def test_known_factors(self):
        assert HARTREE_PER_EV == pytest.approx(1.0 / 27.211386, rel=1e-7)
        assert AU_PER_DEBYE == pytest.approx(0.393430, rel=1e-5)
        assert to_atomic(1.0, 'angstrom') == pytest.approx(1.8897261, rel=1e-7)

    def test_unknown_unit(self):
        with pytest.raises(InputValidationError, match="unknown unit"):
            to_atomic(1.0, 'furlong')


class TestModelInvariants:

    def test_asymmetric_matrix_rejected(self):
        dipoles = np.zeros((2, 2, 3))
        dipoles[0, 1] = [1.0, 0.0, 0.0]
        with pytest.raises(ValueError, match="asymmetric dipole matrix"):
            MolecularModel(energies=[0.0, 0.3], widths=[0.0, 0.0], dipoles=dipoles)

    def test_ground_width_must_vanish(self):
        with pytest.raises(ValueError, match="ground level width"):
            MolecularModel(energies=[0.0, 0.3], widths=[0.01, 0.0], dipoles=np.zeros((2, 2, 3)))

    def test_fluctuation_requires_zero_ground_moment(self, two_level):
        with pytest.raises(ValueError, match="zero ground-state moment"):
            MolecularModel(
                energies=two_level.energies,
                widths=two_level.widths,
                dipoles=two_level.dipoles,
                representation=Representation.FLUCTUATION,
            )

    def test_arrays_are_read_only(self, two_level):
        with pytest.raises(ValueError):
            two_level.dipoles[0, 0, 0] = 1.0


class TestToFluctuation:

    def test_two_level_example(self, two_level):
        fluctuation = to_fluctuation(two_level)

        assert fluctuation.representation == Representation.FLUCTUATION
        np.testing.assert_array_equal(fluctuation.dipoles[0, 0], [0.0, 0.0, 0.0])
        np.testing.assert_array_equal(fluctuation.dipoles[1, 1], [2.0, 0.0, 0.0])
        np.testing.assert_array_equal(fluctuation.dipoles[0, 1], [1.0, 0.0, 0.0])

    def test_zero_ground_moment_is_relabel(self, rng):
        model = random_model(3, rng)
        dipoles = np.array(model.dipoles)
        dipoles[0, 0] = 0.0
        model = model.model_copy(update={'dipoles': dipoles})

        fluctuation = to_fluctuation(model)
        np.testing.assert_array_equal(fluctuation.dipoles, model.dipoles)

    def test_idempotent(self, random_models):
        for model in random_models:
            once = to_fluctuation(model)
            twice = to_fluctuation(once)
            np.testing.assert_array_equal(once.dipoles, twice.dipoles)
            np.testing.assert_array_equal(once.energies, model.energies)

    def test_only_diagonal_changes(self, random_models):
        for model in random_models:
            fluctuation = to_fluctuation(model)
            off_diagonal = ~np.eye(model.n_levels, dtype=bool)
            np.testing.assert_array_equal(fluctuation.dipoles[off_diagonal], model.dipoles[off_diagonal])


class TestRotateModel:

    def test_proper_rotation(self, two_level):
        rotation = Rotation.from_euler('z', 90, degrees=True).as_matrix()
        rotated = rotate_model(two_level, rotation)
        np.testing.assert_allclose(rotated.dipoles[0, 1], [0.0, 1.0, 0.0], atol=1e-15)

    def test_improper_rotation_rejected(self, two_level):
        with pytest.raises(InputValidationError, match="improper rotation"):
            rotate_model(two_level, np.diag([1.0, 1.0, -1.0]))

    def test_non_orthogonal_rejected(self, two_level):
        with pytest.raises(InputValidationError, match="non-orthogonal rotation"):
            rotate_model(two_level, np.diag([1.0, 2.0, 0.5]))

    @pytest.mark.parametrize("seed", range(5))
    def test_composition(self, rng, seed):
        model = random_model(3, rng)
        first = Rotation.random(random_state=seed).as_matrix()
        second = Rotation.random(random_state=seed + 100).as_matrix()

        stepwise = rotate_model(rotate_model(model, first), second)
        combined = rotate_model(model, second @ first)

        np.testing.assert_allclose(stepwise.dipoles, combined.dipoles, rtol=0.0, atol=1e-12)
        np.testing.assert_array_equal(stepwise.energies, model.energies)


class TestRandomModel:

    def test_ranges_and_symmetry(self, rng):
        model = random_model(5, rng)

        assert model.n_levels == 5
        assert np.all(np.diff(model.energies[1:]) >= 0.0)
        assert np.all((model.energies[1:] >= 0.2) & (model.energies[1:] <= 0.6))
        assert np.all(np.abs(model.dipoles) <= 2.0)
        np.testing.assert_array_equal(model.dipoles, model.dipoles.transpose(1, 0, 2))

    def test_moments_on_dyadic_grid(self, rng):
        model = random_model(4, rng)
        scaled = model.dipoles * 2.0 ** 32
        np.testing.assert_array_equal(scaled, np.round(scaled))

    def test_seed_reproducible(self):
        a = random_model(3, np.random.default_rng(7))
        b = random_model(3, np.random.default_rng(7))
        np.testing.assert_array_equal(a.dipoles, b.dipoles)
        np.testing.assert_array_equal(a.energies, b.energies)
