"""
Tests for the sum-over-states tensor, its denominators and the
representation-equivalence audit.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from hyperpol.errors import InputValidationError, ResonanceError
from hyperpol.models import BetaTensor, DampingConvention, MolecularModel, Representation
from hyperpol.molecule import random_model, rotate_model, to_fluctuation
from hyperpol.response import (
    CompensatedSum,
    denominator,
    equivalence_report,
    evaluate_beta,
    kleinman_asymmetry,
    max_relative_difference,
    off_resonant_grid,
    rotate_tensor,
    symmetrize,
    two_sum,
)

from .conftest import make_model

# Dyadic components keep a uniform diagonal shift exact
dyadic = st.integers(min_value=-64, max_value=64).map(lambda n: n / 16.0)


def _with_widths(model: MolecularModel, width: float) -> MolecularModel:
    widths = np.full(model.n_levels, width)
    widths[0] = 0.0
    return MolecularModel(
        label=model.label,
        energies=model.energies,
        widths=widths,
        dipoles=model.dipoles,
        representation=model.representation,
    )


def _residual(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)) / np.max(np.abs(a)))


class TestSummation:

    def test_two_sum_is_exact(self):
        s, t = two_sum(np.float64(1e16), np.float64(1.0))
        assert s == 1e16
        assert t == 1.0

    def test_compensated_sum_recovers_lost_unit(self):
        total = CompensatedSum(dtype=float)
        for value in (1e16, 1.0, -1e16):
            total.add(value)

        assert total.total() == 1.0
        assert total.count == 3
        assert (1e16 + 1.0) - 1e16 == 0.0

    def test_complex_arrays(self):
        total = CompensatedSum((2,))
        total.add([1e16 + 1e16j, 0.0])
        total.add([1.0 + 1.0j, 2.0])
        total.add([-1e16 - 1e16j, 0.0])
        np.testing.assert_array_equal(total.total(), [1.0 + 1.0j, 2.0])


class TestDenominator:

    def test_undamped_value(self, two_level):
        assert complex(denominator(two_level, 1, 2, 0.1)) == pytest.approx(-0.1)
        assert complex(denominator(two_level, 1, -1, 0.1)) == pytest.approx(-0.4)
        assert complex(denominator(two_level, 0, 1, 0.1)) == pytest.approx(0.1)

    def test_damping_conventions(self, two_level):
        damped = _with_widths(two_level, 0.01)

        assert complex(denominator(damped, 1, -2, 0.1, DampingConvention.CONSTANT_SIGN)).imag == pytest.approx(0.01)
        assert complex(denominator(damped, 1, -2, 0.1, DampingConvention.SIGN_ALTERNATING)).imag == pytest.approx(-0.01)
        assert complex(denominator(damped, 1, 2, 0.1, DampingConvention.SIGN_ALTERNATING)).imag == pytest.approx(0.01)
        assert complex(denominator(damped, 1, 2, 0.1, DampingConvention.NONE)).imag == 0.0

    def test_resonance_raises(self, two_level):
        with pytest.raises(ResonanceError) as error:
            denominator(two_level, 1, 1, 0.3)
        assert error.value.level == 1
        assert error.value.multiple == 1
        assert "resonance singularity" in str(error.value)

    def test_damping_lifts_resonance(self, two_level):
        damped = _with_widths(two_level, 0.01)
        value = complex(denominator(damped, 1, 1, 0.3, DampingConvention.CONSTANT_SIGN))
        assert value == pytest.approx(0.01j)

    def test_invalid_multiple(self, two_level):
        with pytest.raises(InputValidationError):
            denominator(two_level, 1, 3, 0.1)


class TestTwoLevelOracle:
    """beta_xxx = |mu_ge|^2 dmu (1/(0.1*0.2) + 1/(0.4*0.2) + 1/(0.4*0.5)) = 135."""

    def test_fluctuation(self, two_level):
        beta = evaluate_beta(to_fluctuation(two_level), 0.1)
        assert beta.component(0, 0, 0) == pytest.approx(135.0, rel=1e-12)
        assert beta.representation == Representation.FLUCTUATION

    def test_standard(self, two_level):
        beta = evaluate_beta(two_level, 0.1)
        assert beta.component(0, 0, 0) == pytest.approx(135.0, rel=1e-12)

    def test_other_components_vanish(self, two_level):
        components = np.array(evaluate_beta(two_level, 0.1).components)
        components[0, 0, 0] = 0.0
        assert np.all(components == 0.0)

    def test_nonpositive_omega_rejected(self, two_level):
        with pytest.raises(InputValidationError):
            evaluate_beta(two_level, 0.0)


class TestEquivalence:

    def test_random_models(self, random_models):
        for model in random_models:
            for omega in off_resonant_grid(model, 4):
                report = equivalence_report(model, float(omega))
                assert report.max_rel_diff_symmetrized <= 1e-10

    def test_raw_tensors_differ(self, rng):
        model = random_model(3, rng)
        report = equivalence_report(model, 0.07)
        assert report.max_rel_diff_raw > 1e-6

    def test_needs_standard_model(self, two_level):
        with pytest.raises(InputValidationError):
            equivalence_report(to_fluctuation(two_level), 0.1)

    def test_symmetrized_flag_matches_symmetrize(self, rng):
        model = random_model(3, rng)
        direct = evaluate_beta(model, 0.06, symmetrized=True)
        after = symmetrize(evaluate_beta(model, 0.06))

        assert direct.symmetrized and after.symmetrized
        assert _residual(direct.components, after.components) <= 1e-12

    def test_symmetrize_idempotent(self, two_level):
        once = symmetrize(evaluate_beta(two_level, 0.1))
        assert symmetrize(once) is once

    @settings(max_examples=20, deadline=None)
    @given(shift=st.tuples(dyadic, dyadic, dyadic), seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_uniform_diagonal_shift_invariance(self, shift, seed):
        model = random_model(3, np.random.default_rng(seed))
        dipoles = np.array(model.dipoles)
        for r in range(model.n_levels):
            dipoles[r, r] += shift
        shifted = model.model_copy(update={'dipoles': dipoles})

        for omega in off_resonant_grid(model, 3):
            a = evaluate_beta(model, float(omega), symmetrized=True)
            b = evaluate_beta(shifted, float(omega), symmetrized=True)
            assert max_relative_difference(a.components, b.components) <= 1e-10

    def test_off_resonant_grid_drops_resonances(self, two_level):
        grid = off_resonant_grid(two_level, 11, window=(0.1, 0.2), margin=0.005)
        assert np.all(np.abs(0.3 - 2.0 * grid) >= 0.005)
        assert len(grid) == 10

    def test_grid_count_validated(self, two_level):
        with pytest.raises(InputValidationError):
            off_resonant_grid(two_level, 0)


class TestKleinman:

    def test_static_limit(self, random_models):
        # Residual asymmetry is O(omega / E); 1e-10 keeps it well below 1e-8 for E >= 0.2
        for model in random_models:
            beta = evaluate_beta(to_fluctuation(model), 1e-10)
            assert kleinman_asymmetry(beta) <= 1e-8

    def test_broken_away_from_static_limit(self, rng):
        beta = evaluate_beta(to_fluctuation(random_model(3, rng)), 0.08)
        assert kleinman_asymmetry(beta) > 1e-4


class TestRotation:

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_rank_three_covariance(self, seed):
        rng = np.random.default_rng(seed)
        model = random_model(int(rng.integers(2, 6)), rng)
        rotation = Rotation.random(random_state=seed).as_matrix()
        omega = float(off_resonant_grid(model, 1)[0])

        rotate_then_evaluate = evaluate_beta(rotate_model(model, rotation), omega)
        evaluate_then_rotate = rotate_tensor(evaluate_beta(model, omega), rotation)

        assert _residual(evaluate_then_rotate.components, rotate_then_evaluate.components) <= 1e-10

    def test_rotate_tensor_identity(self, two_level):
        beta = evaluate_beta(two_level, 0.1)
        np.testing.assert_array_equal(rotate_tensor(beta, np.eye(3)).components, beta.components)


class TestDamping:

    def test_two_photon_resonance_finite_when_damped(self, two_level):
        with pytest.raises(ResonanceError):
            evaluate_beta(two_level, 0.15)

        damped = _with_widths(two_level, 1e-3)
        beta = evaluate_beta(damped, 0.15, DampingConvention.CONSTANT_SIGN)
        assert np.all(np.isfinite(beta.components))

    def test_damping_effect_shrinks_with_width(self, two_level):
        omega = 0.175
        undamped = evaluate_beta(two_level, omega).component(0, 0, 0)
        deviations = [
            abs(evaluate_beta(_with_widths(two_level, width), omega, DampingConvention.CONSTANT_SIGN)
                .component(0, 0, 0) - undamped)
            for width in (1e-3, 1e-4, 1e-5)
        ]
        assert deviations[0] > deviations[1] > deviations[2] > 0.0

    def test_conventions_differ_near_one_photon_resonance(self, two_level):
        damped = to_fluctuation(_with_widths(two_level, 0.01))
        constant = evaluate_beta(damped, 0.3, DampingConvention.CONSTANT_SIGN)
        alternating = evaluate_beta(damped, 0.3, DampingConvention.SIGN_ALTERNATING)
        assert max_relative_difference(constant.components, alternating.components) > 1e-3

    def test_conventions_agree_without_width(self, random_models):
        for model in random_models[:5]:
            constant = evaluate_beta(model, 0.07, DampingConvention.CONSTANT_SIGN)
            alternating = evaluate_beta(model, 0.07, DampingConvention.SIGN_ALTERNATING)
            assert max_relative_difference(constant.components, alternating.components) <= 1e-8


class TestRelativeDifference:

    def test_floor(self):
        assert max_relative_difference(np.zeros(3), np.zeros(3)) == 0.0

    def test_scale(self):
        assert max_relative_difference(np.array([1.0, 100.0]), np.array([1.0, 101.0])) == pytest.approx(1 / 101)

    def test_tensor_is_frozen(self, two_level):
        beta = evaluate_beta(two_level, 0.1)
        assert isinstance(beta, BetaTensor)
        with pytest.raises(ValueError):
            beta.components[0, 0, 0] = 0.0


def test_single_excited_level_model_matches_closed_form():
    """Fluctuation form of a two-level model along z with dmu = 3, mu_ge = 0.5."""
    model = make_model([0.0, 0.4], {(0, 1): [0.0, 0.0, 0.5], (1, 1): [0.0, 0.0, 3.0]})
    omega = 0.05
    energy = 0.4
    numerator = 0.5 * 3.0 * 0.5
    expected = numerator * (
        1.0 / ((-energy + 2 * omega) * (-energy + omega))
        + 1.0 / ((-energy - omega) * (-energy + omega))
        + 1.0 / ((-energy - omega) * (-energy - 2 * omega))
    )
    beta = evaluate_beta(model, omega)
    assert beta.component(2, 2, 2) == pytest.approx(expected, rel=1e-12)
