"""
Unit tests for the constitutive laws.
"""

import math

import numpy as np
import pytest

from ph_string.core.material import (
    MaterialKind,
    MaterialLaw,
    axial_stiffness,
    energy_derivative,
    greenspan_derivative,
    greenspan_derivative_dC_next,
    greenspan_derivative_dC_next_fd,
    line_density,
    material_from_name,
    second_derivative,
    stored_energy_density,
    stress,
    tension,
)
from ph_string.utils.error_handling import ConfigurationError, MaterialDomainError
from tests.fixtures.oracles import secant_series, stored_energy, tension_value


pytestmark = pytest.mark.unit


class TestMaterialLaw:
    """Construction of material laws."""

    def test_from_name_accepts_variants(self):
        """Names are case-insensitive and accept underscores."""
        law = material_from_name("St_Venant_Kirchhoff", 20.0)
        assert law.kind is MaterialKind.ST_VENANT_KIRCHHOFF
        assert law.name == "st-venant-kirchhoff"

    def test_unknown_name(self):
        """Unknown law names are configuration errors on material.kind."""
        with pytest.raises(ConfigurationError, match="material.kind"):
            material_from_name("rubber", 20.0)

    @pytest.mark.parametrize("EA", [0.0, -1.0, math.nan])
    def test_nonpositive_stiffness(self, EA):
        """EA must be positive."""
        with pytest.raises(ConfigurationError, match="material.EA"):
            MaterialLaw(MaterialKind.HYPERELASTIC, EA)

    def test_rubber_constants(self):
        """Rubber cross-section values give EA of about 20 N and rhoA of about 1 kg/m."""
        assert axial_stiffness(18400.0, 0.0186) == pytest.approx(20.0, rel=1e-3)
        assert line_density(920.0, 0.0186) == pytest.approx(1.0, rel=1e-3)


class TestEnergyDensity:
    """Stored energy, stress and tension."""

    def test_reference_state_is_stress_free(self, law):
        """W(1) = 0 and S(1) = 0 for every law."""
        assert stored_energy_density(law, 1.0) == 0.0
        assert stress(law, 1.0) == 0.0
        assert tension(law, 1.0) == 0.0

    def test_hyperelastic_values(self, hyperelastic):
        """Closed-form values of the hyperelastic law with EA = 20."""
        assert stored_energy_density(hyperelastic, 2.0) == pytest.approx(1.534264097, rel=1e-9)
        assert stress(hyperelastic, 2.0) == pytest.approx(5.0)
        assert tension(hyperelastic, 2.0) == pytest.approx(15.0)

    def test_linear_elastic_values(self):
        """The linear-elastic tension is EA (nu - 1)."""
        law = MaterialLaw(MaterialKind.LINEAR_ELASTIC, 20.0)
        assert tension(law, 1.5) == pytest.approx(10.0)
        assert stored_energy_density(law, 2.25) == pytest.approx(2.5)

    @pytest.mark.parametrize("C", [0.3, 0.9, 1.7, 4.0])
    def test_matches_closed_form(self, law, C):
        """Energy density agrees with the closed-form oracle."""
        assert stored_energy_density(law, C) == pytest.approx(
            stored_energy(law.name, law.EA, C), rel=1e-13, abs=1e-15
        )

    @pytest.mark.parametrize("nu", [0.6, 1.0, 1.3, 2.2])
    def test_tension_is_stress_times_stretch(self, law, nu):
        """N(nu) = S(nu^2) nu."""
        assert tension(law, nu) == pytest.approx(stress(law, nu**2) * nu, rel=1e-12, abs=1e-12)
        assert tension(law, nu) == pytest.approx(tension_value(law.name, law.EA, nu), rel=1e-12, abs=1e-12)

    def test_derivatives_match_finite_differences(self, law):
        """dW/dC and d2W/dC2 agree with central differences."""
        C = 1.37
        delta = 1e-6
        fd_first = (stored_energy_density(law, C + delta) - stored_energy_density(law, C - delta)) / (2 * delta)
        fd_second = (energy_derivative(law, C + delta) - energy_derivative(law, C - delta)) / (2 * delta)
        assert energy_derivative(law, C) == pytest.approx(fd_first, rel=1e-7)
        assert second_derivative(law, C) == pytest.approx(fd_second, rel=1e-6)

    def test_vectorized(self, law):
        """Arrays are evaluated elementwise."""
        C = np.array([0.5, 1.0, 2.0])
        values = stored_energy_density(law, C)
        assert isinstance(values, np.ndarray)
        assert values.shape == (3,)
        assert values[1] == 0.0

    @pytest.mark.parametrize("C", [0.0, -1.0])
    def test_nonpositive_strain(self, law, C):
        """Strains outside the domain raise MaterialDomainError."""
        with pytest.raises(MaterialDomainError):
            stored_energy_density(law, C)
        with pytest.raises(MaterialDomainError):
            stress(law, np.array([1.0, C]))

    def test_nonpositive_stretch(self, law):
        with pytest.raises(MaterialDomainError):
            tension(law, 0.0)


class TestGreenspanDerivative:
    """Discrete derivative of the stored energy."""

    @pytest.mark.parametrize("C_n, C_next", [(1.0, 1.5), (0.7, 2.4), (3.0, 0.8)])
    def test_secant_identity(self, law, C_n, C_next):
        """g (C1 - C0) equals W(C1) - W(C0) up to rounding."""
        g = greenspan_derivative(law, C_n, C_next)
        change = stored_energy_density(law, C_next) - stored_energy_density(law, C_n)
        assert g * (C_next - C_n) == pytest.approx(change, rel=1e-13, abs=1e-14)

    @pytest.mark.parametrize("C_n", [1.0, 1.3])
    @pytest.mark.parametrize("gap", [1e-5, -1e-6, 1e-7, 5e-8, 2e-8])
    def test_small_gaps_keep_full_accuracy(self, law, C_n, gap):
        """Secant slopes just above the switch match a series expansion."""
        expected, expected_derivative = secant_series(law.name, law.EA, C_n, gap)
        assert greenspan_derivative(law, C_n, C_n + gap) == pytest.approx(expected, abs=1e-13)
        assert greenspan_derivative_dC_next(law, C_n, C_n + gap) == pytest.approx(
            expected_derivative, rel=1e-9
        )

    def test_coincident_states(self, law):
        """Equal strains give the exact derivative."""
        assert greenspan_derivative(law, 1.8, 1.8) == energy_derivative(law, 1.8)

    def test_continuity_across_branch_switch(self, law):
        """Both branches agree near the switching threshold."""
        below = greenspan_derivative(law, 1.3, 1.3 * (1 + 5e-9))
        above = greenspan_derivative(law, 1.3, 1.3 * (1 + 5e-8))
        assert below == pytest.approx(above, rel=1e-6)

    def test_quadratic_law_equals_midpoint_derivative(self):
        """For St. Venant-Kirchhoff the secant slope is dW/dC at the midpoint."""
        law = MaterialLaw(MaterialKind.ST_VENANT_KIRCHHOFF, 20.0)
        C_n = np.array([0.6, 1.2, 2.9])
        C_next = np.array([1.9, 1.1, 0.7])
        np.testing.assert_allclose(
            greenspan_derivative(law, C_n, C_next),
            energy_derivative(law, 0.5 * (C_n + C_next)),
            rtol=1e-13,
        )

    def test_domain_error(self, law):
        with pytest.raises(MaterialDomainError):
            greenspan_derivative(law, 1.0, -0.5)

    def test_invalid_switch_tolerance(self, law):
        with pytest.raises(ConfigurationError, match="switch_tol"):
            greenspan_derivative(law, 1.0, 1.1, switch_tol=0.0)

    @pytest.mark.parametrize("C_n, C_next", [(1.0, 1.6), (2.0, 0.9), (1.4, 1.4)])
    def test_dC_next_matches_finite_differences(self, law, C_n, C_next):
        """Analytic slope of g with respect to C_next agrees with central differences."""
        analytic = greenspan_derivative_dC_next(law, C_n, C_next)
        numeric = greenspan_derivative_dC_next_fd(law, C_n, C_next)
        assert analytic == pytest.approx(numeric, rel=1e-4, abs=1e-6)

    def test_dC_next_coincident_branch(self, law):
        """The midpoint branch slope is half the second derivative."""
        assert greenspan_derivative_dC_next(law, 1.2, 1.2) == pytest.approx(
            0.5 * second_derivative(law, 1.2)
        )
