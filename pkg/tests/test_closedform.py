"""
Unit tests for the closed-form catalogue.

Every registered identity is checked on its default grid against its
numerical side, plus a handful of hand-derived special values.
"""

import math
from fractions import Fraction

import pytest

from invbinom.binom import Family
from invbinom.closedform import (
    BOUNDARY_TOL,
    REGISTRY,
    S30_TABLE,
    IdentityId,
    closed_eval,
    deriv_relation_check,
    get_identity,
    lhs_eval,
    series_spec,
    tolerance,
)
from invbinom.exceptions import DomainError

LOG3 = math.log(3.0)
PHI = (1 + math.sqrt(5)) / 2

GRID_CASES = [(identity, p) for identity, spec in REGISTRY.items() for p in spec.grid]


class TestRegistry:
    """Test the registry and its lookups."""

    def test_every_identity_registered(self):
        """Test that each tag has an entry."""
        assert set(REGISTRY) == set(IdentityId)
        for identity, spec in REGISTRY.items():
            assert spec.identity is identity
            assert spec.grid
            assert spec.tol > 0

    def test_lookup_by_name(self):
        """Test case-insensitive lookup."""
        assert get_identity("thm12") is REGISTRY[IdentityId.THM12]
        assert get_identity(IdentityId.LANDEN).identity is IdentityId.LANDEN

    def test_unknown_identity(self):
        """Test that unknown names raise DomainError."""
        with pytest.raises(DomainError):
            get_identity("THM99")

    def test_series_spec(self):
        """Test the series behind a parametrised identity."""
        spec = series_spec(IdentityId.THM12, -2.0)
        assert spec.family is Family.C3
        assert spec.z == pytest.approx(8 / 3, abs=1e-15)
        assert series_spec(IdentityId.LANDEN, 0.3) is None

    def test_tolerance(self):
        """Test that boundary series get the looser tolerance."""
        assert tolerance(IdentityId.THM12, -1.0) == 1e-11
        assert tolerance(IdentityId.TBL_S30, 0.0) == BOUNDARY_TOL
        assert tolerance(IdentityId.ARCSIN_SQ, 2.0) == BOUNDARY_TOL
        assert tolerance(IdentityId.ARCSIN_SQ, 1.0) == 1e-10


class TestDomains:
    """Test parameter domains."""

    @pytest.mark.parametrize(
        "identity, param",
        [
            (IdentityId.THM11, 0.0),
            (IdentityId.THM12, 0.95),
            (IdentityId.THM12, -3.0),
            (IdentityId.THM12, 0.5 + 0.1j),
            (IdentityId.THM13A, 0.2),
            (IdentityId.THM13B, 0.5),
            (IdentityId.LOGLOG_TAU, -1.0),
            (IdentityId.LANDEN, 2.0),
            (IdentityId.HK_OVER_K_GF, 1.0),
            (IdentityId.EQ_KP1_HALF, 0.6),
            (IdentityId.TBL_S30, 0.25),
        ],
    )
    def test_outside_domain(self, identity, param):
        """Test that closed_eval rejects parameters outside the domain."""
        with pytest.raises(DomainError):
            closed_eval(identity, param)

    def test_zero_allowed_where_defined(self):
        """Test that x = 0 gives the empty sum where the domain includes it."""
        assert closed_eval(IdentityId.THM12, 0.0) == 0
        assert lhs_eval(IdentityId.THM12, 0.0).value == 0


# ==========================================================================
# Special values
# ==========================================================================


class TestSpecialValues:
    """Test closed forms against hand-derived constants."""

    def test_thm12_at_minus_two(self):
        """Test x = -2, where z3 = 8/3 and q = -pi/2."""
        expected = math.pi**2 / 6 - LOG3**2 / 2
        assert closed_eval(IdentityId.THM12, -2.0).real == pytest.approx(expected, abs=1e-14)
        assert S30_TABLE[Fraction(1, 6)] == pytest.approx(expected, abs=1e-14)

    def test_reference_series_value(self):
        """Test the z = 1/2 value pi^2/24 - log^2(2)/2."""
        assert closed_eval(IdentityId.COR_K2, 0.5).real == pytest.approx(0.1710070, abs=1e-7)

    def test_x2k_at_one(self):
        """Test X = 1, which gives pi^2/9 - 4 log^2(phi)."""
        expected = math.pi**2 / 9 - 4 * math.log(PHI) ** 2
        assert closed_eval(IdentityId.X2K_K2_C4, 1.0).real == pytest.approx(expected, abs=1e-14)

    def test_thm13a_at_half(self):
        """Test that X = 1/2 reproduces the fixed z = 4 evaluation."""
        general = closed_eval(IdentityId.THM13A, 0.5)
        fixed = closed_eval(IdentityId.EQ_4K_KP1, 4.0)
        assert general == pytest.approx(fixed, abs=1e-12)
        assert fixed.real == pytest.approx(1.4320252, abs=1e-6)

    @pytest.mark.parametrize("identity", [IdentityId.THM13B, IdentityId.THM14])
    def test_quartic_symmetry(self, identity):
        """Test invariance under x -> 1 - x, which fixes z4."""
        assert closed_eval(identity, 2.0) == pytest.approx(closed_eval(identity, -1.0), abs=1e-12)

    def test_thm14_value(self):
        """Test the x = 2 value."""
        assert closed_eval(IdentityId.THM14, 2.0).real == pytest.approx(-0.31994, abs=1e-5)

    def test_t16_is_real(self):
        """Test that the GPL combination is real on the grid."""
        for identity in (IdentityId.T16_HK_4K1, IdentityId.T16_HK_4K3):
            assert abs(closed_eval(identity, 2.0).imag) < 1e-9

    def test_t15_tau_terms_are_real(self):
        """Test that i (Li2(-1/tau+) - Li2(-1/tau-)) contributes a real value."""
        assert abs(closed_eval(IdentityId.T15_HK_H3K_3K1, -1.0).imag) < 1e-12
        assert abs(closed_eval(IdentityId.R_H2K_H3K, -1.0).imag) < 1e-12

    def test_arcsin_square(self):
        """Test 2 arcsin^2(w/2) at w = 1."""
        assert closed_eval(IdentityId.ARCSIN_SQ, 1.0).real == pytest.approx(math.pi**2 / 18, abs=1e-15)


# ==========================================================================
# Grids
# ==========================================================================


class TestIdentityGrids:
    """Test every identity on its default grid."""

    @pytest.mark.parametrize("identity, param", GRID_CASES, ids=lambda v: str(getattr(v, "value", v)))
    def test_closed_matches_numerical(self, identity, param):
        """Test |closed form - numerical side| within the identity tolerance."""
        diff = abs(closed_eval(identity, param) - lhs_eval(identity, param).value)
        assert diff <= tolerance(identity, param)

    def test_s30_boundary(self):
        """Test the nu = 0 row, summed on the radius of convergence."""
        result = lhs_eval(IdentityId.TBL_S30, 0.0)
        assert "BOUNDARY_SLOW" in result.notes
        assert abs(result.value - closed_eval(IdentityId.TBL_S30, 0.0)) <= BOUNDARY_TOL

    def test_arcsin_boundary(self):
        """Test w = 2, where the series sits on its radius."""
        result = lhs_eval(IdentityId.ARCSIN_SQ, 2.0)
        assert result.value.real == pytest.approx(math.pi**2 / 2, abs=BOUNDARY_TOL)


class TestConsistencyChecks:
    """Test the derivative relation."""

    @pytest.mark.parametrize("x", [-1.0, 0.5])
    def test_derivative_relation(self, x):
        """Test the first-order derivative relation by central differences."""
        assert deriv_relation_check(1, x) < 1e-7

    def test_derivative_preconditions(self):
        """Test the order and domain checks."""
        with pytest.raises(ValueError):
            deriv_relation_check(2, 0.5)
        with pytest.raises(DomainError):
            deriv_relation_check(1, 0.0)
        with pytest.raises(DomainError):
            deriv_relation_check(1, 0.89, h=0.01)
