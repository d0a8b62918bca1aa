"""
Unit tests for harmonic numbers, parametrisations and polylogarithms.
"""

import cmath
import math
from fractions import Fraction

import pytest

from invbinom.exceptions import BranchCutError, DomainError
from invbinom.specfun import (
    CUBIC_RADIUS,
    arccot,
    artanh,
    c_const,
    catalan,
    harmonic,
    li_n,
    principal_sqrt,
    q_of,
    r_frak,
    r_frak_product,
    solve_x_from_z3,
    solve_x_from_z4,
    tau_pm,
    xi,
    z3_of,
    z4_of,
    zeta,
)

LOG2 = math.log(2.0)
ZETA3 = 1.2020569031595942


class TestElementary:
    """Test the scalar helpers."""

    def test_harmonic(self):
        """Test small harmonic numbers of orders 1 and 2."""
        assert harmonic(0) == 0.0
        assert harmonic(4) == pytest.approx(25 / 12, abs=1e-15)
        assert harmonic(3, 2) == pytest.approx(1 + 1 / 4 + 1 / 9, abs=1e-15)

    def test_harmonic_preconditions(self):
        """Test that negative m or r < 1 raise ValueError."""
        with pytest.raises(ValueError):
            harmonic(-1)
        with pytest.raises(ValueError):
            harmonic(3, 0)

    def test_c_const(self):
        """Test c and its defining property c^3/(c-1) = -27/4."""
        c = c_const()
        assert c == pytest.approx(0.8941, abs=1e-4)
        assert c**3 / (c - 1) == pytest.approx(-27 / 4, abs=1e-12)

    def test_principal_sqrt(self):
        """Test the branch convention on the negative axis."""
        assert principal_sqrt(-1) == 1j
        assert principal_sqrt(complex(-4, -0.0)) == 2j
        assert principal_sqrt(4) == 2

    def test_artanh_and_arccot(self):
        """Test the inverse functions against the standard library."""
        assert artanh(0.5) == pytest.approx(math.atanh(0.5), abs=1e-15)
        assert artanh(-1j) == pytest.approx(-1j * math.pi / 4, abs=1e-15)
        assert arccot(1.0) == pytest.approx(math.pi / 4, abs=1e-15)

    def test_constants(self):
        """Test zeta values and Catalan's constant."""
        assert zeta(2) == pytest.approx(math.pi**2 / 6, abs=1e-15)
        assert zeta(3) == pytest.approx(ZETA3, abs=1e-15)
        assert catalan() == pytest.approx(0.915965594177219, abs=1e-15)
        with pytest.raises(DomainError):
            zeta(1)


class TestParametrisations:
    """Test q, tau, xi and r_nu."""

    def test_q_at_minus_two(self):
        """Test q(-2) = -pi/2 and continuity across -2."""
        assert q_of(-2.0) == pytest.approx(-math.pi / 2, abs=1e-15)
        assert q_of(-2.0 - 1e-9) == pytest.approx(q_of(-2.0 + 1e-9), abs=1e-8)

    def test_q_matches_arctan_branch(self):
        """Test q against the arctan form on (-2, 1)."""
        for x in (-1.5, -0.5, 0.3, 0.8):
            expected = math.atan(x / (x + 2) * math.sqrt((3 + x) / (1 - x)))
            assert q_of(x) == pytest.approx(expected, abs=1e-14)

    def test_q_below_minus_two(self):
        """Test the shifted branch on (-3, -2)."""
        x = -2.5
        expected = math.atan(x / (x + 2) * math.sqrt((3 + x) / (1 - x))) - math.pi
        assert q_of(x) == pytest.approx(expected, abs=1e-14)

    def test_q_domain(self):
        """Test that q is undefined outside (-3, 1)."""
        with pytest.raises(DomainError):
            q_of(1.0)
        with pytest.raises(DomainError):
            q_of(-3.5)

    def test_tau_pair(self):
        """Test conjugacy and the product (1-x)/x^2."""
        plus, minus = tau_pm(-1.0)
        assert plus == minus.conjugate()
        assert plus * minus == pytest.approx(2.0, abs=1e-14)
        with pytest.raises(DomainError):
            tau_pm(0.0)

    def test_tau_roots_of_quadratic(self):
        """Test that both taus solve x t^2 - (1-x) t + (1-x)/x = 0."""
        x = 0.5
        for tau in tau_pm(x):
            assert x * tau * tau - (1 - x) * tau + (1 - x) / x == pytest.approx(0, abs=1e-13)

    def test_xi_letters(self):
        """Test that xi_{0,0} + xi_{1,1} = 1 and xi(2) is off the real axis."""
        for x in (2.0, -1.0, 0.3 + 0.2j):
            assert xi(0, 0, x) + xi(1, 1, x) == pytest.approx(1.0, abs=1e-15)
        assert abs(xi(0, 0, 2.0).imag) == pytest.approx(0.5, abs=1e-15)
        with pytest.raises(DomainError):
            xi(0, 1, 1.0)
        with pytest.raises(ValueError):
            xi(2, 0, 2.0)

    @pytest.mark.parametrize("nu", [Fraction(1, 5), Fraction(1, 9), Fraction(3, 10), Fraction(5, 12), 0.0])
    def test_r_frak_forms_agree(self, nu):
        """Test the two expressions of r_nu."""
        assert r_frak(nu) == pytest.approx(r_frak_product(nu), rel=1e-12)

    def test_r_frak_values(self):
        """Test r_0 = 27/4, r_{1/6} = 8/3 and the pole at nu = 1/2."""
        assert r_frak(0) == CUBIC_RADIUS
        assert r_frak(Fraction(1, 6)) == pytest.approx(8 / 3, abs=1e-14)
        with pytest.raises(DomainError):
            r_frak(Fraction(1, 2))


class TestInversions:
    """Test solve_x_from_z3 and solve_x_from_z4."""

    @pytest.mark.parametrize("x", [-2.9, -2.0, -1.0, -0.01, 0.3, 0.8, 0.89])
    def test_z3_roundtrip(self, x):
        """Test x -> z3 -> x."""
        assert solve_x_from_z3(z3_of(x)) == pytest.approx(x, abs=1e-12)

    def test_z3_endpoints(self):
        """Test the boundary and zero."""
        assert solve_x_from_z3(27 / 4) == -3.0
        assert solve_x_from_z3(0.0) == 0.0
        with pytest.raises(DomainError):
            solve_x_from_z3(-27 / 4)

    @pytest.mark.parametrize("x", [1.21, 1.5, 2.0, 10.0])
    def test_z4_roundtrip(self, x):
        """Test x -> z4 -> x on the upper branch."""
        assert solve_x_from_z4(z4_of(x).real) == pytest.approx(x, abs=1e-12)

    def test_z4_range(self):
        """Test that only (-16, 0) is accepted."""
        with pytest.raises(DomainError):
            solve_x_from_z4(1.0)


class TestPolylog:
    """Test classical polylogarithms."""

    def test_li1(self):
        """Test Li_1(z) = -log(1-z)."""
        assert li_n(1, 0.5) == pytest.approx(LOG2, abs=1e-15)

    def test_li2_special_values(self):
        """Test Li_2 at 1, -1, 1/2 and i."""
        assert li_n(2, 1) == pytest.approx(math.pi**2 / 6, abs=1e-14)
        assert li_n(2, -1) == pytest.approx(-(math.pi**2) / 12, abs=1e-14)
        assert li_n(2, 0.5) == pytest.approx(math.pi**2 / 12 - LOG2**2 / 2, abs=1e-14)
        assert li_n(2, 1j) == pytest.approx(complex(-(math.pi**2) / 48, catalan()), abs=1e-14)

    def test_li3_half(self):
        """Test Li_3(1/2) = 7 zeta(3)/8 - pi^2 log2/12 + log^3 2/6."""
        expected = 7 * ZETA3 / 8 - math.pi**2 * LOG2 / 12 + LOG2**3 / 6
        assert li_n(3, 0.5) == pytest.approx(expected, abs=1e-14)

    def test_li3_inversion(self):
        """Test Li_3(-2) - Li_3(-1/2) = -pi^2 log2/6 - log^3 2/6."""
        lhs = li_n(3, -2.0) - li_n(3, -0.5)
        assert lhs == pytest.approx(-(math.pi**2) * LOG2 / 6 - LOG2**3 / 6, abs=1e-13)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_negative_zero_imaginary_part(self, n):
        """Test that -2 - 0j lands on the principal branch like -2."""
        value = li_n(n, complex(-2.0, -0.0))
        assert value == pytest.approx(li_n(n, -2.0), abs=1e-14)
        assert value.imag == pytest.approx(0.0, abs=1e-14)

    def test_li3_at_minus_two(self):
        """Test Li_3(-2) = -1.66828..."""
        assert li_n(3, complex("-2-0j")).real == pytest.approx(-1.6682833639, abs=1e-8)

    def test_li4_on_unit_circle(self):
        """Test Im Li_4(i) = beta(4)."""
        assert li_n(4, 1j).imag == pytest.approx(0.988944551741105, abs=1e-13)

    def test_li_n_at_one_and_minus_one(self):
        """Test zeta and eta values."""
        assert li_n(5, 1) == pytest.approx(zeta(5), abs=1e-15)
        assert li_n(3, -1) == pytest.approx(-0.75 * ZETA3, abs=1e-15)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_regions_agree(self, n):
        """Test continuity where the evaluation switches method."""
        for r in (0.75, 1.4):
            z = r * cmath.exp(0.7j)
            assert li_n(n, z * (1 - 1e-9)) == pytest.approx(li_n(n, z * (1 + 1e-9)), abs=1e-8)

    def test_branch_cut(self):
        """Test that real arguments beyond 1 raise BranchCutError."""
        with pytest.raises(BranchCutError):
            li_n(3, 2.0)

    def test_order_range(self):
        """Test that only orders 1..5 are supported."""
        with pytest.raises(DomainError):
            li_n(6, 0.5)
