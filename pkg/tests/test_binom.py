"""
Unit tests for inverse binomial series and their integral representations.
"""

import math

import pytest

from invbinom.binom import (
    Family,
    IntegralRep,
    Numerator,
    SumSpec,
    Weighting,
    binomial,
    hprod_gf,
    inverse_binomial,
    iter_terms,
    rep_min_k,
    sum_family,
    sum_family_with_integral,
    term_closed,
    term_oracle_integral,
)
from invbinom.exceptions import BudgetExceededError, DomainError
from invbinom.numkit import Method
from invbinom.specfun import li_n

LOG2 = math.log(2.0)


# ==========================================================================
# Specs and terms
# ==========================================================================


class TestSumSpec:
    """Test SumSpec validation and the first summation index."""

    def test_binomials(self):
        """Test B(k) for each family, exact and from log-gamma."""
        assert binomial(Family.C2, 3) == 20
        assert binomial(Family.C3, 2) == 15
        assert binomial(Family.C4, 1) == 6
        assert inverse_binomial(Family.C3, 2) == pytest.approx(1 / 15, rel=1e-15)
        exact = math.comb(1000, 500)
        assert binomial(Family.C2, 500) == pytest.approx(float(exact), rel=1e-10)
        assert inverse_binomial(Family.C2, 400) * math.comb(800, 400) == pytest.approx(1.0, rel=1e-10)

    def test_radii(self):
        """Test the radii of convergence."""
        assert Family.C2.radius == 4.0
        assert Family.C3.radius == 27 / 4
        assert Family.C4.radius == 16.0

    def test_step_ratio(self):
        """Test that the step ratio is B(k+1)/B(k)."""
        for family in Family:
            for k in (0, 1, 5):
                assert family.step_ratio(k) == pytest.approx(binomial(family, k + 1) / binomial(family, k), rel=1e-14)

    @pytest.mark.parametrize(
        "r, numerator, weighting, expected",
        [
            (1, Numerator.ONE, Weighting.PLAIN, 1),
            (0, Numerator.ONE, Weighting.PLAIN, 0),
            (0, Numerator.ONE, Weighting.THREE_K_PLUS_1, 0),
            (0, Numerator.HK, Weighting.PLAIN, 1),
            (0, Numerator.HK_MINUS_H3K1, Weighting.THREE_K_PLUS_1, 0),
            (0, Numerator.ONE, Weighting.TWO_K_MINUS_1, 1),
            (0, Numerator.HKM1_MINUS_H3K, Weighting.PLAIN, 1),
            (-1, Numerator.ONE, Weighting.PLAIN, 1),
        ],
    )
    def test_start_k(self, r, numerator, weighting, expected):
        """Test where the series starts."""
        assert SumSpec(Family.C3, r, numerator, 1.0, weighting).start_k == expected

    def test_validation(self):
        """Test rejected specs."""
        with pytest.raises(ValueError):
            SumSpec(Family.C3, -2, Numerator.ONE, 1.0)
        with pytest.raises(ValueError):
            SumSpec(Family.C3, 1, Numerator.HPROD, 1.0)
        with pytest.raises(ValueError):
            SumSpec(Family.C3, 1, Numerator.HK, 1.0, powers=(1,))
        with pytest.raises(ValueError):
            SumSpec("C5", 1, Numerator.ONE, 1.0)

    def test_string_tags(self):
        """Test that tags may be given as strings."""
        spec = SumSpec("C4", 1, "HK", 2, "FOUR_K_PLUS_1")
        assert spec.family is Family.C4
        assert spec.numerator is Numerator.HK
        assert spec.weighting is Weighting.FOUR_K_PLUS_1
        assert spec.z == 2 + 0j


class TestIterTerms:
    """Test the summand stream."""

    def test_first_terms(self):
        """Test 1, 1/3, 1/15 for sum z^k/C(3k,k) at z = 1."""
        terms = iter_terms(SumSpec(Family.C3, 0, Numerator.ONE, 1.0))
        first = [next(terms) for _ in range(3)]
        assert [t.k for t in first] == [0, 1, 2]
        assert [t.value for t in first] == pytest.approx([1, 1 / 3, 1 / 15], rel=1e-15)

    def test_numerator_and_weight(self):
        """Test a harmonic numerator with a linear weight."""
        spec = SumSpec(Family.C2, 1, Numerator.HK, 2.0, Weighting.K_PLUS_1)
        term = next(iter_terms(spec))
        assert term.k == 1
        assert term.value == pytest.approx(1 * 2 / (1 * 2 * 2), rel=1e-15)

    def test_hprod_numerator(self):
        """Test a product of harmonic numbers of orders 1 and 2."""
        spec = SumSpec(Family.C2, 0, Numerator.HPROD, 1.0, powers=(1, 2))
        terms = iter_terms(spec)
        next(terms)
        second = next(terms)
        assert second.k == 2
        assert second.value == pytest.approx(1.5 * 1.25 / 6, rel=1e-15)

    def test_far_terms_stay_finite(self):
        """Test that z^k/B(k) is representable long after z^k overflows."""
        terms = iter_terms(SumSpec(Family.C4, 0, Numerator.ONE, -15.0))
        last = None
        for term in terms:
            if term.k == 400:
                last = term
                break
        assert math.isfinite(abs(last.value))
        assert 0 < abs(last.value) < 1


# ==========================================================================
# Summation
# ==========================================================================


class TestSumFamily:
    """Test sum_family inside the disk and on its boundary."""

    def test_reference_value(self):
        """Test sum (1/2)^k/(k^2 C(3k,k)) = pi^2/24 - log^2(2)/2."""
        result = sum_family(SumSpec(Family.C3, 1, Numerator.ONE_OVER_K, 0.5))
        assert result.value.real == pytest.approx(math.pi**2 / 24 - LOG2**2 / 2, abs=1e-13)
        assert result.value.real == pytest.approx(0.1710070, abs=1e-7)
        assert result.method is Method.DIRECT

    def test_interior_zero_term(self):
        """Test a series whose k = 2 term vanishes (H_2 - H_2)."""
        spec = SumSpec(Family.C3, 0, Numerator.HK_MINUS_H2KM2, -2.0, Weighting.TWO_K_MINUS_1)
        assert spec.start_k == 1
        harmonic = lambda m: math.fsum(1.0 / j for j in range(1, m + 1))  # noqa: E731
        expected = math.fsum(
            (harmonic(k) - harmonic(2 * k - 2)) * (-2.0) ** k / ((2 * k - 1) * math.comb(3 * k, k)) for k in range(1, 80)
        )
        result = sum_family(spec)
        assert result.value.real == pytest.approx(expected, abs=1e-14)
        assert result.work > 10

    def test_central_binomial(self):
        """Test sum z^k/(k C(2k,k)) at z = 1, which is pi/(3 sqrt 3)."""
        result = sum_family(SumSpec(Family.C2, 1, Numerator.ONE, 1.0))
        assert result.value.real == pytest.approx(math.pi / (3 * math.sqrt(3)), abs=1e-14)

    def test_complex_argument(self):
        """Test that a complex argument reaches the conjugate value."""
        a = sum_family(SumSpec(Family.C3, 2, Numerator.HK, 2 + 3j)).value
        b = sum_family(SumSpec(Family.C3, 2, Numerator.HK, 2 - 3j)).value
        assert a == pytest.approx(b.conjugate(), abs=1e-14)

    def test_zero_argument(self):
        """Test the value at z = 0."""
        assert sum_family(SumSpec(Family.C3, 0, Numerator.ONE, 0.0)).value == 1
        assert sum_family(SumSpec(Family.C3, 1, Numerator.ONE, 0.0)).value == 0

    def test_outside_radius(self):
        """Test that |z| beyond the radius is rejected."""
        with pytest.raises(DomainError):
            sum_family(SumSpec(Family.C2, 1, Numerator.ONE, 4.5))

    def test_boundary_needs_flag(self):
        """Test that |z| = R requires the boundary flag."""
        with pytest.raises(DomainError):
            sum_family(SumSpec(Family.C2, 2, Numerator.ONE, 4.0))

    def test_boundary_levin(self, capture_logs):
        """Test sum 4^k/(k^2 C(2k,k)) = pi^2/2 on the boundary."""
        _, stream = capture_logs
        result = sum_family(SumSpec(Family.C2, 2, Numerator.ONE, 4.0, boundary=True))
        assert result.value.real == pytest.approx(math.pi**2 / 2, abs=1e-6)
        assert result.method is Method.LEVIN
        assert "BOUNDARY_SLOW" in result.notes
        assert "radius of convergence" in stream.getvalue()

    def test_budget(self):
        """Test that a small term budget is enforced near the radius."""
        with pytest.raises(BudgetExceededError):
            sum_family(SumSpec(Family.C3, 1, Numerator.ONE, 6.7), max_terms=10)


class TestHprodGf:
    """Test the harmonic-product generating function."""

    def test_hk_over_k(self):
        """Test sum H_k z^k/k at 1/2 = pi^2/12."""
        assert hprod_gf([1], 1, 0.5).value.real == pytest.approx(math.pi**2 / 12, abs=1e-14)

    def test_plain_polylog(self):
        """Test that no harmonic factor leaves Li_2."""
        assert hprod_gf([], 2, -1 / 3).value == pytest.approx(li_n(2, -1 / 3), abs=1e-14)

    def test_domain(self):
        """Test |z| < 1 and r >= 1."""
        with pytest.raises(DomainError):
            hprod_gf([1], 1, 1.0)
        with pytest.raises(ValueError):
            hprod_gf([1], 0, 0.5)


# ==========================================================================
# Integral representations
# ==========================================================================


class TestIntegralReps:
    """Test closed per-term values against quadrature."""

    @pytest.mark.parametrize("rep", list(IntegralRep))
    @pytest.mark.parametrize("k", range(0, 9))
    def test_closed_matches_quadrature(self, rep, k):
        """Test each representation for k up to 8 wherever it holds."""
        if k < rep_min_k(rep):
            pytest.skip(f"{rep.value} holds from k = {rep_min_k(rep)}")
        assert term_closed(rep, k) == pytest.approx(term_oracle_integral(rep, k), abs=1e-12)

    def test_k_zero_values(self):
        """Test the k = 0 values of the (3k+1) representations."""
        assert term_closed(IntegralRep.C3_3K1, 0) == 1.0
        assert term_closed(IntegralRep.C3_3K1_LOG_1MT, 0) == pytest.approx(-1.0, abs=1e-15)

    def test_below_range(self):
        """Test that k below the representation's range is rejected."""
        with pytest.raises(ValueError):
            term_closed(IntegralRep.C3_K, 0)
        with pytest.raises(ValueError):
            term_oracle_integral(IntegralRep.C2_K, 0)


class TestSumWithIntegral:
    """Test the generating-function integrals as an oracle for sum_family."""

    @pytest.mark.parametrize(
        "family, weighting, r, numerator, z",
        [
            (Family.C3, Weighting.THREE_K_PLUS_1, 0, Numerator.ONE, 3.0),
            (Family.C3, Weighting.THREE_K_PLUS_1, 0, Numerator.HK_MINUS_H3K1, -4.0),
            (Family.C3, Weighting.PLAIN, 1, Numerator.H2K_MINUS_H3K, 2.0 + 1.0j),
            (Family.C3, Weighting.TWO_K_MINUS_1, 0, Numerator.ONE, -2.0),
            (Family.C3, Weighting.THREE_K_PAIR, 0, Numerator.HK_MINUS_H3K3, 5.0),
            (Family.C4, Weighting.FOUR_K_PLUS_1, 0, Numerator.H2K_MINUS_H4K1, 8.0),
            (Family.C4, Weighting.PLAIN, 1, Numerator.H2KM1_MINUS_H4K, -10.0),
            (Family.C2, Weighting.PLAIN, 1, Numerator.ONE, 2.0),
        ],
    )
    def test_agrees_with_series(self, family, weighting, r, numerator, z):
        """Test that the integral and the direct sum agree."""
        spec = SumSpec(family, r, numerator, z, weighting)
        integral = sum_family_with_integral(spec)
        assert integral.method is Method.QUAD
        assert integral.value == pytest.approx(sum_family(spec).value, abs=1e-11)

    def test_unsupported(self):
        """Test that series without a representation raise ValueError."""
        with pytest.raises(ValueError):
            sum_family_with_integral(SumSpec(Family.C3, 2, Numerator.ONE, 1.0))

    def test_on_radius(self):
        """Test that the integral needs |z| strictly inside the radius."""
        with pytest.raises(DomainError):
            sum_family_with_integral(SumSpec(Family.C2, 1, Numerator.ONE, 4.0, boundary=True))
