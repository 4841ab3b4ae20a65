"""Count-distribution families and the two-parameter recursion."""

import math

import pytest

from losskit.frequency import (
    Binomial,
    CountMixture,
    NegBinomial,
    Poisson,
    ZeroModified,
    ab0_recursion,
    classify_ab0,
    conditional_mixture_query,
    generating_fn,
    mixed_poisson_gamma,
    zero_truncated,
)

ALL_FAMILIES = [Poisson(2.3), Binomial(7, 0.3), NegBinomial(3.5, 1.7)]


class TestZeroAdjustment:
    def test_truncated_and_modified_poisson2(self):
        # zero-truncated and 0.6-modified probabilities at k=1..3
        base = Poisson(2.0)
        zt = zero_truncated(base)
        zm = ZeroModified(base, 0.6)
        assert zt.pmf(0) == 0.0
        assert zm.pmf(0) == 0.6
        assert zt.pmf(1) == pytest.approx(0.313035, abs=5e-7)
        assert zt.pmf(2) == pytest.approx(0.313035, abs=5e-7)
        assert zt.pmf(3) == pytest.approx(0.208690, abs=5e-7)
        assert zm.pmf(1) == pytest.approx(0.125214, abs=5e-7)
        assert zm.pmf(3) == pytest.approx(0.083476, abs=5e-7)

    def test_ratio_preservation(self):
        base = NegBinomial(2.5, 0.8)
        zm = ZeroModified(base, 0.35)
        for k in range(1, 12):
            for j in range(1, 12):
                assert zm.pmf(k) / zm.pmf(j) == pytest.approx(
                    base.pmf(k) / base.pmf(j), rel=1e-12
                )

    def test_mass_sums_to_one(self):
        zm = ZeroModified(Poisson(4.0), 0.2)
        assert sum(zm.pmf(k) for k in range(200)) == pytest.approx(1.0, abs=1e-12)


class TestRecursion:
    @pytest.mark.parametrize("dist", ALL_FAMILIES, ids=lambda d: type(d).__name__)
    def test_recursion_matches_closed_form(self, dist):
        a, b, p0 = dist.ab0()
        rec = ab0_recursion(a, b, (0, p0), 50)
        for k in range(51):
            assert rec[k] == pytest.approx(dist.pmf(k), abs=1e-12)

    def test_identified_family_from_ratio(self):
        # ratio slope 3/4 with b/a = 2 pins a size-3 negative binomial
        dist = classify_ab0(0.75, 1.5)
        assert isinstance(dist, NegBinomial)
        assert dist.r == pytest.approx(3.0, abs=1e-12)
        assert dist.beta == pytest.approx(3.0, abs=1e-12)
        assert dist.pmf(1) == pytest.approx(9.0 / 256.0, abs=1e-15)
        assert dist.mean() == pytest.approx(9.0, abs=1e-12)

    def test_recursion_ratio_exercise(self):
        # p_k = ((3k+9)/(8k)) p_{k-1}: a=3/8, b=9/8
        dist = classify_ab0(3.0 / 8.0, 9.0 / 8.0)
        assert dist.pmf(3) == pytest.approx(0.1609, abs=5e-5)

    def test_classify_cases(self):
        assert isinstance(classify_ab0(0.0, 2.0), Poisson)
        b = classify_ab0(-1.0 / 3.0, 4.0 / 3.0)
        assert isinstance(b, Binomial) and b.m == 3
        assert b.q == pytest.approx(0.25, abs=1e-12)
        # brute-force pmf agreement for the recovered binomial
        a, bb, p0 = b.ab0()
        rec = ab0_recursion(a, bb, (0, p0), 3)
        assert rec == pytest.approx([b.pmf(k) for k in range(4)], abs=1e-14)

    def test_inadmissible_parameters(self):
        with pytest.raises(ValueError):
            classify_ab0(0.0, -1.0)
        with pytest.raises(ValueError):
            classify_ab0(1.2, 0.5)
        with pytest.raises(ValueError):
            classify_ab0(0.5, -0.5)

    def test_negative_ratio_names_offender(self):
        with pytest.raises(ValueError, match="k=2"):
            ab0_recursion(-1.0, 1.5, (0, 0.5), 5)

    def test_degenerate(self):
        rec = ab0_recursion(0.0, 0.0, (0, 1.0), 5)
        assert rec == [1.0, 0, 0, 0, 0, 0]


class TestGeneratingFunctions:
    def test_closed_forms(self):
        z = 1.3
        assert generating_fn(Poisson(2.0), z) == pytest.approx(math.exp(2.0 * (z - 1)))
        assert generating_fn(Binomial(5, 0.2), z) == pytest.approx((1 + 0.2 * (z - 1)) ** 5)
        assert generating_fn(NegBinomial(2.0, 0.7), z) == pytest.approx(
            (1 - 0.7 * (z - 1)) ** -2.0
        )

    @pytest.mark.parametrize("dist", ALL_FAMILIES, ids=lambda d: type(d).__name__)
    def test_pgf_at_one(self, dist):
        assert dist.pgf(1.0) == pytest.approx(1.0, abs=1e-12)

    def test_poisson_second_factorial_moment(self):
        # pgf''(1) = lambda^2, checked by central differences and by the
        # factorial-moment sum
        d = Poisson(3.0)
        h = 1e-4
        fd = (d.pgf(1 + h) - 2 * d.pgf(1.0) + d.pgf(1 - h)) / h**2
        assert fd == pytest.approx(9.0, rel=1e-6)
        series = sum(k * (k - 1) * d.pmf(k) for k in range(80))
        assert series == pytest.approx(9.0, rel=1e-12)

    def test_mgf_convergence_region(self):
        nb = NegBinomial(2.0, 0.5)
        with pytest.raises(ValueError):
            nb.mgf(math.log(1 + 1 / 0.5) + 0.1)


class TestMoments:
    @pytest.mark.parametrize("dist", ALL_FAMILIES, ids=lambda d: type(d).__name__)
    def test_pmf_sums_to_one(self, dist):
        total, k = 0.0, 0
        while total < 1 - 1e-12 and k <= 10**6:
            total += dist.pmf(k)
            k += 1
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_overdispersion_orderings(self):
        nb = NegBinomial(3.0, 0.8)
        assert nb.var() > nb.mean()
        b = Binomial(10, 0.3)
        assert b.var() < b.mean()
        p = Poisson(3.0)
        assert p.var() == p.mean()

    def test_nb_poisson_limit(self):
        lam = 2.0
        r = 1e6
        nb = NegBinomial(r, lam / r)
        p = Poisson(lam)
        for k in range(21):
            assert nb.pmf(k) == pytest.approx(p.pmf(k), abs=1e-4)


class TestMixtures:
    def test_three_group_posterior(self):
        # population split over Poisson rates 3 / 1 / 4
        mix = CountMixture([0.3, 0.6, 0.1], [Poisson(3), Poisson(1), Poisson(4)])
        assert mix.pmf(3) == pytest.approx(0.1235, abs=5e-5)
        post = conditional_mixture_query(mix, 3)
        assert post[2] == pytest.approx(0.1581, abs=5e-5)
        assert sum(post) == pytest.approx(1.0, abs=1e-14)

    def test_single_component_posterior_is_one(self):
        mix = CountMixture([1.0], [Poisson(2)])
        assert conditional_mixture_query(mix, 4) == [1.0]

    def test_identical_components_posterior_equals_prior(self):
        mix = CountMixture([0.25, 0.75], [Poisson(2), Poisson(2)])
        assert conditional_mixture_query(mix, 3) == pytest.approx([0.25, 0.75])

    def test_identical_components_moments(self):
        mix = CountMixture([0.4, 0.6], [Poisson(2), Poisson(2)])
        assert mix.mean() == pytest.approx(2.0)
        assert mix.var() == pytest.approx(2.0)

    def test_two_point_poisson_mixture_moments(self):
        # mean 4 and variance 13 force rates 1 and 7
        mix = CountMixture([0.5, 0.5], [Poisson(1), Poisson(7)])
        assert mix.mean() == pytest.approx(4.0, abs=1e-12)
        assert mix.var() == pytest.approx(13.0, abs=1e-12)
        # variance is not the convex combination when the means differ
        assert mix.var() > 0.5 * 1 + 0.5 * 7

    def test_linear_functionals_are_convex_combinations(self):
        w = [0.3, 0.7]
        comps = [Poisson(1.5), NegBinomial(2.0, 0.5)]
        mix = CountMixture(w, comps)
        for k in (0, 1, 4):
            assert mix.pmf(k) == pytest.approx(
                w[0] * comps[0].pmf(k) + w[1] * comps[1].pmf(k), abs=1e-15
            )
        assert mix.cdf(3) == pytest.approx(
            w[0] * comps[0].cdf(3) + w[1] * comps[1].cdf(3), abs=1e-15
        )

    def test_undefined_condition(self):
        mix = CountMixture([0.5, 0.5], [Binomial(2, 0.5), Binomial(3, 0.5)])
        with pytest.raises(ValueError):
            conditional_mixture_query(mix, 9)


class TestMixedPoissonGamma:
    def test_maps_to_negative_binomial(self):
        # gamma mixing with mean 1, variance 2 gives r=1/2, beta=2
        d = mixed_poisson_gamma(0.5, 2.0)
        assert isinstance(d, NegBinomial)
        assert d.pmf(1) == pytest.approx(0.19245, abs=5e-6)

    def test_degenerate_mixing(self):
        d = mixed_poisson_gamma(3.0, 0.0)
        assert d.pmf(0) == 1.0

    def test_matches_numeric_mixing_integral(self):
        from scipy import integrate

        alpha, theta = 3.0, 3.0
        d = mixed_poisson_gamma(alpha, theta)

        def integrand(lam, k):
            gamma_pdf = (
                lam ** (alpha - 1)
                * math.exp(-lam / theta)
                / (math.gamma(alpha) * theta**alpha)
            )
            pois = math.exp(-lam) * lam**k / math.factorial(k)
            return pois * gamma_pdf

        for k in (0, 1, 5, 12):
            num, _ = integrate.quad(integrand, 0, 400, args=(k,), limit=300)
            assert d.pmf(k) == pytest.approx(num, abs=1e-8)


class TestDegenerateParameters:
    def test_point_masses(self):
        assert Binomial(3, 0.0).pmf(0) == 1.0
        assert NegBinomial(2.0, 0.0).pmf(0) == 1.0
        assert Poisson(0.0).pmf(0) == 1.0

    def test_binomial_out_of_support_is_zero(self):
        assert Binomial(3, 0.4).pmf(5) == 0.0
        assert Binomial(3, 0.4).pmf(-1) == 0.0
