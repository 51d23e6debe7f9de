import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cauchymix import bregman as B
from cauchymix import mixture as M
from cauchymix.cauchy import CauchyParam, js_half_cauchy, js_skewed_cauchy, kl_cauchy_to_mixture, pdf
from cauchymix.errors import DomainError, OutOfRangeError, ParamError
from cauchymix.oracle import mixture_density, numeric_cross_entropy, numeric_entropy, numeric_kl, spec_for

CANON = M.CANONICAL
FAM2 = M.CauchyMixtureFamily.from_tuple((-1, 1, 1, 2))
FAM3 = M.CauchyMixtureFamily.from_tuple((0, 1, 5, 0.5))
FAMILIES = [CANON, FAM2, FAM3]

# -F(1/2) = h[m_1/2] for the canonical family, from 30-digit quadrature of -int m log m
H_HALF = 2.5852549085674759


def canonical_entropy_form(fam, t):
    """Entropy written with (l0, s0) = (0, 1) after moving the family by the location-scale group."""
    l0, s0, l1, s1 = fam.as_tuple()
    l, s = (l1 - l0) / s0, s1 / s0
    n = (s + 1) ** 2 + l * l
    root1 = math.sqrt(((s - 1) ** 2 + l * l) * s * (1 - t) * t + s * s)
    root0 = math.sqrt(((1 - s) ** 2 + l * l) * s * (1 - t) * t + s * s)
    h = (t * math.log(n / (2 * root1 + (s * s + l * l + 1) * t + 2 * s * (1 - t)))
         + (1 - t) * math.log(n / (2 * root0 + 2 * s * t + (s * s + l * l + 1) * (1 - t)))
         + t * math.log(s) + math.log(4 * math.pi))
    return h + math.log(s0)


class TestFamily:
    def test_distinct(self):
        with pytest.raises(ParamError):
            M.CauchyMixtureFamily.from_tuple((1, 2, 1, 2))
        with pytest.raises(ParamError):
            M.CauchyMixtureFamily.from_tuple((1, 2, 1 + 1e-14, 2))
        with pytest.raises(ParamError):
            M.CauchyMixtureFamily.from_tuple((0, 1, 1, 0))

    def test_canonical_flag(self):
        assert CANON.is_canonical
        assert not FAM2.is_canonical
        assert M.generator(CANON).inverse_gradient is not None
        assert M.generator(FAM2).inverse_gradient is None


class TestPdf:
    def test_limit_and_tails(self):
        assert M.mixture_pdf(FAM2, 1e-12, 0.3) == pytest.approx(pdf(FAM2.comp0, 0.3), rel=1e-11)
        assert M.mixture_pdf(FAM2, 0.5, 1e12) < 1e-24

    def test_value(self):
        assert M.mixture_pdf(FAM2, 0.5, 0.0) == pytest.approx(0.5 / (2 * math.pi) + 0.5 * 2 / (5 * math.pi), rel=1e-15)


class TestEntropy:
    def test_near_zero_limit(self):
        assert M.mixture_entropy(CANON, 1e-12) == pytest.approx(math.log(4 * math.pi), abs=1e-11)

    def test_half(self):
        assert M.mixture_entropy(CANON, 0.5) == pytest.approx(H_HALF, abs=1e-14)
        assert M.mixture_entropy(CANON, 0.5) == pytest.approx(
            math.log(20 * math.pi) - math.log(2 * math.sqrt(1.25) + 2.5), abs=1e-15)

    def test_open_domain(self):
        for t in (0.0, 1.0, -0.1):
            with pytest.raises(DomainError):
                M.mixture_entropy(CANON, t)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_vs_quadrature(self, fam):
        spec = spec_for(fam.comp0, fam.comp1)
        for t in np.linspace(0.05, 0.95, 7):
            h = numeric_entropy(mixture_density(fam.comp0, fam.comp1, t), spec)
            assert M.mixture_entropy(fam, t) == pytest.approx(h, abs=1e-7)

    @given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.01, 0.99))
    def test_normalised_form_agrees(self, l0, s0, l1, s1, t):
        assume(math.hypot(l0 - l1, s0 - s1) > 1e-3)
        fam = M.CauchyMixtureFamily.from_tuple((l0, s0, l1, s1))
        assert M.mixture_entropy(fam, t) == pytest.approx(canonical_entropy_form(fam, t), abs=1e-10)

    @given(st.floats(-5, 5), st.floats(0.1, 5), st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.01, 0.99))
    def test_entropy_is_js_plus_component_entropies(self, l0, s0, l1, s1, t):
        assume(math.hypot(l0 - l1, s0 - s1) > 1e-3)
        fam = M.CauchyMixtureFamily.from_tuple((l0, s0, l1, s1))
        expected = js_skewed_cauchy(fam.comp0, fam.comp1, t) + t * math.log(s1 / s0) + math.log(4 * math.pi * s0)
        assert M.mixture_entropy(fam, t) == pytest.approx(expected, abs=1e-12)


class TestGenerator:
    def test_examples(self):
        gen = M.generator(CANON)
        assert gen.value(np.array([1e-12])) == pytest.approx(-math.log(4 * math.pi), abs=1e-11)
        assert gen.gradient(np.array([0.5]))[0] == pytest.approx(0.0, abs=1e-16)
        assert gen.hessian(np.array([0.5]))[0, 0] == pytest.approx(2 / (2 * math.sqrt(1.25) + 2.5), abs=1e-15)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_fd(self, fam):
        gen = M.generator(fam)
        for t in np.linspace(0.05, 0.95, 19):
            g = B.dual_coord(gen, t)
            assert abs(B.fd_gradient(gen, t)[0] - g) <= 1e-6 * max(1.0, abs(g))
            h = M.metric(fam, t)
            assert abs(B.fd_hessian(gen, t)[0, 0] - h) <= 1e-5 * h

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_gradient_image(self, fam):
        gen = M.generator(fam)
        lo, hi = gen.gradient_image
        assert lo < B.dual_coord(gen, 1e-6) < B.dual_coord(gen, 1 - 1e-6) < hi
        with pytest.raises(OutOfRangeError):
            B.primal_coord(gen, hi + 1e-3)
        with pytest.raises(OutOfRangeError):
            B.primal_coord(gen, lo)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_gradient_is_integral_of_component_difference(self, fam):
        # F'(theta) = int (p1 - p0) log m_theta, computed by quadrature
        spec = spec_for(fam.comp0, fam.comp1)
        for t in (0.2, 0.6):
            m = mixture_density(fam.comp0, fam.comp1, t)
            val = (numeric_cross_entropy(lambda x: pdf(fam.comp0, x), m, spec)
                   - numeric_cross_entropy(lambda x: pdf(fam.comp1, x), m, spec))
            assert M.negentropy_grad(fam, t) == pytest.approx(val, abs=1e-9)


class TestCanonical:
    def test_value(self):
        assert M.canonical_generator_value(1e-12) == pytest.approx(-math.log(4 * math.pi), abs=1e-11)
        assert M.canonical_generator_value(0.5) == pytest.approx(-H_HALF, abs=1e-14)
        # the theta -> 1 limit is the negentropy of p_{1,1}: log(5/4) + log(4 / (20 pi)) = -log(4 pi)
        assert M.canonical_generator_value(1 - 1e-12) == pytest.approx(-math.log(4 * math.pi), abs=1e-11)

    def test_gradient(self):
        assert M.canonical_grad(0.5) == 0.0
        assert M.canonical_grad(1e-12) == pytest.approx(math.log(4 / 5), abs=1e-11)
        assert M.canonical_grad(1 - 1e-12) == pytest.approx(math.log(5 / 4), abs=1e-11)
        grid = np.linspace(1e-6, 1 - 1e-6, 1001)
        assert np.all(np.diff(M.canonical_grad(grid)) > 0)

    def test_matches_general(self):
        grid = np.linspace(0.01, 0.99, 99)
        assert np.allclose(M.canonical_generator_value(grid), M.negentropy(CANON, grid), atol=1e-10, rtol=0)
        assert np.allclose(M.canonical_grad(grid), M.negentropy_grad(CANON, grid), atol=1e-10, rtol=0)

    def test_inverse(self):
        assert M.canonical_inverse_grad(0.0) == 0.5
        assert M.canonical_inverse_grad(M.canonical_grad(0.2)) == pytest.approx(0.2, abs=1e-12)
        for bad in (math.log(5 / 4), math.log(4 / 5), 1.0):
            with pytest.raises(OutOfRangeError):
                M.canonical_inverse_grad(bad)

    def test_inverse_boundary_values(self):
        # at e^eta = 5/4 numerator and denominator of the closed form are both 5.3125
        E = 1.25
        num = 5 * E * E + 2 * math.sqrt(5) * math.sqrt(E**3 - 2 * E * E + E) - 3 * E
        den = 5 * E * E - 6 * E + 5
        assert num == pytest.approx(5.3125, abs=1e-14)
        assert den == pytest.approx(5.3125, abs=1e-14)

    def test_round_trip_grid(self):
        grid = np.linspace(1e-6, 1 - 1e-6, 2001)
        assert np.max(np.abs(M.canonical_inverse_grad(M.canonical_grad(grid)) - grid)) <= 1e-12

    def test_dual_value(self):
        assert M.canonical_dual_value(0.5) == pytest.approx(H_HALF, abs=1e-14)
        assert M.canonical_dual_value(1e-12) == pytest.approx(math.log(4 * math.pi), abs=1e-11)
        grid = np.linspace(0.01, 0.99, 99)
        assert np.allclose(M.canonical_dual_value(grid), M.dual_value_in_theta(CANON, grid), atol=1e-10, rtol=0)
        legendre = grid * M.canonical_grad(grid) - M.canonical_generator_value(grid)
        assert np.allclose(legendre, M.canonical_dual_value(grid), atol=1e-10, rtol=0)

    def test_metric(self):
        assert M.canonical_metric(0.5) == pytest.approx(0.4222912, abs=1e-7)
        grid = np.linspace(0.01, 0.99, 99)
        assert np.max(np.abs(M.canonical_metric(grid) - M.metric(CANON, grid))) <= 1e-9
        assert np.all(M.metric(CANON, grid) > 0)

    def test_expanded_bregman(self):
        # mpmath quadrature of KL(m_0.2 : m_0.8): 0.07745912071170618229588
        assert M.canonical_bregman(0.2, 0.8) == pytest.approx(0.07745912071170618, abs=1e-14)
        for a, b in [(0.1, 0.3), (0.9, 0.05), (0.5, 0.5)]:
            assert M.canonical_bregman(a, b) == pytest.approx(M.kl_between_mixtures(CANON, a, b), abs=1e-12)


class TestDivergences:
    def test_cross_entropy(self):
        assert M.cross_entropy_p0_to_mixture(CANON, 1e-12) == pytest.approx(math.log(4 * math.pi), abs=1e-11)
        assert M.cross_entropy_p0_to_mixture(CANON, 0.5) == pytest.approx(H_HALF, abs=1e-14)
        assert M.cross_entropy_p0_to_mixture(CANON, 0.5) == pytest.approx(
            kl_cauchy_to_mixture((0, 1), (1, 1), 0.5) + math.log(4 * math.pi), abs=1e-15)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_cross_entropies_vs_quadrature(self, fam):
        spec = spec_for(fam.comp0, fam.comp1)
        for t in (0.1, 0.5, 0.9):
            m = mixture_density(fam.comp0, fam.comp1, t)
            c0 = numeric_cross_entropy(lambda x: pdf(fam.comp0, x), m, spec)
            c1 = numeric_cross_entropy(lambda x: pdf(fam.comp1, x), m, spec)
            assert M.cross_entropy_p0_to_mixture(fam, t) == pytest.approx(c0, abs=1e-7)
            assert M.cross_entropy_p1_to_mixture(fam, t) == pytest.approx(c1, abs=1e-7)

    def test_kl_frozen_values(self):
        # 30-digit mpmath quadrature of int m1 log(m1/m2)
        assert M.kl_between_mixtures(CANON, 0.2, 0.8) == pytest.approx(0.07745912071170618, abs=1e-13)
        assert M.kl_between_mixtures(FAM2, 0.2, 0.8) == pytest.approx(0.16120690293687296, abs=1e-13)
        assert M.kl_between_mixtures(FAM2, 0.1, 0.6) == pytest.approx(0.11035060814430605, abs=1e-13)
        assert M.kl_between_mixtures(FAM3, 0.2, 0.8) == pytest.approx(0.58960110725848208, abs=1e-13)
        assert M.kl_between_mixtures(FAM3, 0.1, 0.6) == pytest.approx(0.39335077512221099, abs=1e-13)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_kl_three_routes(self, fam):
        gen = M.generator(fam)
        spec = spec_for(fam.comp0, fam.comp1)
        for a in (0.1, 0.3, 0.5, 0.7, 0.9):
            for b in (0.1, 0.3, 0.5, 0.7, 0.9):
                kl = M.kl_between_mixtures(fam, a, b)
                assert kl == pytest.approx(B.bregman_divergence(gen, a, b), abs=1e-10)
                num = numeric_kl(mixture_density(fam.comp0, fam.comp1, a), mixture_density(fam.comp0, fam.comp1, b), spec)
                assert kl == pytest.approx(num, abs=1e-7)

    def test_kl_identity(self):
        assert M.kl_between_mixtures(FAM2, 0.37, 0.37) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_symmetry_on_complementary_pairs(self, fam):
        for t in np.linspace(0.05, 0.95, 19):
            assert M.kl_between_mixtures(fam, t, 1 - t) == pytest.approx(M.kl_between_mixtures(fam, 1 - t, t), abs=1e-9)

    def test_no_general_symmetry(self):
        # documented boundary of the symmetry property: non-complementary pairs differ
        assert abs(M.kl_between_mixtures(CANON, 0.1, 0.6) - M.kl_between_mixtures(CANON, 0.6, 0.1)) > 1e-3

    def test_jeffreys(self):
        assert M.jeffreys_between_mixtures(FAM3, 0.4, 0.4) == 0.0
        j = M.jeffreys_between_mixtures(CANON, 0.2, 0.8)
        assert j == pytest.approx(2 * M.kl_between_mixtures(CANON, 0.2, 0.8), abs=1e-12)
        assert j == pytest.approx(0.6 * (M.canonical_grad(0.8) - M.canonical_grad(0.2)), abs=1e-15)
        vals = [M.jeffreys_between_mixtures(FAM2, 0.3, 0.3 + d) for d in (0.05, 0.1, 0.3, 0.6)]
        assert vals == sorted(vals)

    @given(st.floats(0.01, 0.99), st.floats(0.01, 0.99))
    def test_jeffreys_identity(self, a, b):
        for fam in FAMILIES:
            j = M.jeffreys_between_mixtures(fam, a, b)
            kl = M.kl_between_mixtures(fam, a, b) + M.kl_between_mixtures(fam, b, a)
            assert j == pytest.approx(kl, abs=1e-9)

    def test_js(self):
        assert M.js_between_mixtures(FAM2, 0.3, 0.3) == pytest.approx(0.0, abs=1e-15)
        gen = M.generator(CANON)
        assert M.js_between_mixtures(CANON, 0.2, 0.8) == pytest.approx(B.jensen_divergence(gen, 0.2, 0.8, 0.5), abs=1e-10)
        eps = 1e-6
        assert M.js_between_mixtures(CANON, eps, 1 - eps) == pytest.approx(js_half_cauchy((0, 1), (1, 1)), abs=1e-5)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_js_vs_quadrature(self, fam):
        spec = spec_for(fam.comp0, fam.comp1)
        a, b = 0.15, 0.75
        m = lambda t: mixture_density(fam.comp0, fam.comp1, t)
        num = 0.5 * (numeric_kl(m(a), m(0.45), spec) + numeric_kl(m(b), m(0.45), spec))
        assert M.js_between_mixtures(fam, a, b) == pytest.approx(num, abs=1e-7)

    @pytest.mark.parametrize("fam", FAMILIES)
    def test_skewed_js_is_jensen_gap_of_limits(self, fam):
        f0, f1 = M.boundary_values(fam)
        for t in np.linspace(0.05, 0.95, 10):
            gap = (1 - t) * f0 + t * f1 - M.negentropy(fam, t)
            assert js_skewed_cauchy(fam.comp0, fam.comp1, t) == pytest.approx(gap, abs=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            M.kl_between_mixtures(CANON, 0.0, 0.5)
        with pytest.raises(DomainError):
            M.metric(CANON, 1.0)
