import math

import numpy as np
import pytest

from meanlcb import (FamilyKind, IndexOutOfRangeError, LambdaOutOfRangeError,
                     SortedSample, beta_family, bound_value,
                     check_family_axioms, closed_form_comparison,
                     coverage_exact, family_vector, offset_closed_form_derived,
                     offset_closed_form_lcb, offset_family)


class TestFamilyVector:
    def test_offset_zero_lambda(self):
        u = family_vector(offset_family(3), 0.0)
        assert u.u.tolist() == [0.25, 0.5, 0.75]
        assert u.regularized

    def test_offset_clipping(self):
        u = family_vector(offset_family(3), 0.6)
        assert u.u == pytest.approx([0.85, 1.0, 1.0], abs=1e-15)

    def test_beta_two_point_analytic(self):
        # Beta(1,2) CDF is 1-(1-x)^2, Beta(2,1) CDF is x^2; invert at 1/2.
        u = family_vector(beta_family(2), 0.5)
        assert u.u == pytest.approx([1 - math.sqrt(0.5), math.sqrt(0.5)], abs=1e-10)

    def test_beta_first_coordinate_analytic(self):
        for n in (1, 5, 47):
            for lam in (0.01, 0.3, 0.77):
                u = family_vector(beta_family(n), lam)
                assert u.u[0] == pytest.approx(1 - (1 - lam) ** (1.0 / n), abs=1e-10)

    def test_lambda_monotone_coordinatewise(self):
        rng = np.random.RandomState(20)
        for fam_of in (offset_family, beta_family):
            for _ in range(25):
                fam = fam_of(int(rng.randint(1, 25)))
                l1, l2 = np.sort(rng.rand(2))
                u1 = family_vector(fam, l1).u
                u2 = family_vector(fam, l2).u
                assert np.all(u1 <= u2 + 1e-12)

    def test_nondecreasing_in_position(self):
        rng = np.random.RandomState(21)
        for fam_of in (offset_family, beta_family):
            for _ in range(20):
                fam = fam_of(int(rng.randint(1, 40)))
                u = family_vector(fam, float(rng.rand())).u
                assert np.all(np.diff(u) >= 0.0)

    def test_lambda_range(self):
        with pytest.raises(LambdaOutOfRangeError):
            family_vector(offset_family(3), -0.1)
        with pytest.raises(LambdaOutOfRangeError):
            family_vector(beta_family(3), 1.1)

    def test_kind_validation(self):
        with pytest.raises(ValueError):
            FamilyKind("gamma", 3)
        with pytest.raises(ValueError):
            FamilyKind("offset", 0)

    def test_coverage_monotone_in_lambda_and_one_at_top(self):
        for fam_of in (offset_family, beta_family):
            fam = fam_of(7)
            ps = [coverage_exact(family_vector(fam, lam)).p
                  for lam in np.linspace(0, 1, 11)]
            assert all(b >= a - 1e-12 for a, b in zip(ps, ps[1:]))
            assert ps[-1] == 1.0

    def test_bound_nonincreasing_in_lambda(self):
        rng = np.random.RandomState(22)
        x = SortedSample(np.sort(rng.gamma(2.0, 3.0, size=12)))
        for fam_of in (offset_family, beta_family):
            fam = fam_of(12)
            bs = [bound_value(x, family_vector(fam, lam))
                  for lam in np.linspace(0, 1, 21)]
            assert all(b <= a + 1e-12 for a, b in zip(bs, bs[1:]))


class TestFamilyAxioms:
    @pytest.mark.parametrize("kind", ["offset", "beta"])
    def test_axioms_on_101_grid(self, kind):
        report = check_family_axioms(FamilyKind(kind, 47), np.linspace(0, 1, 101))
        assert report.monotone_in_lambda
        assert report.continuous
        assert report.reaches_one
        assert report.all_pass

    def test_beta_at_top_is_all_ones(self):
        assert np.all(family_vector(beta_family(47), 1.0).u == 1.0)

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            check_family_axioms(offset_family(5), [])


class TestOffsetClosedForm:
    def test_published_indexing_fails_on_single_point(self):
        # At n = 1, lam = 0.3: n_lam = ceil(2 * 0.7) = 2 exceeds the sample.
        x = SortedSample([10.0])
        with pytest.raises(IndexOutOfRangeError):
            offset_closed_form_lcb(x, 0.3)

    def test_generic_value_on_single_point(self):
        # u_1 = min(1, 1/2 + 0.3) = 0.8, so the bound is 0.2 * 10 = 2.
        x = SortedSample([10.0])
        assert bound_value(x, family_vector(offset_family(1), 0.3)) == pytest.approx(
            2.0, abs=1e-12)
        assert offset_closed_form_derived(x, 0.3) == pytest.approx(2.0, abs=1e-12)

    def test_comparison_flags_divergence_without_crash(self):
        comp = closed_form_comparison(SortedSample([10.0]), 0.3)
        assert comp.literal is None
        assert comp.literal_error is not None
        assert comp.literal_diverges
        assert comp.generic == pytest.approx(2.0, abs=1e-12)

    def test_lambda_one_is_zero(self):
        x = SortedSample([1.0, 5.0, 9.0])
        assert offset_closed_form_lcb(x, 1.0) == 0.0
        assert offset_closed_form_derived(x, 1.0) == 0.0
        assert bound_value(x, family_vector(offset_family(3), 1.0)) == 0.0

    def test_two_point_zero_lambda(self):
        # u = (1/3, 2/3): bound = (2/3)*1 + (1/3)*(2-1) = 1.
        x = SortedSample([1.0, 2.0])
        assert bound_value(x, family_vector(offset_family(2), 0.0)) == pytest.approx(
            1.0, abs=1e-12)
        assert offset_closed_form_derived(x, 0.0) == pytest.approx(1.0, abs=1e-12)
        with pytest.raises(IndexOutOfRangeError):
            offset_closed_form_lcb(x, 0.0)  # asks for X_(3)

    def test_derived_matches_generic_everywhere(self):
        rng = np.random.RandomState(23)
        for _ in range(100):
            n = int(rng.randint(1, 30))
            x = SortedSample(np.sort(rng.rand(n) * 20))
            lam = float(rng.rand())
            generic = bound_value(x, family_vector(offset_family(n), lam))
            derived = offset_closed_form_derived(x, lam)
            assert derived == pytest.approx(generic, rel=1e-10, abs=1e-10)

    def test_literal_when_in_range_still_differs_from_generic(self):
        # Wherever the published indexing stays in range it shifts the mass
        # one order statistic too high, so it over-counts on generic samples.
        x = SortedSample(np.arange(1.0, 11.0))
        comp = closed_form_comparison(x, 0.35)
        assert comp.literal is not None
        assert comp.literal_diverges
        assert comp.literal > comp.generic
