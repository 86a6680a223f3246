import numpy as np
import pytest

from meanlcb import (BoundVector, NTooLargeError, PrecisionLossWarning,
                     beta_family, coverage_exact, coverage_mc, family_vector,
                     min_lambda_pivot, offset_family, regularize)
from meanlcb.coverage import EstimateKind

from oracles import brute_force_coverage, pivot_by_bisection


def _random_regularized(rng, n):
    return regularize(np.sort(rng.rand(n)))


class TestCoverageExact:
    def test_single_uniform(self):
        assert coverage_exact([0.7]).p == pytest.approx(0.7, abs=1e-15)

    def test_two_point_closed_form(self):
        # P = 2ab - a^2 for a <= b (frozen from the double integral)
        est = coverage_exact([0.5, 0.8])
        assert est.p == pytest.approx(0.55, abs=1e-14)
        assert est.method is EstimateKind.EXACT
        assert est.std_err == 0.0

    def test_certain_event(self):
        for n in (1, 3, 10):
            assert coverage_exact([1.0] * n).p == 1.0

    def test_impossible_event(self):
        assert coverage_exact([0.0, 0.5]).p == 0.0

    def test_against_brute_force_quadrature(self):
        rng = np.random.RandomState(10)
        for n in (1, 2, 3, 4):
            for _ in range(25):
                u = _random_regularized(rng, n)
                assert coverage_exact(u).p == pytest.approx(
                    brute_force_coverage(u.u), abs=1e-8)

    def test_size_limit(self):
        with pytest.raises(NTooLargeError):
            coverage_exact([0.5] * 31)
        # A raised limit works; a constant vector is the worst case for the
        # alternating sums, so the loss diagnostic is expected to fire while
        # the value itself stays usable (P(all <= 0.9) = 0.9^31).
        with pytest.warns(PrecisionLossWarning):
            est = coverage_exact([0.9] * 31, n_limit=31)
        assert est.p == pytest.approx(0.9 ** 31, rel=1e-4)

    def test_auto_regularization_is_exact(self):
        rng = np.random.RandomState(11)
        for _ in range(30):
            n = rng.randint(2, 10)
            raw = rng.rand(n)
            assert coverage_exact(raw).p == coverage_exact(regularize(raw)).p

    def test_coordinatewise_monotone(self):
        rng = np.random.RandomState(12)
        for _ in range(60):
            n = rng.randint(1, 9)
            lo = _random_regularized(rng, n)
            hi = regularize(np.minimum(1.0, lo.u + rng.rand(n) * 0.2))
            assert coverage_exact(hi).p >= coverage_exact(lo).p - 1e-12

    def test_precision_loss_warning_near_limit(self):
        u = family_vector(offset_family(47), 0.15)
        with pytest.warns(PrecisionLossWarning):
            coverage_exact(u, n_limit=50)

    def test_no_warning_at_default_sizes(self):
        import warnings
        u = family_vector(offset_family(25), 0.15)
        with warnings.catch_warnings():
            warnings.simplefilter("error", PrecisionLossWarning)
            coverage_exact(u)


class TestCoverageMc:
    def test_matches_exact_within_monte_carlo_error(self):
        rng = np.random.RandomState(13)
        for n in range(1, 11):
            for _ in range(5):
                u = _random_regularized(rng, n)
                exact = coverage_exact(u).p
                est = coverage_mc(u, replicates=50_000, seed=int(rng.randint(1 << 30)))
                tol = 4.0 * max(est.std_err, 1e-6)
                assert abs(est.p - exact) <= tol, (n, u.u, est.p, exact)

    def test_impossible_event(self):
        est = coverage_mc([0.0, 0.0, 0.0], replicates=5000, seed=1)
        assert est.p == 0.0

    def test_spec_vector_n5(self):
        u = np.minimum(1.0, np.arange(1, 6) / 6 + 0.4)
        exact = coverage_exact(u).p
        est = coverage_mc(u, replicates=100_000, seed=5)
        assert abs(est.p - exact) <= 3.0 * est.std_err + 1e-4

    def test_deterministic_and_seed_sensitive(self):
        u = [0.3, 0.6, 0.9]
        a = coverage_mc(u, replicates=20_000, seed=7)
        b = coverage_mc(u, replicates=20_000, seed=7)
        c = coverage_mc(u, replicates=20_000, seed=8)
        assert a.p == b.p
        assert a.p != c.p

    def test_metadata(self):
        est = coverage_mc([0.5], replicates=2000, seed=3)
        assert est.method is EstimateKind.MONTE_CARLO
        assert est.replicates == 2000
        assert est.seed == 3
        assert est.std_err == pytest.approx(
            np.sqrt(est.p * (1 - est.p) / 2000), abs=1e-15)

    def test_validates_replicates(self):
        with pytest.raises(ValueError):
            coverage_mc([0.5], replicates=0, seed=1)


class TestMinLambdaPivot:
    def test_offset_single(self):
        assert min_lambda_pivot([0.9], offset_family(1)) == pytest.approx(0.4, abs=1e-15)

    def test_beta_single(self):
        assert min_lambda_pivot([0.9], beta_family(1)) == pytest.approx(0.9, abs=1e-12)

    def test_offset_two_point(self):
        got = min_lambda_pivot([0.2, 0.9], offset_family(2))
        assert got == pytest.approx(max(0.2 - 1 / 3, 0.9 - 2 / 3), abs=1e-15)

    def test_matches_membership_bisection(self):
        rng = np.random.RandomState(14)
        for kind, fam_of in (("offset", offset_family), ("beta", beta_family)):
            for _ in range(20):
                n = rng.randint(1, 12)
                fam = fam_of(n)
                u_sorted = np.sort(rng.rand(n))
                got = min_lambda_pivot(u_sorted, fam)
                ref = pivot_by_bisection(u_sorted,
                                         lambda lam: family_vector(fam, lam).u)
                assert got == pytest.approx(ref, abs=1e-9), kind

    def test_pivot_consistency(self):
        # Membership holds exactly when lam >= pivot.
        rng = np.random.RandomState(15)
        for fam_of in (offset_family, beta_family):
            for _ in range(40):
                n = rng.randint(1, 10)
                fam = fam_of(n)
                u_sorted = np.sort(rng.rand(n))
                pivot = min_lambda_pivot(u_sorted, fam)
                lam = rng.rand()
                if abs(lam - pivot) < 1e-9:
                    continue
                member = bool(np.all(u_sorted <= family_vector(fam, lam).u))
                assert member == (lam >= pivot)

    def test_pivot_cdf_equals_coverage(self):
        # P(pivot <= lam) = coverage of the family vector at lam.
        from meanlcb.calibration import draw_pivots
        rng = np.random.RandomState(16)
        for fam_of in (offset_family, beta_family):
            n = int(rng.randint(2, 11))
            fam = fam_of(n)
            pivots = draw_pivots(fam, 50_000, seed=21)
            for lam in (0.05, 0.2, 0.5):
                emp = float(np.mean(pivots <= lam))
                exact = coverage_exact(family_vector(fam, lam)).p
                se = max(np.sqrt(exact * (1 - exact) / 50_000), 1e-6)
                assert abs(emp - exact) <= 4 * se

    def test_validates_input(self):
        with pytest.raises(ValueError):
            min_lambda_pivot([0.9, 0.1], offset_family(2))  # not sorted
        with pytest.raises(ValueError):
            min_lambda_pivot([0.5], offset_family(2))  # wrong length
        with pytest.raises(ValueError):
            min_lambda_pivot([0.5, 1.5], offset_family(2))  # out of range


class TestCoverageEstimateType:
    def test_validation(self):
        from meanlcb import CoverageEstimate
        with pytest.raises(ValueError):
            CoverageEstimate(p=1.5, std_err=0.0, method=EstimateKind.EXACT)
        with pytest.raises(ValueError):
            CoverageEstimate(p=0.5, std_err=0.1, method=EstimateKind.EXACT)
