import math

import numpy as np
import pytest

from meanlcb import (Method, Sample, calibrate, calibrate_bisect,
                     calibrate_many, coverage_exact, offset_family,
                     beta_family, rigorous_lcb)
from meanlcb.calibration import draw_pivots, pivot_quantile


class TestPivotQuantile:
    def test_ceiling_convention(self):
        pivots = np.arange(0.1, 1.05, 0.1)  # 0.1 .. 1.0
        # ceil(0.75 * 10) = 8 -> eighth smallest
        assert pivot_quantile(pivots, 0.25) == pytest.approx(0.8)

    def test_endpoints(self):
        pivots = np.sort(np.random.RandomState(0).rand(1000))
        assert pivot_quantile(pivots, 1e-9) == pivots[-1]  # max pivot
        assert pivot_quantile(pivots, 1 - 1e-9) == pivots[0]


class TestCalibrate:
    def test_offset_single_point_analytic(self):
        # pivot is U - 1/2 clamped; its 0.9 quantile is 0.4
        res = calibrate(offset_family(1), alpha=0.1, replicates=100_000, seed=1)
        assert res.lambda_star == pytest.approx(0.4, abs=0.01)

    def test_beta_single_point_uniform_pivot(self):
        res = calibrate(beta_family(1), alpha=0.1, replicates=100_000, seed=1)
        assert res.lambda_star == pytest.approx(0.9, abs=0.01)

    def test_alpha_extremes(self):
        fam = offset_family(3)
        pivots = draw_pivots(fam, 20_000, seed=2)
        near_one = calibrate(fam, alpha=0.999, replicates=20_000, seed=2)
        near_zero = calibrate(fam, alpha=1e-9, replicates=20_000, seed=2)
        assert near_one.lambda_star <= np.quantile(pivots, 0.005) + 1e-12
        assert near_zero.lambda_star == pytest.approx(pivots.max(), abs=1e-15)

    def test_achieved_coverage_honors_target(self):
        for fam in (offset_family(6), beta_family(6)):
            res = calibrate(fam, alpha=0.1, replicates=50_000, seed=3)
            assert res.achieved_p is not None
            assert res.achieved_p.p >= 1 - 0.1 - 3 * res.achieved_p.std_err

    def test_many_shares_one_pass(self):
        fam = offset_family(5)
        results = calibrate_many(fam, [0.2, 0.1, 0.05], replicates=20_000, seed=4)
        lams = [r.lambda_star for r in results]
        assert lams == sorted(lams)  # smaller alpha -> larger lambda
        solo = calibrate(fam, 0.1, replicates=20_000, seed=4)
        assert solo.lambda_star == results[1].lambda_star

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            calibrate(offset_family(3), alpha=0.0)
        with pytest.raises(ValueError):
            calibrate(offset_family(3), alpha=0.1, replicates=10)


class TestCalibrateBisect:
    def test_offset_single_point_exact(self):
        # coverage is min(1, 1/2 + lam); the 0.9 crossing sits at 0.4
        res = calibrate_bisect(offset_family(1), alpha=0.1, tolerance=1e-9)
        assert res.lambda_star == pytest.approx(0.4, abs=1e-8)
        assert res.achieved_p.p >= 0.9

    def test_beta_single_point_median(self):
        res = calibrate_bisect(beta_family(1), alpha=0.5, tolerance=1e-9)
        assert res.lambda_star == pytest.approx(0.5, abs=1e-8)

    def test_lambda_nonincreasing_in_alpha(self):
        fam = offset_family(6)
        lams = [calibrate_bisect(fam, alpha, tolerance=1e-7).lambda_star
                for alpha in (0.02, 0.05, 0.1, 0.2, 0.5)]
        assert all(b <= a + 1e-7 for a, b in zip(lams, lams[1:]))

    def test_tolerance_validated(self):
        with pytest.raises(ValueError):
            calibrate_bisect(offset_family(2), 0.1, tolerance=0.0)


class TestCalibrateAgreement:
    @pytest.mark.parametrize("kind", ["offset", "beta"])
    @pytest.mark.parametrize("n,alpha", [(2, 0.1), (5, 0.05), (10, 0.1)])
    def test_mc_matches_exact_bisection(self, kind, n, alpha):
        fam = offset_family(n) if kind == "offset" else beta_family(n)
        replicates = 50_000
        res = calibrate(fam, alpha, replicates=replicates, seed=5,
                        coverage_check=False)
        oracle = calibrate_bisect(fam, alpha, tolerance=1e-10)
        # Order-statistic confidence interval for the empirical quantile:
        # the exact lam(alpha) must sit inside pivots[k - 4s .. k + 4s].
        pivots = np.sort(draw_pivots(fam, replicates, seed=5))
        k = math.ceil((1 - alpha) * replicates)
        s = math.sqrt(replicates * alpha * (1 - alpha))
        lo = pivots[max(0, k - 1 - int(4 * s))]
        hi = pivots[min(replicates - 1, k - 1 + int(4 * s))]
        assert lo - 1e-9 <= oracle.lambda_star <= hi + 1e-9
        assert abs(res.lambda_star - oracle.lambda_star) <= (hi - lo) + 1e-9
        # and on the probability scale the MC pick is near the target
        p_at_mc = coverage_exact(res.u_star).p
        assert abs(p_at_mc - (1 - alpha)) <= 5 * math.sqrt(alpha * (1 - alpha) / replicates)


class TestRigorousLcb:
    def test_all_zero_sample(self):
        for kind in ("offset", "beta"):
            rep = rigorous_lcb([0.0, 0.0, 0.0], kind, alpha=0.1,
                               replicates=2000, seed=6)
            assert rep.bound == 0.0

    def test_never_exceeds_max_observation(self):
        rng = np.random.RandomState(24)
        for _ in range(5):
            data = rng.gamma(1.0, 4.0, size=12)
            rep = rigorous_lcb(data, "offset", alpha=0.1, replicates=5000, seed=7)
            assert 0.0 <= rep.bound <= data.max() + 1e-12

    def test_report_contents(self):
        data = [1.0, 2.0, 3.0, 4.0]
        rep = rigorous_lcb(data, "beta", alpha=0.05, replicates=5000, seed=8)
        assert rep.method is Method.BETA_FAMILY
        assert rep.calibration.family.kind == "beta"
        assert rep.calibration.u_star.n == 4
        assert rep.normal_lcb is not None
        assert rep.sample_mean == pytest.approx(2.5)

    def test_single_point_has_no_normal_comparator(self):
        rep = rigorous_lcb([5.0], "offset", alpha=0.1, replicates=2000, seed=9)
        assert rep.normal_lcb is None
        assert 0.0 <= rep.bound <= 5.0

    def test_family_size_mismatch(self):
        with pytest.raises(ValueError):
            rigorous_lcb([1.0, 2.0], offset_family(3), alpha=0.1,
                         replicates=2000, seed=10)

    def test_negative_data_rejected(self):
        with pytest.raises(ValueError):
            rigorous_lcb([1.0, -2.0], "offset", alpha=0.1)

    def test_accepts_sample_and_family_objects(self):
        rep = rigorous_lcb(Sample([1, 2, 3]), offset_family(3), alpha=0.2,
                           replicates=2000, seed=11)
        assert rep.method is Method.OFFSET_FAMILY
