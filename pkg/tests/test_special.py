import numpy as np
import pytest

from tilebench.errors import InvalidRangeError
from tilebench.special import f_cdf, studentized_range_cdf, studentized_range_sf


class TestFCdf:
    def test_zero(self):
        assert f_cdf(0.0, 3, 7) == 0.0

    def test_infinity(self):
        assert f_cdf(np.inf, 3, 7) == 1.0

    def test_equal_dof_symmetry_point(self):
        # F(d, d) is symmetric about 1 under x -> 1/x, so CDF(1) = 1/2.
        assert f_cdf(1.0, 10, 10) == pytest.approx(0.5, abs=1e-14)

    def test_against_high_precision_reference(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 40
        cases = [
            (0.5, 1, 1), (2.3, 3, 7), (5.0, 2, 30), (0.01, 8, 4),
            (100.0, 29, 29), (7.7, 4, 116), (0.3, 199, 3), (1.0, 57, 4),
        ]
        for x, d1, d2 in cases:
            want = float(mp.betainc(d1 / 2, d2 / 2, 0, d1 * x / (d1 * x + d2), regularized=True))
            assert f_cdf(x, d1, d2) == pytest.approx(want, abs=1e-10)

    def test_monotone_and_bounded(self):
        xs = np.linspace(0, 50, 200)
        values = [f_cdf(x, 4, 29) for x in xs]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(b >= a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("df1,df2", [(0, 5), (5, 0), (-1, 3)])
    def test_invalid_dof(self, df1, df2):
        with pytest.raises(InvalidRangeError):
            f_cdf(1.0, df1, df2)


class TestStudentizedRange:
    def test_zero(self):
        assert studentized_range_cdf(0.0, 3, 10) == 0.0
        assert studentized_range_sf(0.0, 3, 10) == 1.0

    def test_k2_reduces_to_student_t(self):
        # For two groups the range statistic is |t| * sqrt(2).
        from scipy.stats import t as t_dist

        for q in [0.3, 1.0, 2.0, 4.5, 9.0]:
            for df in [2, 5, 29, 120]:
                want = 2.0 * t_dist.cdf(q / np.sqrt(2.0), df) - 1.0
                assert studentized_range_cdf(q, 2, df) == pytest.approx(want, abs=1e-10)

    def test_tabulated_critical_value(self):
        # Published upper-5% critical value for 3 groups, 12 dof is 3.77.
        assert studentized_range_cdf(3.773, 3, 12) == pytest.approx(0.95, abs=5e-4)

    def test_against_independent_implementation(self):
        from scipy.stats import studentized_range as sr

        cases = [
            (0.5, 2, 2), (1.0, 5, 30), (2.5, 3, 12), (3.5, 4, 8),
            (4.6, 10, 200), (6.0, 4, 2), (10.0, 3, 5), (3.0, 8, 60),
            (12.0, 2, 40), (20.0, 6, 20),
        ]
        for q, k, df in cases:
            assert studentized_range_cdf(q, k, df) == pytest.approx(sr.cdf(q, k, df), abs=1e-6)

    def test_tail_against_independent_implementation(self):
        from scipy.stats import studentized_range as sr

        for q, k, df in [(8.0, 5, 30), (12.0, 5, 30), (14.0, 2, 29), (10.0, 3, 60)]:
            want = sr.sf(q, k, df)
            got = studentized_range_sf(q, k, df)
            assert got == pytest.approx(want, rel=1e-3, abs=1e-14)

    def test_cdf_sf_complement(self):
        for q in [0.5, 2.0, 5.0, 9.0]:
            total = studentized_range_cdf(q, 4, 17) + studentized_range_sf(q, 4, 17)
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_monotone_and_bounded(self):
        qs = np.linspace(0, 20, 120)
        values = [studentized_range_cdf(q, 5, 13) for q in qs]
        assert all(0.0 <= v <= 1.0 for v in values)
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_deep_tail_stays_positive_and_decreasing(self):
        tails = [studentized_range_sf(q, 5, 58) for q in (10.0, 14.0, 18.0, 22.0)]
        assert all(t > 0.0 for t in tails)
        assert all(b < a for a, b in zip(tails, tails[1:]))

    @pytest.mark.parametrize("k,df", [(1, 10), (0, 10), (3, 0), (3, -2)])
    def test_invalid_parameters(self, k, df):
        with pytest.raises(InvalidRangeError):
            studentized_range_cdf(1.0, k, df)
