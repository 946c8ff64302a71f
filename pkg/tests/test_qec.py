import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from switchless import qec
from switchless.qec import ConventionalScenario, ProposedScenario, QECError, TrialVariances


class TestMisidentification:
    def test_limits(self):
        assert qec.gkp_misid(0.0) == 0.0
        assert qec.gkp_misid(math.inf) == 0.5
        assert qec.gkp_misid(20.0) == pytest.approx(0.5, abs=1e-15)

    def test_small_sigma_tail(self):
        # leading term: 2 * P(x > sqrt(pi)/2)
        s = 0.1
        lead = math.erfc(math.sqrt(math.pi) / 2 / (math.sqrt(2) * s))
        assert qec.gkp_misid(s) == pytest.approx(lead, rel=1e-10)
        assert 0 < qec.gkp_misid(s) < 1e-18

    def test_dual_method(self):
        for s in np.linspace(0.05, 10.0, 200):
            assert qec.gkp_misid(s) == pytest.approx(qec.gkp_misid_quad(s), abs=1e-12)

    def test_negative(self):
        with pytest.raises(QECError):
            qec.gkp_misid(-0.1)

    @settings(max_examples=80)
    @given(a=st.floats(0.0, 8.0), b=st.floats(0.0, 8.0))
    def test_monotone_and_bounded(self, a, b):
        lo, hi = sorted((a, b))
        assert qec.gkp_misid(lo) <= qec.gkp_misid(hi) + 1e-16
        assert qec.gkp_misid(hi) <= 0.5

    def test_bias_continuity(self):
        below = qec.gkp_bias(0.5 - 1e-12)
        above = qec.gkp_bias(0.5)
        assert above == pytest.approx(below, rel=1e-9)
        for s in (0.6, 1.0, 2.0):
            assert qec.gkp_bias(s) == pytest.approx(1 - 2 * qec.gkp_misid(s), abs=1e-13)
        assert qec.gkp_bias(5.0) > 0

    def test_monte_carlo(self):
        rng = np.random.default_rng(3)
        est, se = qec.gkp_misid_mc(0.5, 1_000_000, rng)
        assert abs(est - qec.gkp_misid(0.5)) < 4 * se


class TestFailureCombinatorics:
    def test_trivial(self):
        assert qec.odd_failure_probability([0, 0, 0, 0]) == 0.0
        assert qec.odd_failure_probability([1, 1, 1, 1]) == 0.0
        assert qec.odd_failure_probability([0.5] * 4) == 0.5

    def test_single_certain_failure(self):
        assert qec.odd_failure_probability([1, 0, 0, 0]) == 1.0

    def test_wrong_length(self):
        with pytest.raises(QECError):
            qec.odd_failure_probability([0.1, 0.2, 0.3])

    @given(st.lists(st.floats(0, 1), min_size=4, max_size=4), st.permutations(range(4)))
    def test_permutation_invariance(self, p, perm):
        a = qec.odd_failure_probability(p)
        b = qec.odd_failure_probability([p[i] for i in perm])
        assert a == pytest.approx(b, abs=1e-15)

    @given(st.lists(st.floats(0, 1), min_size=4, max_size=4))
    def test_product_identity(self, p):
        want = (1 - math.prod(1 - 2 * v for v in p)) / 2
        assert qec.odd_failure_probability(p) == pytest.approx(want, abs=1e-14)

    def test_margin_agrees(self):
        t = TrialVariances(0.3, 0.2, 0.5, 0.1)
        assert qec.p_fail_margin(t) == pytest.approx(0.5 - qec.p_fail(t), abs=1e-14)

    def test_trial_permutation(self):
        a = qec.p_fail(TrialVariances(0.3, 0.2, 0.5, 0.1))
        b = qec.p_fail(TrialVariances(0.1, 0.5, 0.2, 0.3))
        assert a == pytest.approx(b, abs=1e-15)

    def test_nonpositive_variance(self):
        with pytest.raises(QECError):
            TrialVariances(0.1, 0.0, 0.1, 0.1)


class TestScenarios:
    def test_db_conversion(self):
        assert qec.db_to_r(20.0) == pytest.approx(math.log(10.0))
        assert qec.sigma2_from_r(qec.db_to_r(10.0)) == pytest.approx(0.05, rel=1e-14)
        assert qec.r_to_db(qec.db_to_r(13.7)) == pytest.approx(13.7, rel=1e-15)

    def test_validation(self):
        with pytest.raises(QECError):
            ConventionalScenario(0.0, 0.9)
        with pytest.raises(QECError):
            ConventionalScenario(1.0, 1.01)
        with pytest.raises(QECError):
            ProposedScenario(-0.1, 1)
        with pytest.raises(QECError):
            ProposedScenario(1.0, 0)
        with pytest.raises(QECError):
            ProposedScenario(1.0, 2.5)

    def test_conventional_lossless_reduces(self):
        r = 1.2
        sig2 = qec.sigma2_from_r(r)
        xi = qec.gc.effective_gate_noise(r)
        t = qec.conventional_trial_variances(ConventionalScenario(r, 1.0))
        assert t.s1x == pytest.approx(2 * sig2 + xi + sig2, rel=1e-14)
        assert t.s1p == pytest.approx(sig2 + xi + sig2, rel=1e-14)

    def test_conventional_regression(self):
        t = qec.conventional_trial_variances(ConventionalScenario(2.30, 0.99))
        assert t.as_tuple() == pytest.approx(
            (0.05953871485912608, 0.04451279698680928) * 2, rel=1e-13
        )

    @pytest.mark.parametrize("db", [8.0, 12.0, 16.0, 20.0])
    def test_conventional_loss_raises_all(self, db):
        r = qec.db_to_r(db)
        hi = qec.conventional_trial_variances(ConventionalScenario(r, 0.99)).as_tuple()
        lo = qec.conventional_trial_variances(ConventionalScenario(r, 0.95)).as_tuple()
        assert all(b > a for a, b in zip(hi, lo))

    def test_proposed_multiples(self):
        r = 2.30
        sig2 = qec.sigma2_from_r(r)
        t = qec.proposed_trial_variances(ProposedScenario(r, 1))
        assert t.s1x == pytest.approx(7 * sig2, rel=1e-14)
        assert t.s1p == pytest.approx(9 * sig2, rel=1e-14)

    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_proposed_branch_step(self, n):
        sig2 = qec.sigma2_from_r(1.0)
        a = qec.proposed_trial_variances(ProposedScenario(1.0, n))
        b = qec.proposed_trial_variances(ProposedScenario(1.0, n + 1))
        assert b.s1x - a.s1x == pytest.approx(2 * sig2, rel=1e-12)
        assert b.s1p - a.s1p == pytest.approx(2 * sig2, rel=1e-12)

    @given(r=st.floats(0.0, 4.0), r0=st.floats(0.0, 4.0), n=st.integers(1, 25))
    def test_proposed_homogeneity(self, r, r0, n):
        a = np.array(qec.proposed_trial_variances(ProposedScenario(r, n)).as_tuple())
        b = np.array(qec.proposed_trial_variances(ProposedScenario(r0, n)).as_tuple())
        assert np.allclose(a, math.exp(-2 * (r - r0)) * b, rtol=1e-12)


class TestPrep:
    def test_full_success(self):
        for model in qec.MODELS:
            for n in (2, 5, 20):
                assert qec.bell_prep_success(1.0, n, model) == 1.0

    def test_single_try(self):
        assert qec.bell_prep_success(0.7, 1, "at_least_one_per_side") == pytest.approx(0.49)
        assert qec.bell_prep_success(0.7, 1, "at_least_two_per_side") == 0.0

    def test_brute_force(self):
        p, n = 0.6, 4
        want = 0.0
        for pattern in itertools.product((0, 1), repeat=2 * n):
            w = math.prod(p if b else 1 - p for b in pattern)
            if sum(pattern[:n]) >= 2 and sum(pattern[n:]) >= 2:
                want += w
        assert qec.bell_prep_success(p, n, "at_least_two_per_side") == pytest.approx(want, abs=1e-15)

    def test_errors(self):
        with pytest.raises(QECError):
            qec.bell_prep_success(1.2, 3, "at_least_one_per_side")
        with pytest.raises(QECError):
            qec.bell_prep_success(0.5, 0, "at_least_one_per_side")
        with pytest.raises(QECError, match="unknown model"):
            qec.bell_prep_success(0.5, 3, "majority")

    def test_threshold_closed_form(self):
        p = qec.prep_threshold(1, "at_least_one_per_side")
        assert p == pytest.approx(math.sqrt(0.9999), abs=1e-6)

    def test_threshold_unreachable(self):
        assert math.isnan(qec.prep_threshold(1, "at_least_two_per_side"))

    def test_threshold_decreases_with_n(self):
        ps = [qec.prep_threshold(n, "at_least_two_per_side") for n in (5, 10, 15, 20)]
        assert ps == sorted(ps, reverse=True)
        assert ps[1] == pytest.approx(0.735, abs=0.005)


class TestCurves:
    def test_sorted_and_bounded(self):
        curve = qec.proposed_error_curve(5, [2.0, 0.5, 1.0])
        assert [r for r, _ in curve] == [0.5, 1.0, 2.0]
        assert all(0 <= p <= 0.5 for _, p in curve)

    def test_empty_grid(self):
        with pytest.raises(QECError):
            qec.proposed_error_curve(5, [])
        with pytest.raises(QECError):
            qec.conventional_error_curve(0.99, [])

    def test_zero_db_row(self):
        (_, p), = qec.proposed_error_curve(1, [0.0])
        assert math.isfinite(p) and p > 0.45

    def test_conventional_eta_ordering(self):
        rs = [qec.db_to_r(d) for d in np.arange(4.0, 14.01, 0.5)]
        curves = [qec.conventional_error_curve(eta, rs) for eta in (1.0, 0.995, 0.98)]
        for (_, a), (_, b), (_, c) in zip(*curves):
            assert a <= b <= c
