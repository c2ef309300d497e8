import json
from dataclasses import replace

import numpy as np
import pytest

from divseq.divergences import (
    DivergenceFunctional,
    Orientation,
    named_divergence,
    swap_orientation,
)
from divseq.errors import DomainError
from divseq.verify import (
    PropertyCheck,
    VerificationReport,
    check_derivative_dominates,
    check_integral_contraction,
    check_iterated_chain,
    check_path_invariance,
    run_suite,
)


def _broken_divergence():
    base = named_divergence("chi2")
    ev = base.evaluator
    deriv = base.analytic_path_derivative
    return DivergenceFunctional(
        identifier="broken",
        orientation=Orientation.RIGHT_CONVEX,
        evaluator=lambda a, b: -np.asarray(ev(a, b)),
        analytic_path_derivative=lambda path, t: -deriv(path, t),
        differentiable=True,
    )


class TestIntegralContraction:
    def test_chi2_passes(self):
        check = check_integral_contraction(named_divergence("chi2"), 30, seed=1)
        assert check.passed
        assert check.worst_violation < 1e-9
        assert check.tolerance == 1e-9
        assert check.instances == 30
        assert "chi2" in check.name

    def test_swapped_left_convex_kl_passes(self):
        left_kl = replace(named_divergence("kl"), orientation=Orientation.LEFT_CONVEX)
        D = swap_orientation(left_kl)
        assert D.orientation is Orientation.RIGHT_CONVEX
        assert check_integral_contraction(D, 20, seed=3).passed

    def test_broken_divergence_fails(self):
        check = check_integral_contraction(_broken_divergence(), 10, seed=4)
        assert not check.passed
        assert check.worst_violation > check.tolerance


class TestIteratedChain:
    def test_chi2_with_closed_form_oracle(self):
        check = check_iterated_chain(named_divergence("chi2"), 3, 10, seed=2)
        assert check.passed
        assert check.tolerance == 1e-6

    def test_jeffreys_with_closed_form_oracle(self):
        assert check_iterated_chain(named_divergence("jeffreys"), 3, 8, seed=5).passed

    def test_depth_zero_is_trivial(self):
        check = check_iterated_chain(named_divergence("kl"), 0, 5, seed=6)
        assert check.passed

    def test_rejects_negative_depth(self):
        with pytest.raises(DomainError):
            check_iterated_chain(named_divergence("kl"), -1, 5, seed=6)


class TestDerivativeDominates:
    @pytest.mark.parametrize("identifier", ["kl", "hellinger2"])
    def test_named_pass(self, identifier):
        check = check_derivative_dominates(named_divergence(identifier), 30, seed=7)
        assert check.passed
        assert check.tolerance == 1e-9

    def test_broken_divergence_fails(self):
        assert not check_derivative_dominates(_broken_divergence(), 10, seed=8).passed


class TestPathInvariance:
    def test_chi2_passes(self):
        check = check_path_invariance(named_divergence("chi2"), 20, seed=9)
        assert check.passed
        assert check.tolerance == 1e-8


class TestSuite:
    def test_small_suite_passes(self):
        report = run_suite(seed=11, instances=8)
        assert isinstance(report, VerificationReport)
        assert report.all_passed
        assert report.seed == 11
        # Seven divergences, four checks each.
        assert len(report.checks) == 28
        for check in report.checks:
            assert isinstance(check, PropertyCheck)
            assert check.passed == (check.worst_violation <= check.tolerance)

    def test_deterministic_given_seed(self):
        first = run_suite(seed=5, instances=6).to_json()
        second = run_suite(seed=5, instances=6).to_json()
        assert first == second

    def test_json_schema(self):
        report = run_suite(seed=3, instances=5)
        payload = json.loads(report.to_json())
        assert set(payload) == {"seed", "checks", "all_passed"}
        assert payload["seed"] == 3
        assert payload["all_passed"] == all(c["passed"] for c in payload["checks"])
        for entry in payload["checks"]:
            assert set(entry) == {
                "name",
                "paper_anchor",
                "instances",
                "worst_violation",
                "tolerance",
                "passed",
            }
        assert "\n" not in report.to_json()

    def test_rejects_nonpositive_instances(self):
        with pytest.raises(DomainError):
            run_suite(seed=1, instances=0)
